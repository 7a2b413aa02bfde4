#include "drh/fcohft.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace drh {

FamilySpec FamilySpec::diagonal(int rank) {
    FamilySpec s;
    s.rank = rank;
    const int np = rank + 1;
    for (int i = 1; i <= rank; ++i) s.G.push_back(ParamRational::symbol(np, i));
    s.R1.assign(static_cast<size_t>(rank),
                std::vector<ParamRational>(static_cast<size_t>(rank), ParamRational::zero(np)));
    return s;
}

FamilySpec FamilySpec::rank1_trivial() { return diagonal(1); }

FamilySpec FamilySpec::rank2_symbolic() {
    FamilySpec s = diagonal(2);
    s.R1[0][1] = ParamRational::symbol(s.num_params(), 0);  // xi
    return s;
}

bool check_nilpotent(const FamilySpec& spec) {
    const int n = spec.rank;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (!spec.R1[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero()) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ParamRational s = ParamRational::zero(spec.num_params());
            for (int k = 0; k < n; ++k)
                s += spec.R1[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                     spec.R1[static_cast<size_t>(k)][static_cast<size_t>(j)];
            if (!s.is_zero()) return false;
        }
    return true;
}

ParamRational vertex_value(const std::vector<int>& labels, int genus, const FamilySpec& spec) {
    if (labels.empty()) throw std::invalid_argument("vertex_value: empty label list");
    for (int l : labels)
        if (l != labels[0]) return ParamRational::zero(spec.num_params());
    return spec.G[static_cast<size_t>(labels[0] - 1)].pow(genus);
}

std::vector<DecoratedTree> enumerate_decorations(const StableTree& tree, int alpha, int beta,
                                                 const FamilySpec& spec, int d,
                                                 const std::vector<int>* fixed_leg_vectors,
                                                 bool require_dimension) {
    if (alpha < 1 || alpha > spec.rank || beta < 1 || beta > spec.rank)
        throw std::invalid_argument("enumerate_decorations: index out of range");
    if (fixed_leg_vectors &&
        static_cast<int>(fixed_leg_vectors->size()) != tree.n_legs - 2)
        throw std::invalid_argument("enumerate_decorations: wrong leg-vector count");

    std::vector<DecoratedTree> out;
    const int nv = tree.n_vertices();
    std::vector<int> label(static_cast<size_t>(nv), 0);

    // Enumerate strictly increasing labels along edges; vertices are stored
    // parents-first.
    std::function<void(int)> assign = [&](int v) {
        if (v == nv) {
            // Edge factors.
            ParamRational w = ParamRational::constant(spec.num_params(), 1);
            for (int u = 1; u < nv; ++u) {
                const auto& entry = spec.R1[static_cast<size_t>(
                    label[static_cast<size_t>(tree.verts[static_cast<size_t>(u)].parent)] - 1)]
                                          [static_cast<size_t>(label[static_cast<size_t>(u)] - 1)];
                if (entry.is_zero()) return;
                w *= entry;
            }
            for (int u = 0; u < nv; ++u)
                w *= spec.G[static_cast<size_t>(label[static_cast<size_t>(u)] - 1)].pow(
                    tree.verts[static_cast<size_t>(u)].genus);

            // Leg choices: psi/plain with the induced fed vectors.
            DecoratedTree t;
            t.tree = tree;
            t.d = d;
            t.alpha = alpha;
            t.beta = beta;
            t.label = label;
            t.leg_psi.assign(static_cast<size_t>(tree.n_legs) + 1, 0);
            t.leg_orig.assign(static_cast<size_t>(tree.n_legs) + 1, 0);

            std::function<void(int, ParamRational)> legs = [&](int leg, ParamRational acc) {
                if (leg > tree.n_legs) {
                    t.weight = acc;
                    if (require_dimension) {
                        for (int v2 = 0; v2 < nv; ++v2)
                            if (!dimension_ok(t, v2)) return;
                    }
                    out.push_back(t);
                    return;
                }
                const int at = tree.leg_vertex(leg);
                const int lv = label[static_cast<size_t>(at)];
                if (leg == 1) {
                    // Covector: plain needs alpha == label(root); the psi
                    // choice moves the covector index through R1^t.
                    t.leg_orig[1] = alpha;
                    if (alpha == lv) {
                        t.leg_psi[1] = 0;
                        legs(2, acc);
                    }
                    const auto& e = spec.R1[static_cast<size_t>(alpha - 1)][static_cast<size_t>(lv - 1)];
                    if (!e.is_zero()) {
                        t.leg_psi[1] = 1;
                        legs(2, acc * (-e));
                    }
                    t.leg_psi[1] = 0;
                    return;
                }
                // Vector insertions at legs 2..n_legs.
                std::vector<int> candidates;
                if (leg == 2) {
                    candidates.push_back(beta);
                } else if (fixed_leg_vectors) {
                    candidates.push_back((*fixed_leg_vectors)[static_cast<size_t>(leg - 3)]);
                } else {
                    for (int gmm = 1; gmm <= spec.rank; ++gmm) candidates.push_back(gmm);
                }
                for (int orig : candidates) {
                    t.leg_orig[static_cast<size_t>(leg)] = orig;
                    if (orig == lv) {
                        t.leg_psi[static_cast<size_t>(leg)] = 0;
                        legs(leg + 1, acc);
                    }
                    const auto& e = spec.R1[static_cast<size_t>(lv - 1)][static_cast<size_t>(orig - 1)];
                    if (!e.is_zero()) {
                        t.leg_psi[static_cast<size_t>(leg)] = 1;
                        legs(leg + 1, acc * (-e));
                    }
                    t.leg_psi[static_cast<size_t>(leg)] = 0;
                }
            };
            legs(1, w);
            return;
        }
        const auto& vx = tree.verts[static_cast<size_t>(v)];
        const int lo = vx.parent < 0 ? 1 : label[static_cast<size_t>(vx.parent)] + 1;
        for (int l = lo; l <= spec.rank; ++l) {
            label[static_cast<size_t>(v)] = l;
            assign(v + 1);
        }
    };
    assign(0);
    return out;
}

std::string family_signature(const DecoratedTree& t) {
    std::function<std::string(int)> enc = [&](int v) -> std::string {
        const auto& vx = t.tree.verts[static_cast<size_t>(v)];
        std::ostringstream os;
        os << "(g" << vx.genus << ",l" << t.label[static_cast<size_t>(v)];
        std::vector<int> plain;
        for (int leg : vx.legs) {
            if (leg == 1) {
                os << ",cov" << (t.leg_psi[1] ? "~" : "");
            } else if (leg == 2) {
                os << ",box" << (t.leg_psi[2] ? "~" : "");
            } else if (t.leg_psi[static_cast<size_t>(leg)] == 0) {
                plain.push_back(t.leg_orig[static_cast<size_t>(leg)]);
            }
            // psi-decorated input legs are the repeated part of a family and
            // are collapsed.
        }
        std::sort(plain.begin(), plain.end());
        os << ",in[";
        for (int p : plain) os << p << ",";
        os << "]";
        std::vector<std::string> kids;
        for (int c : vx.children) kids.push_back(enc(c));
        std::sort(kids.begin(), kids.end());
        for (const auto& k : kids) os << k;
        os << ")";
        return os.str();
    };
    return enc(0);
}

}  // namespace drh
