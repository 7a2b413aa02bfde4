#include "drh/drcycle.hpp"

#include <algorithm>
#include <sstream>

#include "drh/laxkdv.hpp"

namespace drh {

std::string VertexIntegralQuery::describe() const {
    std::ostringstream os;
    os << "{genus=" << genus << ", nvars=" << nvars << ", points=[";
    for (size_t i = 0; i < points.size(); ++i) {
        if (i) os << ", ";
        os << "(psi=" << points[i].psi << ", mult=[";
        for (size_t j = 0; j < points[i].mult.size(); ++j) {
            if (j) os << ",";
            os << rat_to_string(points[i].mult[j]);
        }
        os << "])";
    }
    os << "]}";
    return os.str();
}

Oracle::Oracle(bool corrupt_q_table_for_tests) {
    // Coefficients of m(4), m(2,2), m(3,1), m(2,1,1), m(1,1,1,1) in Q_n/(n+2)!.
    q_coefs_ = {rat(1, 6912), rat(29, 69120), rat(11, 34560), rat(1, 1728), rat(7, 8640)};
    if (corrupt_q_table_for_tests) q_coefs_[1] = rat(30, 69120);
}

bool Oracle::dimension_ok(const VertexIntegralQuery& q) const {
    int sum = 0;
    for (const auto& p : q.points) sum += p.psi;
    return sum == q.genus + static_cast<int>(q.points.size()) - 3;
}

bool Oracle::zero_multiplicity_applies(const VertexIntegralQuery& q) const {
    if (q.genus < 1) return false;
    for (const auto& p : q.points)
        if (!form_is_zero(p.mult)) return false;
    return true;
}

MultiPoly Oracle::genus0(const VertexIntegralQuery& q) const {
    if (q.genus != 0) throw std::invalid_argument("genus0: genus mismatch");
    if (!dimension_ok(q)) return MultiPoly::zero(q.nvars);
    Rational v(factorial(static_cast<int>(q.points.size()) - 3));
    for (const auto& p : q.points) v /= Rational(factorial(p.psi));
    return MultiPoly::constant(q.nvars, v);
}

MultiPoly Oracle::unified_value(int n) const {
    // (n+1)! ( m(2)/48 + m(1,1)/36 + b m(1)/24 + b^2/24 ) in local variables
    // a_1..a_n, b (b is variable n).
    const int nv = n + 1;
    MultiPoly val(nv);
    auto pad = [&](const Partition& lam) {
        // m_lambda in the a-variables only: embed by summing distinct
        // monomials over the first n variables.
        MultiPoly m(nv);
        if (lam.length() > n) return m;
        std::vector<int> e(lam.parts);
        e.resize(static_cast<size_t>(n), 0);
        std::sort(e.begin(), e.end());
        do {
            std::vector<int> full(e);
            full.push_back(0);
            m.add_term(full, 1);
        } while (std::next_permutation(e.begin(), e.end()));
        return m;
    };
    val += pad(Partition{2}) * rat(1, 48);
    val += pad(Partition{1, 1}) * rat(1, 36);
    MultiPoly b = MultiPoly::var(nv, n);
    val += b * pad(Partition{1}) * rat(1, 24);
    val += b * b * rat(1, 24);
    val *= Rational(factorial(n + 1));
    return val;
}

MultiPoly Oracle::genus1_unified(const VertexIntegralQuery& q) const {
    if (q.genus != 1) throw std::invalid_argument("genus1_unified: genus mismatch");
    std::vector<LinearForm> psi_pts, free_pts;
    for (const auto& p : q.points) {
        if (p.psi == 0)
            free_pts.push_back(p.mult);
        else if (p.psi == 1)
            psi_pts.push_back(p.mult);
        else
            throw UnsupportedPattern(q);
    }
    if (free_pts.size() != 2) throw UnsupportedPattern(q);
    const int n = static_cast<int>(psi_pts.size());
    std::vector<LinearForm> images = psi_pts;
    images.push_back(free_pts[1]);  // the value is independent of the choice
    return substitute_linear(unified_value(n), images, q.nvars);
}

MultiPoly Oracle::genus1_seed(const LinearForm& b1, const LinearForm& b2) const {
    MultiPoly f1 = MultiPoly::from_linear(b1);
    MultiPoly f2 = MultiPoly::from_linear(b2);
    return (f1 * f1 + f2 * f2) * rat(1, 24);
}

MultiPoly Oracle::q_value(int n) const {
    const Partition lams[5] = {Partition{4}, Partition{2, 2}, Partition{3, 1}, Partition{2, 1, 1},
                               Partition{1, 1, 1, 1}};
    MultiPoly val(n);
    for (int i = 0; i < 5; ++i) {
        if (lams[i].length() > n) continue;
        val += msym(lams[i], n) * q_coefs_[static_cast<size_t>(i)];
    }
    val *= Rational(factorial(n + 2));
    return val;
}

MultiPoly Oracle::genus2_Q(const VertexIntegralQuery& q) const {
    if (q.genus != 2) throw std::invalid_argument("genus2_Q: genus mismatch");
    std::vector<LinearForm> psi_pts;
    int free_count = 0;
    for (const auto& p : q.points) {
        if (p.psi == 0)
            ++free_count;
        else if (p.psi == 1)
            psi_pts.push_back(p.mult);
        else
            throw UnsupportedPattern(q);
    }
    if (free_count != 1) throw UnsupportedPattern(q);
    const int n = static_cast<int>(psi_pts.size());
    return substitute_linear(q_value(n), psi_pts, q.nvars);
}

const MultiPoly& Oracle::kdv_integral(int g, int d) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(g, d);
    auto it = kdv_cache_.find(key);
    if (it != kdv_cache_.end()) return it->second;
    const int n = d + 1 - g;
    if (n < 0) return kdv_cache_.emplace(key, MultiPoly::zero(0)).first->second;
    TruncationContext ctx(1, d + 1, 2 * d + 2);
    DiffPoly P = kdv_P(d, ctx);
    MultiPoly I(n);
    const DiffPoly part = P.eps_part(2 * g);
    for (const auto& [m, c] : part.terms()) {
        if (m.u_degree() != n)
            throw std::logic_error("kdv_integral: flow grading violated");
        Rational coef = c.constant_value();
        std::vector<int> lam_parts;
        for (const auto& f : m.factors) {
            coef *= Rational(factorial(f[2]));
            for (int r = 0; r < f[2]; ++r)
                if (f[1] > 0) lam_parts.push_back(f[1]);
        }
        std::sort(lam_parts.rbegin(), lam_parts.rend());
        I += msym(Partition(lam_parts), n) * coef;
    }
    return kdv_cache_.emplace(key, std::move(I)).first->second;
}

void Oracle::warm_kdv_tables(int max_genus, int d) const {
    for (int g = 0; g <= max_genus; ++g) {
        kdv_integral(g, d);
        kdv_integral(g, d + 1);
    }
}

MultiPoly Oracle::evaluate(const VertexIntegralQuery& q) const {
    if (q.points.empty()) throw std::invalid_argument("evaluate: empty query");
    {
        LinearForm total = zero_form(q.nvars);
        for (const auto& p : q.points) {
            if (static_cast<int>(p.mult.size()) != q.nvars)
                throw std::invalid_argument("evaluate: multiplicity length mismatch");
            for (int i = 0; i < q.nvars; ++i)
                total[static_cast<size_t>(i)] += p.mult[static_cast<size_t>(i)];
        }
        if (!form_is_zero(total))
            throw std::invalid_argument("evaluate: multiplicities do not balance");
    }
    if (!dimension_ok(q)) return MultiPoly::zero(q.nvars);
    if (zero_multiplicity_applies(q)) return MultiPoly::zero(q.nvars);
    if (q.genus == 0) return genus0(q);

    bool all_unit = true;
    for (const auto& p : q.points)
        if (p.psi > 1) all_unit = false;
    if (q.genus == 1 && all_unit) return genus1_unified(q);
    if (q.genus == 2 && all_unit) return genus2_Q(q);

    // Diagonal-flow pattern: psi^e at one identically-zero multiplicity, no
    // other psi; matched for the genera the remaining tables cover.
    if (q.genus >= 1 && q.genus <= 2) {
        int e = -1;
        std::vector<LinearForm> others;
        bool match = true;
        for (const auto& p : q.points) {
            if (p.psi == 0) {
                others.push_back(p.mult);
            } else if (e < 0 && form_is_zero(p.mult)) {
                e = p.psi;
            } else {
                match = false;
            }
        }
        if (match && e >= 2 && !others.empty()) {
            const MultiPoly& table = kdv_integral(q.genus, e);
            std::vector<LinearForm> images(others.begin() + 1, others.end());
            if (static_cast<int>(images.size()) == table.nvars())
                return substitute_linear(table, images, q.nvars);
        }
    }
    throw UnsupportedPattern(q);
}

}  // namespace drh
