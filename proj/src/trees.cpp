#include "drh/trees.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace drh {

int StableTree::total_genus() const {
    int g = 0;
    for (const auto& v : verts) g += v.genus;
    return g;
}

int StableTree::degree() const {
    int m = 0;
    for (const auto& v : verts) m = std::max(m, v.level);
    return m;
}

int StableTree::leg_vertex(int leg) const {
    for (int i = 0; i < n_vertices(); ++i)
        for (int l : verts[static_cast<size_t>(i)].legs)
            if (l == leg) return i;
    throw std::invalid_argument("StableTree::leg_vertex: no such leg");
}

int StableTree::valence(int v) const {
    const auto& vx = verts[static_cast<size_t>(v)];
    return static_cast<int>(vx.legs.size()) + n_edges_at(v);
}

int StableTree::n_edges_at(int v) const {
    const auto& vx = verts[static_cast<size_t>(v)];
    return static_cast<int>(vx.children.size()) + (vx.parent >= 0 ? 1 : 0);
}

std::string StableTree::canonical_key() const {
    std::function<std::string(int)> enc = [&](int v) -> std::string {
        const auto& vx = verts[static_cast<size_t>(v)];
        std::ostringstream os;
        os << "(g" << vx.genus << ";L";
        for (int l : vx.legs) os << l << ",";
        std::vector<std::string> kids;
        for (int c : vx.children) kids.push_back(enc(c));
        std::sort(kids.begin(), kids.end());
        os << ";";
        for (const auto& k : kids) os << k;
        os << ")";
        return os.str();
    };
    return enc(0);
}

namespace {

// Partial subtree used during enumeration.
struct SubtreeNode {
    int genus;
    std::vector<int> legs;
    std::vector<SubtreeNode> children;
};

void append_subtree(StableTree& t, const SubtreeNode& n, int parent, int level) {
    TreeVertex v;
    v.parent = parent;
    v.genus = n.genus;
    v.level = level;
    v.legs = n.legs;
    int idx = t.n_vertices();
    t.verts.push_back(std::move(v));
    if (parent >= 0) t.verts[static_cast<size_t>(parent)].children.push_back(idx);
    for (const auto& c : n.children) append_subtree(t, c, idx, level + 1);
}

// All set partitions of `items` into exactly k nonempty unordered parts.
void set_partitions(const std::vector<int>& items, int k,
                    std::vector<std::vector<std::vector<int>>>& out) {
    std::vector<std::vector<int>> parts;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (static_cast<int>(parts.size()) > k) return;
        size_t remaining = items.size() - i;
        if (parts.size() + remaining < static_cast<size_t>(k)) return;
        if (i == items.size()) {
            if (static_cast<int>(parts.size()) == k) out.push_back(parts);
            return;
        }
        // Index, not iterate: the recursive call grows and shrinks `parts`,
        // which may reallocate.
        const size_t np = parts.size();
        for (size_t pi = 0; pi < np; ++pi) {
            parts[pi].push_back(items[i]);
            rec(i + 1);
            parts[pi].pop_back();
        }
        if (static_cast<int>(parts.size()) < k) {
            parts.push_back({items[i]});
            rec(i + 1);
            parts.pop_back();
        }
    };
    rec(0);
}

// Compositions of total into k nonnegative parts.
void compositions(int total, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(static_cast<size_t>(k), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == k) {
            if (left == 0) out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[static_cast<size_t>(pos)] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, total);
}

struct Enumerator {
    int N, d;

    // Subtrees rooted at level `level`, containing exactly the legs in S and
    // total genus g. `required_leg` pins a leg to the subtree root (leg 1 at
    // the tree root), 0 for none.
    std::vector<SubtreeNode> gen(const std::vector<int>& S, int g, int level, bool has_parent,
                                 int required_leg) {
        std::vector<SubtreeNode> out;
        if (level > N) return out;
        // Distribute legs: subsets for the vertex itself.
        const size_t ns = S.size();
        for (unsigned long mask = 0; mask < (1ul << ns); ++mask) {
            std::vector<int> mine, rest;
            for (size_t i = 0; i < ns; ++i)
                ((mask >> i) & 1ul ? mine : rest).push_back(S[i]);
            if (required_leg && !std::count(mine.begin(), mine.end(), required_leg)) continue;
            bool has_leg2 = std::count(mine.begin(), mine.end(), 2) > 0;
            const int bound = 3 + (has_leg2 ? d : 0);
            for (int gv = 0; gv <= g; ++gv) {
                const int g_rest = g - gv;
                // Children: each child subtree carries at least one leg. A
                // leg-free subtree always ends in a zero-multiplicity leaf of
                // positive genus whose vertex integral vanishes identically,
                // so those trees never contribute.
                for (int k = 0; k <= static_cast<int>(rest.size()); ++k) {
                    const int edges = k + (has_parent ? 1 : 0);
                    if (gv + edges > bound) break;
                    const int val = static_cast<int>(mine.size()) + edges;
                    if (2 * gv - 2 + val <= 0) continue;
                    std::vector<std::vector<std::vector<int>>> partitions;
                    if (k == 0) {
                        if (rest.empty()) partitions.push_back({});
                    } else {
                        set_partitions(rest, k, partitions);
                    }
                    std::vector<std::vector<int>> splits;
                    compositions(g_rest, k, splits);
                    for (const auto& parts : partitions) {
                        if (k == 0 && g_rest > 0) continue;
                        for (const auto& gs : splits) {
                            // Build child lists by product over parts.
                            std::vector<std::vector<SubtreeNode>> choices;
                            choices.reserve(static_cast<size_t>(k));
                            bool dead = false;
                            for (int c = 0; c < k && !dead; ++c) {
                                auto subs = gen(parts[static_cast<size_t>(c)],
                                                gs[static_cast<size_t>(c)], level + 1, true, 0);
                                if (subs.empty()) dead = true;
                                choices.push_back(std::move(subs));
                            }
                            if (dead) continue;
                            std::vector<size_t> pick(static_cast<size_t>(k), 0);
                            while (true) {
                                SubtreeNode n;
                                n.genus = gv;
                                n.legs = mine;
                                std::sort(n.legs.begin(), n.legs.end());
                                for (int c = 0; c < k; ++c)
                                    n.children.push_back(
                                        choices[static_cast<size_t>(c)][pick[static_cast<size_t>(c)]]);
                                out.push_back(std::move(n));
                                int c = k - 1;
                                for (; c >= 0; --c) {
                                    if (++pick[static_cast<size_t>(c)] <
                                        choices[static_cast<size_t>(c)].size())
                                        break;
                                    pick[static_cast<size_t>(c)] = 0;
                                }
                                if (c < 0) break;
                            }
                        }
                    }
                }
            }
        }
        return out;
    }
};

}  // namespace

std::vector<StableTree> enumerate_trees(int N, int g, int n_legs, int d) {
    if (2 * g + n_legs - 2 <= 0)
        throw std::invalid_argument("enumerate_trees: unstable (g, n) range");
    std::vector<int> legs;
    for (int l = 1; l <= n_legs; ++l) legs.push_back(l);
    Enumerator e{N, d};
    auto roots = e.gen(legs, g, 1, false, 1);
    std::vector<StableTree> out;
    std::set<std::string> seen;
    for (const auto& r : roots) {
        StableTree t;
        t.n_legs = n_legs;
        append_subtree(t, r, -1, 1);
        auto key = t.canonical_key();
        if (seen.insert(key).second) out.push_back(std::move(t));
    }
    return out;
}

bool validate_stable_tree(const StableTree& t, int N, int d, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (t.n_vertices() == 0) return fail("empty tree");
    std::vector<int> seen_legs;
    int tilde = t.leg_vertex(2);
    for (int v = 0; v < t.n_vertices(); ++v) {
        const auto& vx = t.verts[static_cast<size_t>(v)];
        if (v == 0) {
            if (vx.parent != -1 || vx.level != 1) return fail("bad root");
            if (!std::count(vx.legs.begin(), vx.legs.end(), 1)) return fail("leg 1 not at root");
        } else {
            if (vx.parent < 0 || vx.parent >= t.n_vertices()) return fail("bad parent link");
            if (vx.level != t.verts[static_cast<size_t>(vx.parent)].level + 1)
                return fail("level recursion violated");
        }
        if (vx.genus < 0) return fail("negative genus");
        if (2 * vx.genus - 2 + t.valence(v) <= 0) return fail("unstable vertex");
        if (vx.genus + t.n_edges_at(v) > 3 + (v == tilde ? d : 0))
            return fail("vertex bound violated");
        for (int l : vx.legs) seen_legs.push_back(l);
    }
    if (t.degree() > N) return fail("degree exceeds N");
    std::sort(seen_legs.begin(), seen_legs.end());
    for (int l = 1; l <= t.n_legs; ++l)
        if (l > static_cast<int>(seen_legs.size()) || seen_legs[static_cast<size_t>(l - 1)] != l)
            return fail("legs are not a bijection");
    return true;
}

std::vector<LinearForm> balance_multiplicities(const StableTree& t,
                                               const std::vector<LinearForm>& leg_mults) {
    if (leg_mults.size() != static_cast<size_t>(t.n_legs) + 1)
        throw std::invalid_argument("balance_multiplicities: one form per leg required (1-based)");
    const int nvars = t.n_legs >= 1 ? static_cast<int>(leg_mults[1].size()) : 0;
    std::vector<LinearForm> S(static_cast<size_t>(t.n_vertices()), zero_form(nvars));
    // Children come after parents, so accumulate bottom-up.
    for (int v = t.n_vertices() - 1; v >= 0; --v) {
        const auto& vx = t.verts[static_cast<size_t>(v)];
        for (int l : vx.legs)
            for (int i = 0; i < nvars; ++i)
                S[static_cast<size_t>(v)][static_cast<size_t>(i)] +=
                    leg_mults[static_cast<size_t>(l)][static_cast<size_t>(i)];
        for (int c : vx.children)
            for (int i = 0; i < nvars; ++i)
                S[static_cast<size_t>(v)][static_cast<size_t>(i)] +=
                    S[static_cast<size_t>(c)][static_cast<size_t>(i)];
    }
    return S;
}

long genus_bound(int N, int d) {
    if (N < 2) throw std::invalid_argument("genus_bound: requires N >= 2");
    if (d < 0) throw std::invalid_argument("genus_bound: requires d >= 0");
    return static_cast<long>(d + 3) * (1L << (N - 1));
}

namespace {

// Shapes for the combinatorial lemma scan: rooted trees without legs,
// described only by child multisets. The maximal genus of a shape is the sum
// over vertices of 3 + d*[v special] - #edges(v), independent per vertex.
struct Shape {
    std::vector<Shape> children;

    std::string key() const {
        std::vector<std::string> ks;
        for (const auto& c : children) ks.push_back(c.key());
        std::sort(ks.begin(), ks.end());
        std::string s = "(";
        for (const auto& k : ks) s += k;
        return s + ")";
    }
};

void enumerate_shapes(int level, int N, int max_children, std::vector<Shape>& out) {
    out.push_back(Shape{});
    if (level >= N) return;
    std::vector<Shape> subs;
    enumerate_shapes(level + 1, N, max_children, subs);
    // Multisets of up to max_children subtrees, generated in sorted key order.
    std::vector<std::string> keys;
    for (const auto& s : subs) keys.push_back(s.key());
    std::vector<size_t> order(subs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return keys[a] < keys[b]; });
    std::function<void(size_t, Shape&)> rec = [&](size_t min_idx, Shape& cur) {
        if (static_cast<int>(cur.children.size()) >= 1) out.push_back(cur);
        if (static_cast<int>(cur.children.size()) >= max_children) return;
        for (size_t i = min_idx; i < order.size(); ++i) {
            cur.children.push_back(subs[order[i]]);
            rec(i, cur);
            cur.children.pop_back();
        }
    };
    Shape root;
    rec(0, root);
}

long shape_max_genus(const Shape& s, bool is_root, int d, const Shape* special, bool* feasible) {
    // #edges at this vertex
    long edges = static_cast<long>(s.children.size()) + (is_root ? 0 : 1);
    long cap = 3 + (special == &s ? d : 0) - edges;
    if (cap < 0) *feasible = false;
    long total = std::max(cap, 0L);
    for (const auto& c : s.children) total += shape_max_genus(c, false, d, special, feasible);
    return total;
}

void collect_nodes(Shape& s, std::vector<Shape*>& out) {
    out.push_back(&s);
    for (auto& c : s.children) collect_nodes(c, out);
}

// The extremal profile: root with 3+d children, binary middle levels, depth N.
Shape extremal_shape(int N, int d) {
    std::function<Shape(int)> build = [&](int level) -> Shape {
        Shape s;
        if (level == 1) {
            for (int i = 0; i < 3 + d; ++i) s.children.push_back(build(2));
        } else if (level < N) {
            for (int i = 0; i < 2; ++i) s.children.push_back(build(level + 1));
        }
        return s;
    };
    return build(1);
}

}  // namespace

LemmaScan scan_lemma_trees(int N, int d) {
    if (N < 2) throw std::invalid_argument("scan_lemma_trees: requires N >= 2");
    LemmaScan scan;
    std::vector<Shape> shapes;
    enumerate_shapes(1, N, 3 + d, shapes);
    std::set<std::string> seen;
    const std::string extremal_key = extremal_shape(N, d).key();
    for (auto& s : shapes) {
        if (!seen.insert(s.key()).second) continue;
        std::vector<Shape*> nodes;
        collect_nodes(s, nodes);
        for (Shape* sp : nodes) {
            bool feasible = true;
            long g = shape_max_genus(s, true, d, sp, &feasible);
            if (!feasible) continue;
            ++scan.n_shapes;
            if (g > scan.max_genus) scan.max_genus = g;
            if (g == genus_bound(N, d) && s.key() == extremal_key && sp == &s)
                scan.extremal_found = true;
        }
    }
    return scan;
}

bool dimension_ok(const DecoratedTree& t, int v) {
    const auto& vx = t.tree.verts[static_cast<size_t>(v)];
    int sum = 0;
    for (int l : vx.legs) sum += t.psi_exponent(l);
    return sum == vx.genus + t.tree.valence(v) - 3;
}

}  // namespace drh
