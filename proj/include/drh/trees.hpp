#pragma once

#include <string>
#include <vector>

#include "drh/multipoly.hpp"
#include "drh/param.hpp"

namespace drh {

/// Rooted stable tree with genus decorations and labeled legs 1..n_legs.
/// Vertex 0 is the root (leg 1 lives there); parents precede children in the
/// vertex array. Levels start at 1 on the root and grow by one along edges.
struct TreeVertex {
    int parent = -1;
    int genus = 0;
    int level = 1;
    std::vector<int> legs;      // sorted leg numbers
    std::vector<int> children;  // vertex indices
};

struct StableTree {
    std::vector<TreeVertex> verts;
    int n_legs = 0;

    int n_vertices() const { return static_cast<int>(verts.size()); }
    int total_genus() const;
    int degree() const;  // max level
    int leg_vertex(int leg) const;
    int valence(int v) const;  // legs plus incident edge ends
    int n_edges_at(int v) const;

    /// Deterministic encoding; equal for isomorphic decorated-leg trees.
    std::string canonical_key() const;
};

/// All isomorphism classes of rooted stable trees: total genus g, legs
/// 1..n_legs with leg 1 at the root, level <= N, and the per-vertex pruning
/// bound genus(v) + #edges(v) <= 3 + d*[leg 2 at v]. Subtrees without legs
/// are pruned: they force a zero-multiplicity leaf of positive genus, whose
/// vertex integral vanishes identically.
std::vector<StableTree> enumerate_trees(int N, int g, int n_legs, int d);

/// Stability, level recursion, degree and vertex bounds; used as an
/// independent validator in tests.
bool validate_stable_tree(const StableTree& t, int N, int d, std::string* why = nullptr);

/// Subtree multiplicity sums: entry v is the sum of the leg forms inside the
/// subtree rooted at v. The edge above v carries +S(v) on the parent side and
/// -S(v) on the child side, which is the unique flow-conserving assignment.
std::vector<LinearForm> balance_multiplicities(const StableTree& t,
                                               const std::vector<LinearForm>& leg_mults);

/// (d+3) * 2^{N-1}; requires N >= 2.
long genus_bound(int N, int d);

/// Exhaustive scan of all rooted trees (no legs) with a chosen special vertex
/// obeying degree <= N and genus(v) + #edges(v) <= 3 + d*[v special]. Reports
/// the maximal attainable total genus and whether the extremal profile
/// (root of genus 0 with 3+d children, binary genus-0 middle levels, genus-2
/// bottom level) is attained.
struct LemmaScan {
    long max_genus = 0;
    bool extremal_found = false;
    long n_shapes = 0;
};
LemmaScan scan_lemma_trees(int N, int d);

/// R-matrix decorations of a stable tree: per-vertex labels, per-leg psi
/// choice and fed vector index, total scalar weight. Leg 1 feeds the
/// covector, leg 2 feeds the flow direction and carries psi^d.
struct DecoratedTree {
    StableTree tree;
    int d = 0;
    int alpha = 0;                // covector index of the flow
    int beta = 0;                 // vector index at leg 2
    std::vector<int> label;       // per vertex
    std::vector<int> leg_psi;     // per leg, index 1..n_legs (0 unused)
    std::vector<int> leg_orig;    // fed index before the R-choice
    ParamRational weight{1};

    int psi_exponent(int leg) const { return leg_psi[static_cast<size_t>(leg)] + (leg == 2 ? d : 0); }
};

/// Vertex dimension constraint: sum of psi exponents at v equals
/// genus(v) + valence(v) - 3.
bool dimension_ok(const DecoratedTree& t, int v);

}  // namespace drh
