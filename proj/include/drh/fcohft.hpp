#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drh/param.hpp"
#include "drh/trees.hpp"

namespace drh {

/// The rank-N family: diagonal vertex values (G^i)^g and a strictly upper
/// triangular nilpotent R-matrix acting through psi insertions at legs and
/// plain insertions at edges. Entries are polynomials in the formal
/// parameters, so both the symbolic and the numeric modes flow through the
/// same code path.
struct FamilySpec {
    int rank = 0;
    std::vector<ParamRational> G;                // size rank, index alpha-1
    std::vector<std::vector<ParamRational>> R1;  // rank x rank

    int num_params() const { return rank + 1; }

    static FamilySpec rank1_trivial();
    static FamilySpec rank2_symbolic();
    /// Zero R1 and symbolic G for any rank.
    static FamilySpec diagonal(int rank);
};

/// Symbolic check that R1 is strictly upper triangular with R1^2 = 0.
bool check_nilpotent(const FamilySpec& spec);

/// (G^{i0})^g when all indices agree, zero otherwise.
ParamRational vertex_value(const std::vector<int>& labels, int genus, const FamilySpec& spec);

/// All decorations of a stable tree with nonzero weight: strictly increasing
/// vertex labels along edges, a psi/plain choice at every leg, the fixed R1
/// insertion at every edge. When fixed_leg_vectors is given (indices for legs
/// 3..n_legs in order), only decorations feeding exactly those vectors are
/// produced; otherwise all consistent vectors are enumerated.
/// With require_dimension, decorations failing the per-vertex dimension count
/// are dropped (they integrate to zero).
std::vector<DecoratedTree> enumerate_decorations(const StableTree& tree, int alpha, int beta,
                                                 const FamilySpec& spec, int d,
                                                 const std::vector<int>* fixed_leg_vectors = nullptr,
                                                 bool require_dimension = true);

/// Structural class of a decorated tree with the repeated psi-decorated input
/// legs collapsed; concrete trees of one figure family share one signature.
std::string family_signature(const DecoratedTree& t);

}  // namespace drh
