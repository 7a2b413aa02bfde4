#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drh/diffpoly.hpp"
#include "drh/drcycle.hpp"
#include "drh/fcohft.hpp"
#include "drh/trees.hpp"

namespace drh {

enum class ExecPolicy { Serial, Parallel };

/// Flow density P^alpha_{beta,d}: sum over labeled input tuples, stable trees
/// and R-matrix decorations of the decorated vertex integrals, coefficient-
/// extracted in the multiplicity symbols. The flow itself is dx of the
/// result. The parallel path runs the per-tree cells concurrently and reduces
/// in a fixed cell order, so both paths produce identical polynomials.
DiffPoly assemble_P(int alpha, int beta, int d, const FamilySpec& spec,
                    const TruncationContext& ctx, const Oracle& oracle,
                    ExecPolicy policy = ExecPolicy::Parallel);

/// Serial reference used by tests and the benchmark.
DiffPoly assemble_P_serial(int alpha, int beta, int d, const FamilySpec& spec,
                           const TruncationContext& ctx, const Oracle& oracle);

/// Largest eps power produced by the assembly of (alpha,beta,d) when the
/// genus loop is opened up to the combinatorial bound (emax permitting).
int observed_max_eps(int alpha, int beta, int d, const FamilySpec& spec,
                     const TruncationContext& ctx, const Oracle& oracle);

/// Closed form of P^1_{1,0} for the rank-2 family, built from the displayed
/// series: eps^0 part (u^1 + xi (u^2)^2/2)/(1+xi u^2) plus the three eps^2
/// terms in G^1, G^2.
DiffPoly golden_P110(const FamilySpec& spec, const TruncationContext& ctx);

/// The listed closed-form contributions to P^1_{2,0}, tagged by figure and
/// tree number; eps marks the genus block (0, 2 or 4).
struct TaggedForm {
    std::string tag;
    int eps = 0;
    DiffPoly form;
};
std::vector<TaggedForm> golden_P120_contributions(const FamilySpec& spec,
                                                  const TruncationContext& ctx);

/// The normalizing change of variables for the rank-2 family:
/// v^1 = u^1 + xi (u^2)^2/2 + (eps^2/24) dx^2( xi G^2 u^2 + G^1/(1+xi u^2) ),
/// v^2 = u^2.
MiuraMap normalizing_miura(const FamilySpec& spec, const TruncationContext& ctx);

/// Expresses the flows du^gamma/dt = dx P^gamma (column over gamma) in the
/// transformed variables: returns d(v^alpha)/dt as polynomials in v.
std::vector<DiffPoly> transform_flows(const std::vector<DiffPoly>& P_column, const MiuraMap& m);

/// The four transformed primary flows of the rank-2 family in closed form,
/// indexed [beta-1][alpha-1] for d(v^alpha)/dt^beta_0.
std::vector<std::vector<DiffPoly>> normalized_primary_flows(const FamilySpec& spec,
                                                            const TruncationContext& ctx);

/// Commutator residual of two flows acting on every variable. With flows of
/// positive minimal u-degree the double application is exact to the cutoff,
/// so vanishing is certified on the whole stored box.
struct CommutCheck {
    int alpha = 0;
    bool zero = false;
    size_t residual_terms = 0;
    int certified_udeg = 0;
    int certified_eps = 0;
};
std::vector<CommutCheck> check_commutativity(const std::vector<DiffPoly>& flow1,
                                             const std::vector<DiffPoly>& flow2);

/// Embeds the rank-1 KdV density into a target context: variable 1 becomes
/// var_index, eps^{2g} picks up (G^{g_param_index})^g.
DiffPoly kdv_transport(const DiffPoly& kdv_density, const TruncationContext& target, int var_index,
                       int g_param_index);

}  // namespace drh
