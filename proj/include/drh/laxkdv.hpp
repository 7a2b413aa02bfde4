#pragma once

#include <map>

#include "drh/diffpoly.hpp"

namespace drh {

/// Truncated pseudodifferential operator sum_k c_k(u) dx^k in a single
/// dependent variable u. Coefficients are rank-1 DiffPolys with no explicit
/// eps: by the grading of the Lax operator L = dx^2 + 2 eps^{-2} u, every
/// monomial of u-degree p carries eps^{-2p}, so the Laurent eps power is
/// implicit and is restored (and checked nonnegative) when a flow is
/// extracted.
class PsdOperator {
public:
    PsdOperator(const TruncationContext& ctx, int tail_depth)
        : ctx_(ctx), tail_depth_(tail_depth) {}

    const TruncationContext& ctx() const { return ctx_; }
    int tail_depth() const { return tail_depth_; }
    const std::map<int, DiffPoly>& coeffs() const { return coeff_; }

    void set_coeff(int order, DiffPoly c);
    DiffPoly coeff(int order) const;
    int top_order() const;  // throws on zero operator
    bool is_zero() const;

    PsdOperator& operator+=(const PsdOperator& o);
    PsdOperator& operator-=(const PsdOperator& o);
    friend PsdOperator operator+(PsdOperator a, const PsdOperator& b) { return a += b; }
    friend PsdOperator operator-(PsdOperator a, const PsdOperator& b) { return a -= b; }

    /// Orders >= 0 (the differential-operator part).
    PsdOperator positive_part() const;

    static PsdOperator dx_power(const TruncationContext& ctx, int tail_depth, int k);

private:
    TruncationContext ctx_;
    int tail_depth_;               // orders below -tail_depth are dropped
    std::map<int, DiffPoly> coeff_;
};

/// Exact truncated composition via the symbol calculus
/// dx^k . f = sum_i C(k,i) f^{(i)} dx^{k-i} (binomial series for k < 0).
PsdOperator compose(const PsdOperator& a, const PsdOperator& b);

PsdOperator commutator(const PsdOperator& a, const PsdOperator& b);

/// The Lax operator dx^2 + 2u (u standing for eps^{-2} u).
PsdOperator lax_operator(const TruncationContext& ctx, int tail_depth);

/// Square root S = dx + lower order with S.S = L, solved order by order;
/// requires monic leading term dx^2.
PsdOperator sqrt_L(const PsdOperator& L);

/// The d-th KdV flow density P_d with u = u^1, expressed in out_ctx
/// (rank 1, emax >= 2d). Negative eps powers must cancel; violations throw.
DiffPoly kdv_P(int d, const TruncationContext& out_ctx);

}  // namespace drh
