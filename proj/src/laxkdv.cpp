#include "drh/laxkdv.hpp"

#include <algorithm>
#include <stdexcept>

namespace drh {

void PsdOperator::set_coeff(int order, DiffPoly c) {
    if (c.ctx() != ctx_) throw ContextMismatch("PsdOperator: coefficient context mismatch");
    if (order < -tail_depth_) return;
    if (c.is_zero())
        coeff_.erase(order);
    else
        coeff_.insert_or_assign(order, std::move(c));
}

DiffPoly PsdOperator::coeff(int order) const {
    auto it = coeff_.find(order);
    return it == coeff_.end() ? DiffPoly::zero(ctx_) : it->second;
}

int PsdOperator::top_order() const {
    if (coeff_.empty()) throw std::logic_error("PsdOperator::top_order: zero operator");
    return coeff_.rbegin()->first;
}

bool PsdOperator::is_zero() const { return coeff_.empty(); }

PsdOperator& PsdOperator::operator+=(const PsdOperator& o) {
    for (const auto& [k, c] : o.coeff_) set_coeff(k, coeff(k) + c);
    return *this;
}

PsdOperator& PsdOperator::operator-=(const PsdOperator& o) {
    for (const auto& [k, c] : o.coeff_) set_coeff(k, coeff(k) - c);
    return *this;
}

PsdOperator PsdOperator::positive_part() const {
    PsdOperator r(ctx_, tail_depth_);
    for (const auto& [k, c] : coeff_)
        if (k >= 0) r.coeff_.emplace(k, c);
    return r;
}

PsdOperator PsdOperator::dx_power(const TruncationContext& ctx, int tail_depth, int k) {
    PsdOperator r(ctx, tail_depth);
    r.set_coeff(k, DiffPoly::constant(ctx, Rational(1)));
    return r;
}

PsdOperator compose(const PsdOperator& a, const PsdOperator& b) {
    if (a.ctx() != b.ctx()) throw ContextMismatch("compose: context mismatch");
    const int tail = std::min(a.tail_depth(), b.tail_depth());
    PsdOperator r(a.ctx(), tail);
    for (const auto& [k, f] : a.coeffs()) {
        for (const auto& [m, g] : b.coeffs()) {
            // f dx^k . g dx^m = sum_i C(k,i) f g^{(i)} dx^{k+m-i}
            DiffPoly gdi = g;
            for (int i = 0;; ++i) {
                if (k >= 0 && i > k) break;  // binomial series terminates
                const int order = k + m - i;
                if (order < -tail) break;
                if (gdi.is_zero()) break;
                Rational c = binomial_general(Rational(k), i);
                if (c != 0) r.set_coeff(order, r.coeff(order) + f * gdi * c);
                gdi = dx(gdi);
            }
        }
    }
    return r;
}

PsdOperator commutator(const PsdOperator& a, const PsdOperator& b) {
    return compose(a, b) - compose(b, a);
}

PsdOperator lax_operator(const TruncationContext& ctx, int tail_depth) {
    PsdOperator L(ctx, tail_depth);
    L.set_coeff(2, DiffPoly::constant(ctx, Rational(1)));
    L.set_coeff(0, DiffPoly::var(ctx, 1) * Rational(2));
    return L;
}

PsdOperator sqrt_L(const PsdOperator& L) {
    const auto& ctx = L.ctx();
    if (L.is_zero() || L.top_order() != 2 ||
        L.coeff(2) != DiffPoly::constant(ctx, Rational(1)))
        throw std::domain_error("sqrt_L: operator is not monic of order 2");
    PsdOperator S = PsdOperator::dx_power(ctx, L.tail_depth(), 1);
    // (S + s dx^j)^2 = S^2 + 2 s dx^{j+1} + lower, so each step reads off
    // s_j from the top uncancelled order of L - S^2.
    for (int j = 0; j >= -L.tail_depth(); --j) {
        PsdOperator R = L - compose(S, S);
        DiffPoly s = R.coeff(j + 1) * Rational(1, 2);
        PsdOperator inc(ctx, L.tail_depth());
        inc.set_coeff(j, s);
        S += inc;
    }
    return S;
}

DiffPoly kdv_P(int d, const TruncationContext& out_ctx) {
    if (d < 0) throw std::invalid_argument("kdv_P: d must be nonnegative");
    if (out_ctx.rank != 1) throw std::invalid_argument("kdv_P: output context must have rank 1");
    // The engine works eps-free at its own u-degree cutoff d+2; the flow has
    // u-degree at most d+1, so nothing is lost.
    TruncationContext eng(1, d + 2, 0);
    const int tail = 2 * d + 2;
    PsdOperator L = lax_operator(eng, tail);
    PsdOperator S = sqrt_L(L);
    PsdOperator A = S;
    for (int i = 0; i < d; ++i) A = compose(L, A);
    PsdOperator C = commutator(A.positive_part(), L);
    for (const auto& [k, c] : C.coeffs())
        if (k != 0 && !c.is_zero())
            throw std::domain_error("kdv_P: commutator is not a multiplication operator");
    DiffPoly rhs = C.coeff(0) * Rational(Integer(1), 2 * double_factorial_odd(d));
    DiffPoly P = dx_preimage(rhs);

    // Restore eps: a monomial of u-degree p carries eps^{2d+2-2p}; the flow
    // must be polynomial in eps and each eps^{2g} part must have differential
    // order exactly 2g.
    DiffPoly out(out_ctx);
    for (const auto& [m, c] : P.terms()) {
        const int p = m.u_degree();
        const int e = 2 * d + 2 - 2 * p;
        if (e < 0) throw std::domain_error("kdv_P: residual negative eps power");
        if (m.diff_order() != e)
            throw std::domain_error("kdv_P: eps power does not match differential order");
        DiffMonomial t = m;
        t.eps = e;
        ParamRational coef = ParamRational::constant(out_ctx.num_params(), c.constant_value());
        out.add_term(std::move(t), coef);
    }
    return out;
}

}  // namespace drh
