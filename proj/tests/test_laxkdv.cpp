#include <doctest.h>

#include "drh/laxkdv.hpp"

using namespace drh;

namespace {
const TruncationContext eng(1, 5, 0);

DiffPoly eps(const TruncationContext& c, int e) {
    DiffPoly p(c);
    DiffMonomial m;
    m.eps = e;
    p.add_term(m, ParamRational::constant(c.num_params(), 1));
    return p;
}
}  // namespace

TEST_CASE("compose Leibniz rule") {
    PsdOperator D = PsdOperator::dx_power(eng, 4, 1);
    PsdOperator f(eng, 4);
    f.set_coeff(0, DiffPoly::var(eng, 1));
    PsdOperator r = compose(D, f);
    CHECK(r.coeff(1) == DiffPoly::var(eng, 1));
    CHECK(r.coeff(0) == DiffPoly::var(eng, 1, 1));
}

TEST_CASE("compose negative order binomial tail") {
    PsdOperator Dinv = PsdOperator::dx_power(eng, 3, -1);
    PsdOperator f(eng, 3);
    f.set_coeff(0, DiffPoly::var(eng, 1));
    PsdOperator r = compose(Dinv, f);
    CHECK(r.coeff(-1) == DiffPoly::var(eng, 1));
    CHECK(r.coeff(-2) == -DiffPoly::var(eng, 1, 1));
    CHECK(r.coeff(-3) == DiffPoly::var(eng, 1, 2));
}

TEST_CASE("lax square expansion") {
    PsdOperator L = lax_operator(eng, 4);
    PsdOperator LL = compose(L, L);
    // (dx^2 + 2u)^2 = dx^4 + 2u dx^2 + 4 u_x dx + 2 u_xx + 2 u dx^2 + 4 u^2
    CHECK(LL.coeff(4) == DiffPoly::constant(eng, Rational(1)));
    CHECK(LL.coeff(2) == DiffPoly::var(eng, 1) * Rational(4));
    CHECK(LL.coeff(1) == DiffPoly::var(eng, 1, 1) * Rational(4));
    CHECK(LL.coeff(0) ==
          DiffPoly::var(eng, 1, 2) * Rational(2) + DiffPoly::var(eng, 1).pow(2) * Rational(4));
}

TEST_CASE("sqrt_L") {
    PsdOperator L = lax_operator(eng, 6);
    PsdOperator S = sqrt_L(L);
    CHECK(S.coeff(1) == DiffPoly::constant(eng, Rational(1)));
    CHECK(S.coeff(0).is_zero());
    CHECK(S.coeff(-1) == DiffPoly::var(eng, 1));  // eps^{-2} u in the implicit grading
    PsdOperator R = compose(S, S) - L;
    for (const auto& [k, c] : R.coeffs())
        if (k >= -4) CHECK(c.is_zero());

    // u = 0 gives S = dx.
    PsdOperator D2(eng, 6);
    D2.set_coeff(2, DiffPoly::constant(eng, Rational(1)));
    PsdOperator S0 = sqrt_L(D2);
    CHECK(S0.coeff(1) == DiffPoly::constant(eng, Rational(1)));
    for (const auto& [k, c] : S0.coeffs())
        if (k != 1) CHECK(c.is_zero());
}

TEST_CASE("kdv densities match the displayed flows") {
    TruncationContext out(1, 6, 6);
    DiffPoly u = DiffPoly::var(out, 1);
    DiffPoly ux = DiffPoly::var(out, 1, 1);
    DiffPoly uxx = DiffPoly::var(out, 1, 2);
    DiffPoly uxxxx = DiffPoly::var(out, 1, 4);

    CHECK(kdv_P(0, out) == u);
    CHECK(kdv_P(1, out) == u * u * rat(1, 2) + eps(out, 2) * uxx * rat(1, 12));
    DiffPoly P2 = u.pow(3) * rat(1, 6) + eps(out, 2) * (u * uxx * Rational(2) + ux * ux) * rat(1, 24) +
                  eps(out, 4) * uxxxx * rat(1, 240);
    CHECK(kdv_P(2, out) == P2);
}

TEST_CASE("kdv commutator has order zero for d up to 3") {
    for (int d = 0; d <= 3; ++d) {
        TruncationContext e2(1, d + 2, 0);
        PsdOperator L = lax_operator(e2, 2 * d + 2);
        PsdOperator A = sqrt_L(L);
        for (int i = 0; i < d; ++i) A = compose(L, A);
        PsdOperator C = commutator(A.positive_part(), L);
        for (const auto& [k, c] : C.coeffs())
            if (k != 0) CHECK(c.is_zero());
    }
}

TEST_CASE("kdv flow homogeneity") {
    TruncationContext out(1, 6, 10);
    for (int d = 0; d <= 4; ++d) {
        DiffPoly P = kdv_P(d, out);
        for (const auto& [m, c] : P.terms()) CHECK(m.diff_order() == m.eps);
    }
}
