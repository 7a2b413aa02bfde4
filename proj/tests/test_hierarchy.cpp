#include <doctest.h>

#include "drh/hierarchy.hpp"
#include "drh/jsonio.hpp"
#include "drh/laxkdv.hpp"

using namespace drh;

namespace {
const FamilySpec spec = FamilySpec::rank2_symbolic();

ParamRational xi() { return ParamRational::symbol(3, 0); }
ParamRational G(int i) { return ParamRational::symbol(3, i); }
}  // namespace

TEST_CASE("P^2_{1,d} vanishes and P^2_{2,d} is diagonal KdV") {
    Oracle oracle;
    TruncationContext ctx(2, 4, 4);
    for (int d = 0; d <= 2; ++d) {
        CHECK(assemble_P(2, 1, d, spec, ctx, oracle).is_zero());
        DiffPoly P22 = assemble_P(2, 2, d, spec, ctx, oracle);
        TruncationContext kctx(1, ctx.dmax, ctx.emax);
        CHECK(P22 == kdv_transport(kdv_P(d, kctx), ctx, 2, 2));
    }
}

TEST_CASE("eps^0 part of P^1_{1,0}") {
    Oracle oracle;
    TruncationContext ctx(2, 5, 0);
    DiffPoly P = assemble_P(1, 1, 0, spec, ctx, oracle);
    DiffPoly u1 = DiffPoly::var(ctx, 1), u2 = DiffPoly::var(ctx, 2);
    DiffPoly expect = (u1 + u2 * u2 * xi() * rat(1, 2)) *
                      expand_inverse(u2 * xi(), 1);
    CHECK(P == expect);
}

TEST_CASE("P^1_{1,0} golden at the acceptance cutoff") {
    Oracle oracle;
    TruncationContext ctx(2, 6, 2);
    DiffPoly P = assemble_P(1, 1, 0, spec, ctx, oracle);
    CHECK(P == golden_P110(spec, ctx));

    // Spot value: coefficient of eps^2 u^2_xx at u-degree 1 is xi (G2-G1)/24.
    DiffMonomial m;
    m.eps = 2;
    m.factors = {{2, 2, 1}};
    auto it = P.terms().find(m);
    REQUIRE(it != P.terms().end());
    CHECK(it->second == (G(2) - G(1)) * xi() * rat(1, 24));
}

TEST_CASE("parallel and serial assembly agree bit for bit") {
    Oracle oracle;
    TruncationContext ctx(2, 5, 4);
    DiffPoly a = assemble_P(1, 2, 0, spec, ctx, oracle, ExecPolicy::Parallel);
    DiffPoly b = assemble_P_serial(1, 2, 0, spec, ctx, oracle);
    CHECK(a == b);
    CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("labeled-tuple and sorted-tuple assemblies agree") {
    // Definitional sum over all labeled tuples with 1/n! versus a sum over
    // sorted tuples weighted by the orbit size.
    Oracle oracle;
    TruncationContext ctx(2, 3, 2);
    for (auto [alpha, beta] : {std::pair{1, 1}, std::pair{1, 2}}) {
        DiffPoly full = assemble_P(alpha, beta, 0, spec, ctx, oracle);

        DiffPoly by_tuples(ctx);
        for (int n = 0; n <= ctx.dmax; ++n) {
            for (int g = 0; 2 * g <= ctx.emax; ++g) {
                if (2 * g + n == 0) continue;
                std::vector<int> tuple(static_cast<size_t>(n), 1);
                // Enumerate weakly increasing tuples; weight by the number of
                // distinct rearrangements.
                std::function<void(int, int)> rec = [&](int pos, int lo) {
                    if (pos == n) {
                        Integer perms = factorial(n);
                        std::vector<int> counts(3, 0);
                        for (int v : tuple) counts[static_cast<size_t>(v)]++;
                        for (int v = 1; v <= 2; ++v) perms /= factorial(counts[static_cast<size_t>(v)]);
                        std::vector<LinearForm> mults(static_cast<size_t>(n) + 3, zero_form(n));
                        for (int i = 0; i < n; ++i) {
                            mults[1][static_cast<size_t>(i)] = -1;
                            mults[static_cast<size_t>(i) + 3] = unit_form(n, i);
                        }
                        for (const auto& tree : enumerate_trees(2, g, n + 2, 0)) {
                            auto S = balance_multiplicities(tree, mults);
                            for (const auto& dec :
                                 enumerate_decorations(tree, alpha, beta, spec, 0, &tuple)) {
                                MultiPoly prod = MultiPoly::constant(n, 1);
                                bool dead = false;
                                for (int v = 0; v < tree.n_vertices() && !dead; ++v) {
                                    VertexIntegralQuery q;
                                    q.genus = tree.verts[static_cast<size_t>(v)].genus;
                                    q.nvars = n;
                                    for (int leg : tree.verts[static_cast<size_t>(v)].legs)
                                        q.points.push_back({mults[static_cast<size_t>(leg)],
                                                            dec.psi_exponent(leg)});
                                    for (int c : tree.verts[static_cast<size_t>(v)].children)
                                        q.points.push_back({S[static_cast<size_t>(c)], 0});
                                    if (tree.verts[static_cast<size_t>(v)].parent >= 0) {
                                        LinearForm up = S[static_cast<size_t>(v)];
                                        for (auto& x : up) x = -x;
                                        q.points.push_back({up, 0});
                                    }
                                    MultiPoly val = oracle.evaluate(q);
                                    if (val.is_zero()) dead = true;
                                    else prod *= val;
                                }
                                if (dead) continue;
                                for (const auto& [k, coef] : prod.terms()) {
                                    int deg = 0;
                                    for (int x : k) deg += x;
                                    if (deg != 2 * g) continue;
                                    DiffMonomial mono;
                                    mono.eps = 2 * g;
                                    for (int j = 0; j < n; ++j)
                                        mono.factors.push_back(
                                            {tuple[static_cast<size_t>(j)], k[static_cast<size_t>(j)], 1});
                                    mono.normalize();
                                    by_tuples.add_term(std::move(mono),
                                                       dec.weight * (coef * Rational(perms) /
                                                                     Rational(factorial(n))));
                                }
                            }
                        }
                        return;
                    }
                    for (int v = lo; v <= 2; ++v) {
                        tuple[static_cast<size_t>(pos)] = v;
                        rec(pos + 1, v);
                    }
                };
                rec(0, 1);
            }
        }
        CHECK(full == by_tuples);
    }
}

TEST_CASE("assembled eps parts carry matching differential order") {
    Oracle oracle;
    TruncationContext ctx(2, 4, 4);
    for (auto [a, b] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
        DiffPoly P = assemble_P(a, b, 0, spec, ctx, oracle);
        for (const auto& [m, c] : P.terms()) CHECK(m.diff_order() == m.eps);
    }
}

TEST_CASE("normalizing map fixes u^2 and collapses with xi = 0") {
    TruncationContext ctx(2, 5, 4);
    MiuraMap m = normalizing_miura(spec, ctx);
    CHECK(m.images[1] == DiffPoly::var(ctx, 2));

    // With xi = 0 the G^1 correction term is a constant killed by dx^2.
    FamilySpec flat = FamilySpec::diagonal(2);
    MiuraMap m0 = normalizing_miura(flat, ctx);
    CHECK(m0.images[0] == DiffPoly::var(ctx, 1));
    CHECK(substitute(DiffPoly::var(ctx, 1), m0) == DiffPoly::var(ctx, 1));
}

TEST_CASE("normalizing map round trip at the acceptance cutoff") {
    TruncationContext ctx(2, 6, 4);
    MiuraMap m = normalizing_miura(spec, ctx);
    MiuraMap inv = invert_miura(m);
    for (int a = 1; a <= 2; ++a) {
        CHECK(substitute(m.images[static_cast<size_t>(a - 1)], inv) == DiffPoly::var(ctx, a));
        CHECK(substitute(inv.images[static_cast<size_t>(a - 1)], m) == DiffPoly::var(ctx, a));
    }
}

TEST_CASE("transformed t^1_0 flow on v^2 vanishes and on v^1 closes") {
    Oracle oracle;
    TruncationContext ctx(2, 5, 4);
    DiffPoly P110 = assemble_P(1, 1, 0, spec, ctx, oracle);
    DiffPoly P210 = assemble_P(2, 1, 0, spec, ctx, oracle);
    auto flows = transform_flows({P110, P210}, normalizing_miura(spec, ctx));
    auto expected = normalized_primary_flows(spec, ctx);
    CHECK(flows[0] == expected[0][0]);
    CHECK(flows[1].is_zero());
}

TEST_CASE("diffpoly json round trip") {
    Oracle oracle;
    TruncationContext ctx(2, 3, 2);
    DiffPoly P = assemble_P(1, 1, 0, spec, ctx, oracle);
    json j = to_json(P);
    CHECK(diffpoly_from_json(j) == P);
}
