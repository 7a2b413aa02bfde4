#include "drh/hierarchy.hpp"

#include <algorithm>

#include "drh/laxkdv.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace drh {

namespace {

struct Cell {
    int n = 0;
    int g = 0;
    StableTree tree;
};

/// Contribution of one stable tree with all its decorations.
DiffPoly assemble_cell(const Cell& cell, int alpha, int beta, int d, const FamilySpec& spec,
                       const TruncationContext& ctx, const Oracle& oracle) {
    const int n = cell.n;
    DiffPoly acc(ctx);
    // Leg multiplicities: leg 1 = -sum a_j, leg 2 = 0, leg j+2 = a_j.
    std::vector<LinearForm> leg_mults(static_cast<size_t>(n) + 3, zero_form(n));
    for (int i = 0; i < n; ++i) {
        leg_mults[1][static_cast<size_t>(i)] = -1;
        leg_mults[static_cast<size_t>(i) + 3] = unit_form(n, i);
    }
    const auto S = balance_multiplicities(cell.tree, leg_mults);

    const Rational norm = Rational(1) / Rational(factorial(n));
    auto decs = enumerate_decorations(cell.tree, alpha, beta, spec, d);
    for (const auto& dec : decs) {
        MultiPoly prod = MultiPoly::constant(n, 1);
        bool dead = false;
        for (int v = 0; v < cell.tree.n_vertices() && !dead; ++v) {
            const auto& vx = cell.tree.verts[static_cast<size_t>(v)];
            VertexIntegralQuery q;
            q.genus = vx.genus;
            q.nvars = n;
            for (int leg : vx.legs)
                q.points.push_back({leg_mults[static_cast<size_t>(leg)], dec.psi_exponent(leg)});
            for (int c : vx.children) q.points.push_back({S[static_cast<size_t>(c)], 0});
            if (vx.parent >= 0) {
                LinearForm up = S[static_cast<size_t>(v)];
                for (auto& x : up) x = -x;
                q.points.push_back({std::move(up), 0});
            }
            MultiPoly val = oracle.evaluate(q);
            if (val.is_zero()) {
                dead = true;
                break;
            }
            prod *= val;
        }
        if (dead || prod.is_zero()) continue;
        if (!prod.is_homogeneous(2 * cell.g))
            throw std::logic_error("assemble_P: vertex integrals broke the degree grading");
        for (const auto& [k, coef] : prod.terms()) {
            DiffMonomial mono;
            mono.eps = 2 * cell.g;
            for (int j = 0; j < n; ++j)
                mono.factors.push_back({dec.leg_orig[static_cast<size_t>(j) + 3],
                                        k[static_cast<size_t>(j)], 1});
            mono.normalize();
            acc.add_term(std::move(mono), dec.weight * (coef * norm));
        }
    }
    return acc;
}

std::vector<Cell> build_cells(int beta, int d, const FamilySpec& spec,
                              const TruncationContext& ctx, int gmax) {
    (void)beta;
    std::vector<Cell> cells;
    for (int n = 0; n <= ctx.dmax; ++n) {
        for (int g = 0; g <= gmax; ++g) {
            if (2 * g + n == 0) continue;
            if (2 * g + (n + 2) - 2 <= 0) continue;  // stability of (g, n+2)
            for (auto& t : enumerate_trees(spec.rank, g, n + 2, d))
                cells.push_back(Cell{n, g, std::move(t)});
        }
    }
    return cells;
}

DiffPoly assemble_impl(int alpha, int beta, int d, const FamilySpec& spec,
                       const TruncationContext& ctx, const Oracle& oracle, ExecPolicy policy,
                       int gmax) {
    if (spec.rank != ctx.rank)
        throw std::invalid_argument("assemble_P: family rank and context rank differ");
    if (d < 0) throw std::invalid_argument("assemble_P: d must be nonnegative");
    if (!check_nilpotent(spec))
        throw std::invalid_argument("assemble_P: R1 must be strictly upper triangular with R1^2=0");
    oracle.warm_kdv_tables(gmax, d);

    auto cells = build_cells(beta, d, spec, ctx, gmax);
    std::vector<DiffPoly> parts(cells.size(), DiffPoly(ctx));

#ifdef _OPENMP
    if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(cells.size()); ++i)
            parts[static_cast<size_t>(i)] =
                assemble_cell(cells[static_cast<size_t>(i)], alpha, beta, d, spec, ctx, oracle);
    } else
#else
    (void)policy;
#endif
    {
        for (size_t i = 0; i < cells.size(); ++i)
            parts[i] = assemble_cell(cells[i], alpha, beta, d, spec, ctx, oracle);
    }

    // Canonical reduction: fixed cell order regardless of scheduling.
    DiffPoly total(ctx);
    for (auto& p : parts) total += p;
    return total;
}

int genus_cap(const FamilySpec& spec, const TruncationContext& ctx, int d) {
    int gmax = ctx.emax / 2;
    if (spec.rank >= 2) gmax = std::min<long>(gmax, genus_bound(spec.rank, d));
    return gmax;
}

}  // namespace

DiffPoly assemble_P(int alpha, int beta, int d, const FamilySpec& spec,
                    const TruncationContext& ctx, const Oracle& oracle, ExecPolicy policy) {
    return assemble_impl(alpha, beta, d, spec, ctx, oracle, policy, genus_cap(spec, ctx, d));
}

DiffPoly assemble_P_serial(int alpha, int beta, int d, const FamilySpec& spec,
                           const TruncationContext& ctx, const Oracle& oracle) {
    return assemble_impl(alpha, beta, d, spec, ctx, oracle, ExecPolicy::Serial,
                         genus_cap(spec, ctx, d));
}

int observed_max_eps(int alpha, int beta, int d, const FamilySpec& spec,
                     const TruncationContext& ctx, const Oracle& oracle) {
    // Pass a context with emax at twice the combinatorial bound to open the
    // genus loop fully.
    return assemble_P(alpha, beta, d, spec, ctx, oracle).max_eps();
}

namespace {

/// 1/(1+xi u^2)^k as a truncated series.
DiffPoly inv_pow(const FamilySpec& spec, const TruncationContext& ctx, int k) {
    DiffPoly xi_u2 = DiffPoly::var(ctx, 2) * spec.R1[0][1];
    return expand_inverse(xi_u2, k);
}

DiffPoly eps_power(const TruncationContext& ctx, int e) {
    DiffPoly p(ctx);
    DiffMonomial m;
    m.eps = e;
    p.add_term(m, ParamRational::constant(ctx.num_params(), 1));
    return p;
}

}  // namespace

DiffPoly golden_P110(const FamilySpec& spec, const TruncationContext& ctx) {
    const ParamRational xi = spec.R1[0][1];
    const ParamRational g1 = spec.G[0];
    const ParamRational g2 = spec.G[1];
    DiffPoly u1 = DiffPoly::var(ctx, 1);
    DiffPoly u2 = DiffPoly::var(ctx, 2);
    DiffPoly u2x = DiffPoly::var(ctx, 2, 1);
    DiffPoly u2xx = DiffPoly::var(ctx, 2, 2);
    DiffPoly eps2 = eps_power(ctx, 2);

    DiffPoly P = (u1 + u2 * u2 * xi * rat(1, 2)) * inv_pow(spec, ctx, 1);
    P += eps2 * u2xx * inv_pow(spec, ctx, 3) * (xi * g1) * rat(-1, 24);
    P += eps2 * u2x * u2x * inv_pow(spec, ctx, 4) * (xi * xi * g1) * rat(1, 12);
    P += eps2 * u2xx * inv_pow(spec, ctx, 1) * (xi * g2) * rat(1, 24);
    return P;
}

std::vector<TaggedForm> golden_P120_contributions(const FamilySpec& spec,
                                                  const TruncationContext& ctx) {
    const ParamRational xi = spec.R1[0][1];
    const ParamRational g1 = spec.G[0];
    const ParamRational g2 = spec.G[1];
    DiffPoly u1 = DiffPoly::var(ctx, 1);
    DiffPoly u2 = DiffPoly::var(ctx, 2);
    DiffPoly u2x = DiffPoly::var(ctx, 2, 1);
    DiffPoly u2xx = DiffPoly::var(ctx, 2, 2);
    DiffPoly u2xxx = DiffPoly::var(ctx, 2, 3);
    DiffPoly u2xxxx = DiffPoly::var(ctx, 2, 4);
    auto inv = [&](int k) { return inv_pow(spec, ctx, k); };
    const DiffPoly W = u1 + u2 * u2 * xi * rat(1, 2);  // u^1 + xi (u^2)^2 / 2

    std::vector<TaggedForm> out;
    auto add = [&](const std::string& tag, int e, DiffPoly f) {
        out.push_back(TaggedForm{tag, e, e == 0 ? std::move(f) : eps_power(ctx, e) * f});
    };

    // Genus 0.
    add("fig2-tree1", 0, u2 * u2 * xi * rat(-1, 2));
    add("fig2-tree2", 0, u1 * u1 * inv(2) * xi * rat(-1, 2));
    add("fig2-tree3", 0, u1 * u2 * u2 * inv(2) * (xi * xi) * rat(-1, 2));
    add("fig2-tree4", 0, u1 * u2 * inv(1) * xi);
    add("fig2-tree5", 0, u2 * u2 * u2 * u2 * inv(2) * (xi * xi * xi) * rat(-1, 8));
    add("fig2-tree6", 0, u2 * u2 * u2 * inv(1) * (xi * xi) * rat(1, 2));

    // Genus 1.
    add("fig3-tree1", 2, u2xx * (xi * g2) * rat(-1, 24));
    add("fig3-trees2-3", 2,
        W * u2xx * inv(4) * (xi * xi * g1) * rat(1, 8) -
            W * u2x * u2x * inv(5) * (xi * xi * xi * g1) * rat(1, 3) +
            dx(W) * u2x * inv(4) * (xi * xi * g1) * rat(1, 4) -
            dxk(W, 2) * inv(3) * (xi * g1) * rat(1, 12));
    add("fig3-tree4", 2,
        u2xx * inv(3) * (xi * g1) * rat(1, 24) - u2x * u2x * inv(4) * (xi * xi * g1) * rat(1, 12));
    add("fig3-trees5-7", 2, W * u2xx * inv(2) * (xi * xi * g2) * rat(-1, 24));
    add("fig3-trees6-8", 2, DiffPoly::zero(ctx));
    add("fig3-tree9", 2, u2 * u2xx * inv(1) * (xi * xi * g2) * rat(1, 24));

    // Genus 2.
    add("fig4-tree1", 4, DiffPoly::zero(ctx));
    add("fig4-tree2", 4,
        (u2xxxx * inv(5) * (xi * xi) * rat(1, 288) -
         u2xx * u2xx * inv(6) * (xi * xi * xi) * rat(29, 1152) -
         u2xxx * u2x * inv(6) * (xi * xi * xi) * rat(11, 288) +
         u2xx * u2x * u2x * inv(7) * (xi * xi * xi * xi) * rat(5, 24) -
         u2x * u2x * u2x * u2x * inv(8) * (xi * xi * xi * xi * xi) * rat(49, 288)) *
            (g1 * g1));
    add("fig4-tree3", 4,
        (u2xx * u2xx * inv(4) * (xi * xi * xi) * rat(1, 192) -
         u2xx * u2x * u2x * inv(5) * (xi * xi * xi * xi) * rat(1, 72) +
         u2xxx * u2x * inv(4) * (xi * xi * xi) * rat(1, 96) -
         u2xxxx * inv(3) * (xi * xi) * rat(1, 288)) *
            (g1 * g2));
    add("fig4-tree4", 4, DiffPoly::zero(ctx));
    add("fig4-tree5", 4, u2xx * u2xx * inv(2) * (xi * xi * xi) * (g2 * g2) * rat(-1, 1152));
    add("fig4-tree6", 4, DiffPoly::zero(ctx));
    return out;
}

MiuraMap normalizing_miura(const FamilySpec& spec, const TruncationContext& ctx) {
    const ParamRational xi = spec.R1[0][1];
    MiuraMap m(ctx);
    DiffPoly core = DiffPoly::var(ctx, 2) * (xi * spec.G[1]) + inv_pow(spec, ctx, 1) * spec.G[0];
    DiffPoly corr = dxk(core, 2) * rat(1, 24);
    DiffPoly v1 = DiffPoly::var(ctx, 1) + DiffPoly::var(ctx, 2) * DiffPoly::var(ctx, 2) * xi * rat(1, 2) +
                  eps_power(ctx, 2) * corr;
    m.images.push_back(std::move(v1));
    m.images.push_back(DiffPoly::var(ctx, 2));
    return m;
}

std::vector<DiffPoly> transform_flows(const std::vector<DiffPoly>& P_column, const MiuraMap& m) {
    std::vector<DiffPoly> Q;
    for (const auto& P : P_column) Q.push_back(dx(P));
    MiuraMap inverse = invert_miura(m);
    std::vector<DiffPoly> out;
    for (const auto& img : m.images) out.push_back(substitute(flow_apply(img, Q), inverse));
    return out;
}

std::vector<std::vector<DiffPoly>> normalized_primary_flows(const FamilySpec& spec,
                                                            const TruncationContext& ctx) {
    const ParamRational xi = spec.R1[0][1];
    const ParamRational g1 = spec.G[0];
    DiffPoly v1 = DiffPoly::var(ctx, 1);
    DiffPoly v2 = DiffPoly::var(ctx, 2);
    auto inv = [&](int k) { return inv_pow(spec, ctx, k); };
    DiffPoly eps2 = eps_power(ctx, 2);

    std::vector<std::vector<DiffPoly>> flows(2);
    // t^1_0
    flows[0].push_back(dx(v1 * inv(1)));
    flows[0].push_back(DiffPoly::zero(ctx));
    // t^2_0: the eps^2 block nests (v1/(1+xi v2))_x three times against the
    // inverse series.
    DiffPoly nested = dx(dx(v1 * inv(1)) * inv(1)) * inv(1);
    DiffPoly bracket = v1 * v2 * inv(1) - v1 * v1 * inv(2) * rat(1, 2) -
                       eps2 * nested * g1 * rat(1, 12);
    flows[1].push_back(dx(bracket * xi));
    flows[1].push_back(DiffPoly::var(ctx, 2, 1));
    return flows;
}

std::vector<CommutCheck> check_commutativity(const std::vector<DiffPoly>& flow1,
                                             const std::vector<DiffPoly>& flow2) {
    if (flow1.empty() || flow1.size() != flow2.size())
        throw std::invalid_argument("check_commutativity: flow columns must match");
    const auto& ctx = flow1[0].ctx();
    for (const auto& q : flow1)
        if (q.min_u_degree() < 1 && !q.is_zero())
            throw std::invalid_argument("check_commutativity: flow with constant term");
    for (const auto& q : flow2)
        if (q.min_u_degree() < 1 && !q.is_zero())
            throw std::invalid_argument("check_commutativity: flow with constant term");
    std::vector<CommutCheck> out;
    for (size_t a = 0; a < flow1.size(); ++a) {
        DiffPoly r = flow_apply(flow1[a], flow2) - flow_apply(flow2[a], flow1);
        CommutCheck c;
        c.alpha = static_cast<int>(a) + 1;
        c.zero = r.is_zero();
        c.residual_terms = r.size();
        c.certified_udeg = ctx.dmax;
        c.certified_eps = ctx.emax;
        out.push_back(c);
    }
    return out;
}

DiffPoly kdv_transport(const DiffPoly& kdv_density, const TruncationContext& target, int var_index,
                       int g_param_index) {
    if (kdv_density.ctx().rank != 1)
        throw std::invalid_argument("kdv_transport: source must have rank 1");
    DiffPoly out(target);
    ParamRational g = ParamRational::symbol(target.num_params(), g_param_index);
    for (const auto& [m, c] : kdv_density.terms()) {
        if (m.eps % 2 != 0) throw std::domain_error("kdv_transport: odd eps power");
        DiffMonomial t;
        t.eps = m.eps;
        for (const auto& f : m.factors) t.factors.push_back({var_index, f[1], f[2]});
        t.normalize();
        out.add_term(std::move(t),
                     ParamRational::constant(target.num_params(), c.constant_value()) *
                         g.pow(m.eps / 2));
    }
    return out;
}

}  // namespace drh
