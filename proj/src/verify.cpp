#include "drh/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "drh/laxkdv.hpp"

namespace drh {

json to_json(const SuiteReport& r) {
    json j;
    j["suite"] = r.suite;
    json checks = json::array();
    for (const auto& c : r.checks) {
        json e;
        e["name"] = c.name;
        e["status"] = c.pass ? "pass" : "fail";
        if (!c.residual.empty()) e["residual"] = c.residual;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    return j;
}

Rational genus0_string_oracle(std::vector<int> exps) {
    const int m = static_cast<int>(exps.size());
    if (m < 3) return Rational(0);
    int sum = 0;
    for (int k : exps) sum += k;
    if (sum != m - 3) return Rational(0);
    if (m == 3) return Rational(1);
    size_t drop = exps.size();
    for (size_t i = 0; i < exps.size(); ++i)
        if (exps[i] == 0) {
            drop = i;
            break;
        }
    if (drop == exps.size()) return Rational(0);  // cannot happen when sum = m-3
    Rational total(0);
    for (size_t j = 0; j < exps.size(); ++j) {
        if (j == drop || exps[j] == 0) continue;
        std::vector<int> next;
        for (size_t t = 0; t < exps.size(); ++t) {
            if (t == drop) continue;
            next.push_back(exps[t] - (t == j ? 1 : 0));
        }
        total += genus0_string_oracle(std::move(next));
    }
    return total;
}

namespace {

void check(SuiteReport& r, const std::string& name, bool pass, const std::string& residual = "") {
    r.checks.push_back(CheckResult{name, pass, residual});
}

Rational eval_multipoly(const MultiPoly& p, const std::vector<Rational>& vals) {
    Rational total(0);
    for (const auto& [e, c] : p.terms()) {
        Rational t = c;
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= vals[i];
        total += t;
    }
    return total;
}

/// DR_1 query with two psi-free points and n psi-points in the standard
/// hierarchy arrangement (free point 2 carries the zero form).
VertexIntegralQuery unified_query(int n) {
    VertexIntegralQuery q;
    q.genus = 1;
    q.nvars = n;
    QueryPoint first;
    first.mult = zero_form(n);
    for (int i = 0; i < n; ++i) first.mult[static_cast<size_t>(i)] = -1;
    q.points.push_back(first);
    q.points.push_back({zero_form(n), 0});
    for (int i = 0; i < n; ++i) q.points.push_back({unit_form(n, i), 1});
    return q;
}

VertexIntegralQuery q_query(int n) {
    VertexIntegralQuery q;
    q.genus = 2;
    q.nvars = n;
    QueryPoint first;
    first.mult = zero_form(n);
    for (int i = 0; i < n; ++i) first.mult[static_cast<size_t>(i)] = -1;
    q.points.push_back(first);
    for (int i = 0; i < n; ++i) q.points.push_back({unit_form(n, i), 1});
    return q;
}

// ---- randomized algebra properties -----------------------------------------

struct Rng {
    std::mt19937 gen{12345};
    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    }
    Rational rational() {
        int num = uniform(-6, 6);
        int den = uniform(1, 4);
        return rat(num == 0 ? 1 : num, den);
    }
};

DiffPoly random_poly(Rng& rng, const TruncationContext& ctx, bool allow_const) {
    DiffPoly p(ctx);
    const int nterms = rng.uniform(1, 4);
    for (int t = 0; t < nterms; ++t) {
        DiffMonomial m;
        m.eps = 2 * rng.uniform(0, ctx.emax / 2);
        int deg = rng.uniform(allow_const && m.eps > 0 ? 0 : 1, std::max(1, ctx.dmax - 1));
        for (int i = 0; i < deg; ++i)
            m.factors.push_back({rng.uniform(1, ctx.rank), rng.uniform(0, 3), 1});
        m.normalize();
        ParamRational c = ParamRational::constant(ctx.num_params(), rng.rational());
        if (rng.uniform(0, 2) == 0)
            c *= ParamRational::symbol(ctx.num_params(), rng.uniform(0, ctx.num_params() - 1));
        p.add_term(std::move(m), c);
    }
    return p;
}

void algebra_property_checks(SuiteReport& r, int cases) {
    Rng rng;
    TruncationContext ctx(2, 4, 4);

    bool ok = true;
    for (int i = 0; i < cases && ok; ++i) {
        DiffPoly p = random_poly(rng, ctx, true), q = random_poly(rng, ctx, true);
        ok = dx(p * q) == dx(p) * q + p * dx(q);
    }
    check(r, "dx-derivation-randomized", ok);

    ok = true;
    for (int i = 0; i < cases && ok; ++i) {
        DiffPoly p = random_poly(rng, ctx, true);
        int alpha = rng.uniform(1, 2), k = rng.uniform(1, 3);
        ok = pderiv(dx(p), alpha, k) == dx(pderiv(p, alpha, k)) + pderiv(p, alpha, k - 1);
    }
    check(r, "pderiv-dx-ladder-randomized", ok);

    ok = true;
    for (int i = 0; i < cases && ok; ++i) {
        DiffPoly q = random_poly(rng, ctx, false);
        int k = rng.uniform(1, 3);
        DiffPoly one = DiffPoly::constant(ctx, Rational(1));
        ok = expand_inverse(q, k) * (one + q).pow(k) == one;
    }
    check(r, "expand-inverse-randomized", ok);

    ok = true;
    for (int i = 0; i < cases && ok; ++i) {
        MiuraMap m = MiuraMap::identity(ctx);
        for (auto& img : m.images) {
            DiffPoly extra = random_poly(rng, ctx, false);
            // Push every extra term to joint grade >= 2.
            DiffPoly shifted(ctx);
            for (const auto& [mono, c] : extra.terms()) {
                if (mono.eps == 0 && mono.u_degree() < 2) continue;
                shifted.add_term(mono, c);
            }
            img += shifted;
        }
        MiuraMap inv = invert_miura(m);
        for (int a = 1; a <= ctx.rank && ok; ++a)
            ok = substitute(inv.images[static_cast<size_t>(a - 1)], m) == DiffPoly::var(ctx, a);
    }
    check(r, "miura-roundtrip-randomized", ok);
}

// ---- figure families --------------------------------------------------------

struct FamVertex {
    int genus = 0;
    int label = 0;
    std::vector<int> plain;  // fed indices of the plain input legs
    bool has_box = false;
    bool box_psi = false;
};

std::string make_family_sig(const std::vector<FamVertex>& vs, const std::vector<int>& parent,
                            bool cov_psi, int alpha, int beta, int d) {
    DecoratedTree t;
    t.d = d;
    t.alpha = alpha;
    t.beta = beta;
    t.tree.n_legs = 2;
    for (const auto& v : vs) (void)v;
    for (size_t i = 0; i < vs.size(); ++i) {
        TreeVertex vx;
        vx.parent = parent[i];
        vx.genus = vs[i].genus;
        vx.level = parent[i] < 0 ? 1 : 2;  // level is irrelevant to the signature
        if (parent[i] >= 0) {
            // fix levels for grandchildren later if ever needed
        }
        t.tree.verts.push_back(vx);
        if (parent[i] >= 0)
            t.tree.verts[static_cast<size_t>(parent[i])].children.push_back(static_cast<int>(i));
        t.label.push_back(vs[i].label);
    }
    // Legs: 1 at root, 2 at the box vertex, plain legs from 3 on.
    t.tree.verts[0].legs.push_back(1);
    int next_leg = 3;
    for (size_t i = 0; i < vs.size(); ++i) {
        if (vs[i].has_box) t.tree.verts[i].legs.push_back(2);
        for (size_t p = 0; p < vs[i].plain.size(); ++p)
            t.tree.verts[i].legs.push_back(next_leg++);
    }
    t.tree.n_legs = next_leg - 1;
    t.leg_psi.assign(static_cast<size_t>(t.tree.n_legs) + 1, 0);
    t.leg_orig.assign(static_cast<size_t>(t.tree.n_legs) + 1, 0);
    t.leg_psi[1] = cov_psi ? 1 : 0;
    t.leg_orig[1] = alpha;
    next_leg = 3;
    for (size_t i = 0; i < vs.size(); ++i) {
        if (vs[i].has_box) {
            t.leg_psi[2] = vs[i].box_psi ? 1 : 0;
            t.leg_orig[2] = beta;
        }
        for (int orig : vs[i].plain) t.leg_orig[static_cast<size_t>(next_leg++)] = orig;
    }
    for (auto& vx : t.tree.verts) std::sort(vx.legs.begin(), vx.legs.end());
    t.weight = ParamRational::constant(3, 1);
    return family_signature(t);
}

std::set<std::string> expected_families_fig1() {
    std::set<std::string> s;
    s.insert(make_family_sig({{0, 1, {1}, true, false}}, {-1}, false, 1, 1, 0));
    s.insert(make_family_sig({{0, 1, {}, true, false}, {0, 2, {2, 2}, false, false}}, {-1, 0},
                             false, 1, 1, 0));
    s.insert(make_family_sig({{1, 1, {}, true, false}}, {-1}, false, 1, 1, 0));
    s.insert(make_family_sig({{0, 1, {}, true, false}, {1, 2, {2}, false, false}}, {-1, 0}, false,
                             1, 1, 0));
    return s;
}

std::set<std::string> expected_families_fig2() {
    std::set<std::string> s;
    s.insert(make_family_sig({{0, 2, {2, 2}, true, false}}, {-1}, true, 1, 2, 0));
    s.insert(make_family_sig({{0, 1, {1, 1}, true, true}}, {-1}, false, 1, 2, 0));
    s.insert(make_family_sig({{0, 1, {1}, true, true}, {0, 2, {2, 2}, false, false}}, {-1, 0},
                             false, 1, 2, 0));
    s.insert(make_family_sig({{0, 1, {1}, false, false}, {0, 2, {2}, true, false}}, {-1, 0}, false,
                             1, 2, 0));
    s.insert(make_family_sig(
        {{0, 1, {}, true, true}, {0, 2, {2, 2}, false, false}, {0, 2, {2, 2}, false, false}},
        {-1, 0, 0}, false, 1, 2, 0));
    s.insert(make_family_sig(
        {{0, 1, {}, false, false}, {0, 2, {2}, true, false}, {0, 2, {2, 2}, false, false}},
        {-1, 0, 0}, false, 1, 2, 0));
    return s;
}

std::set<std::string> expected_families_fig3() {
    std::set<std::string> s;
    s.insert(make_family_sig({{1, 2, {2}, true, false}}, {-1}, true, 1, 2, 0));
    s.insert(make_family_sig({{1, 1, {1}, true, true}}, {-1}, false, 1, 2, 0));
    s.insert(make_family_sig({{1, 1, {}, true, true}, {0, 2, {2, 2}, false, false}}, {-1, 0},
                             false, 1, 2, 0));
    s.insert(make_family_sig({{1, 1, {}, false, false}, {0, 2, {2}, true, false}}, {-1, 0}, false,
                             1, 2, 0));
    s.insert(make_family_sig({{0, 1, {1}, true, true}, {1, 2, {2}, false, false}}, {-1, 0}, false,
                             1, 2, 0));
    s.insert(make_family_sig({{0, 1, {1}, false, false}, {1, 2, {}, true, false}}, {-1, 0}, false,
                             1, 2, 0));
    s.insert(make_family_sig(
        {{0, 1, {}, true, true}, {1, 2, {2}, false, false}, {0, 2, {2, 2}, false, false}},
        {-1, 0, 0}, false, 1, 2, 0));
    s.insert(make_family_sig(
        {{0, 1, {}, false, false}, {1, 2, {}, true, false}, {0, 2, {2, 2}, false, false}},
        {-1, 0, 0}, false, 1, 2, 0));
    s.insert(make_family_sig(
        {{0, 1, {}, false, false}, {0, 2, {2}, true, false}, {1, 2, {2}, false, false}},
        {-1, 0, 0}, false, 1, 2, 0));
    return s;
}

std::set<std::string> expected_families_fig4() {
    std::set<std::string> s;
    s.insert(make_family_sig({{2, 2, {}, true, false}}, {-1}, true, 1, 2, 0));
    s.insert(make_family_sig({{2, 1, {}, true, true}}, {-1}, false, 1, 2, 0));
    s.insert(make_family_sig({{1, 1, {}, true, true}, {1, 2, {2}, false, false}}, {-1, 0}, false,
                             1, 2, 0));
    s.insert(make_family_sig({{1, 1, {}, false, false}, {1, 2, {}, true, false}}, {-1, 0}, false,
                             1, 2, 0));
    s.insert(make_family_sig(
        {{0, 1, {}, true, true}, {1, 2, {2}, false, false}, {1, 2, {2}, false, false}}, {-1, 0, 0},
        false, 1, 2, 0));
    s.insert(make_family_sig(
        {{0, 1, {}, false, false}, {1, 2, {}, true, false}, {1, 2, {2}, false, false}}, {-1, 0, 0},
        false, 1, 2, 0));
    return s;
}

std::set<std::string> enumerated_families(int alpha, int beta, int d, int genus, int n_max,
                                          const FamilySpec& spec) {
    std::set<std::string> sigs;
    for (int n = 0; n <= n_max; ++n) {
        if (2 * genus + n == 0) continue;
        for (const auto& tree : enumerate_trees(spec.rank, genus, n + 2, d))
            for (const auto& dec : enumerate_decorations(tree, alpha, beta, spec, d))
                sigs.insert(family_signature(dec));
    }
    return sigs;
}

std::string set_diff_string(const std::set<std::string>& got, const std::set<std::string>& want) {
    std::ostringstream os;
    for (const auto& s : got)
        if (!want.count(s)) os << "unexpected " << s << "; ";
    for (const auto& s : want)
        if (!got.count(s)) os << "missing " << s << "; ";
    return os.str();
}

}  // namespace

SuiteReport verify_kdv(const VerifyOptions& opt) {
    SuiteReport r{"kdv", {}};
    TruncationContext ctx(1, 6, 6);
    DiffPoly u = DiffPoly::var(ctx, 1);
    DiffPoly ux = DiffPoly::var(ctx, 1, 1);
    DiffPoly uxx = DiffPoly::var(ctx, 1, 2);
    DiffPoly uxxxx = DiffPoly::var(ctx, 1, 4);
    auto eps = [&](int e) {
        DiffPoly p(ctx);
        DiffMonomial m;
        m.eps = e;
        p.add_term(m, ParamRational::constant(ctx.num_params(), 1));
        return p;
    };

    check(r, "kdv-P0", kdv_P(0, ctx) == u);
    check(r, "kdv-P1", kdv_P(1, ctx) == u * u * rat(1, 2) + eps(2) * uxx * rat(1, 12));
    DiffPoly P2 = u * u * u * rat(1, 6) +
                  eps(2) * (u * uxx * rat(2, 24) + ux * ux * rat(1, 24)) +
                  eps(4) * uxxxx * rat(1, 240);
    check(r, "kdv-P2", kdv_P(2, ctx) == P2);

    // Assembly over the diagonal rank-1 family against the Lax engine, with
    // the eps rescale by G^1.
    Oracle oracle(opt.corrupt_q_table);
    FamilySpec one = FamilySpec::rank1_trivial();
    TruncationContext ctx1(1, 4, 6);
    for (int d = 0; d <= 2; ++d) {
        DiffPoly assembled = assemble_P(1, 1, d, one, ctx1, oracle, opt.policy);
        DiffPoly expected = kdv_transport(kdv_P(d, ctx1), ctx1, 1, 1);
        check(r, "rank1-assembly-d" + std::to_string(d), assembled == expected);
    }
    return r;
}

SuiteReport verify_oracle(const VerifyOptions& opt) {
    SuiteReport r{"oracle", {}};
    Oracle oracle(opt.corrupt_q_table);

    // Genus-1 value at n=2, zero distinguished multiplicity.
    MultiPoly P2_expected = (msym(Partition{2}, 2) * Rational(3) + msym(Partition{1, 1}, 2) * Rational(4)) *
                            rat(1, 24);
    MultiPoly P2 = oracle.evaluate(unified_query(2));
    check(r, "genus1-P2", P2 == P2_expected, P2 == P2_expected ? "" : P2.to_string());

    // Seed values and the psi-distribution identity.
    {
        LinearForm a1 = unit_form(2, 0), a2 = unit_form(2, 1);
        MultiPoly seed = oracle.genus1_seed(a1, a2);
        check(r, "genus1-seed-(1,0)", eval_multipoly(seed, {rat(1), rat(0)}) == rat(1, 24));
        check(r, "genus1-seed-(1,-1)", eval_multipoly(seed, {rat(1), rat(-1)}) == rat(1, 12));
        LinearForm msum = {rat(-1), rat(-1)};
        MultiPoly via_seed = oracle.genus1_seed(msum, a2) + oracle.genus1_seed(msum, a1);
        check(r, "genus1-seed-vs-P2", via_seed == P2);
    }

    // Genus-1 dilaton recursion.
    {
        bool ok = true;
        for (int n = 2; n <= 6 && ok; ++n) {
            MultiPoly Pn = oracle.evaluate(unified_query(n));
            MultiPoly Pm = oracle.evaluate(unified_query(n - 1));
            ok = set_var_zero(Pn, n) == Pm * Rational(n + 1);
        }
        check(r, "genus1-dilaton", ok);
    }

    // Genus-2 dilaton recursion, symmetry, homogeneity.
    {
        bool ok = true;
        for (int n = 2; n <= 6 && ok; ++n) {
            MultiPoly Qn = oracle.evaluate(q_query(n));
            MultiPoly Qm = oracle.evaluate(q_query(n - 1));
            ok = set_var_zero(Qn, n) == Qm * Rational(n + 2);
        }
        check(r, "genus2-dilaton", ok);
        bool sym = true, hom = true;
        for (int n = 1; n <= 5; ++n) {
            MultiPoly Qn = oracle.evaluate(q_query(n));
            hom = hom && Qn.is_homogeneous(4);
            try {
                to_msym_basis(Qn);
            } catch (const std::invalid_argument&) {
                sym = false;
            }
        }
        check(r, "genus2-symmetric", sym);
        check(r, "genus2-homogeneous-deg4", hom);
        MultiPoly Q1 = oracle.evaluate(q_query(1));
        MultiPoly a14 = MultiPoly::var(1, 0).pow(4);
        check(r, "genus2-Q1", Q1 == a14 * rat(1, 1152));
        // Pins the stored coefficient table at n = 2 (negative-control hook:
        // a corrupted table fails here).
        MultiPoly Q2 = oracle.evaluate(q_query(2));
        MultiPoly Q2_expect = (msym(Partition{4}, 2) * rat(1, 6912) +
                               msym(Partition{2, 2}, 2) * rat(29, 69120) +
                               msym(Partition{3, 1}, 2) * rat(11, 34560)) *
                              Rational(factorial(4));
        check(r, "genus2-Q2-table", Q2 == Q2_expect);
    }

    // Genus-0 against the independent string-equation recursion.
    {
        bool ok = true;
        std::function<void(std::vector<int>&, int, int)> scan = [&](std::vector<int>& k, int pos,
                                                                    int left) {
            if (!ok) return;
            const int m = static_cast<int>(k.size());
            if (pos == m) {
                if (left != 0) return;
                VertexIntegralQuery q;
                q.genus = 0;
                q.nvars = 0;
                // Balanced dummy multiplicities (values are irrelevant in genus 0).
                for (int i = 0; i < m; ++i) q.points.push_back({zero_form(0), k[static_cast<size_t>(i)]});
                Rational got = oracle.genus0(q).is_zero()
                                   ? Rational(0)
                                   : oracle.genus0(q).terms().begin()->second;
                ok = got == genus0_string_oracle(k);
                return;
            }
            for (int v = 0; v <= left; ++v) {
                k[static_cast<size_t>(pos)] = v;
                scan(k, pos + 1, left - v);
            }
        };
        for (int m = 3; m <= 8 && ok; ++m) {
            std::vector<int> k(static_cast<size_t>(m), 0);
            scan(k, 0, m - 3);
        }
        check(r, "genus0-string-recursion", ok);
    }

    // Zero-multiplicity rule.
    {
        VertexIntegralQuery q;
        q.genus = 1;
        q.nvars = 1;
        q.points.push_back({zero_form(1), 0});
        q.points.push_back({zero_form(1), 0});
        check(r, "zero-rule-genus1", oracle.evaluate(q).is_zero());
        VertexIntegralQuery q2;
        q2.genus = 2;
        q2.nvars = 1;
        q2.points.push_back({zero_form(1), 1});
        q2.points.push_back({zero_form(1), 0});
        check(r, "zero-rule-genus2", oracle.evaluate(q2).is_zero());
    }

    // Dimension failure returns zero.
    {
        VertexIntegralQuery q;
        q.genus = 1;
        q.nvars = 1;
        q.points.push_back({unit_form(1, 0), 0});
        LinearForm neg = {rat(-1)};
        q.points.push_back({neg, 0});
        q.points.push_back({zero_form(1), 0});  // psi sum 0 != 1+3-3
        check(r, "dimension-fail-zero", oracle.evaluate(q).is_zero());
    }

    // The diagonal-flow table agrees with the genus-1 value where both apply,
    // and is insensitive to which balanced point is dropped.
    {
        const MultiPoly& t11 = oracle.kdv_integral(1, 1);
        MultiPoly a2 = MultiPoly::var(1, 0).pow(2);
        check(r, "kdv-table-(1,1)", t11 == a2 * rat(1, 12));
        bool ok = true;
        for (auto [g, d] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{1, 3}}) {
            const MultiPoly& I = oracle.kdv_integral(g, d);
            const int n = I.nvars();
            if (n < 1) continue;
            std::vector<LinearForm> images;
            for (int i = 0; i < n - 1; ++i) images.push_back(unit_form(n, i));
            LinearForm last(static_cast<size_t>(n), rat(-1));
            images.push_back(last);
            ok = ok && substitute_linear(I, images, n) == I;
        }
        check(r, "kdv-table-balanced-symmetry", ok);
    }

    // Patterns outside the tables are loud errors, not silent zeros:
    // psi^2 at a point with nonzero multiplicity, dimension satisfied.
    {
        VertexIntegralQuery q;
        q.genus = 1;
        q.nvars = 2;
        QueryPoint p0;
        p0.mult = unit_form(2, 0);
        p0.psi = 2;
        q.points.push_back(p0);
        QueryPoint p1;
        p1.mult = {rat(-1), rat(-1)};
        q.points.push_back(p1);
        q.points.push_back({unit_form(2, 1), 0});
        q.points.push_back({zero_form(2), 0});
        bool threw = false;
        try {
            oracle.evaluate(q);
        } catch (const UnsupportedPattern&) {
            threw = true;
        }
        check(r, "unsupported-pattern-throws", threw);
    }

    algebra_property_checks(r, 200);
    return r;
}

SuiteReport verify_theorem_n2(const VerifyOptions& opt) {
    SuiteReport r{"theorem-n2", {}};
    Oracle oracle(opt.corrupt_q_table);
    FamilySpec spec = FamilySpec::rank2_symbolic();
    TruncationContext ctx6(2, 6, 4);

    // P^2 sector.
    for (int d = 0; d <= 2; ++d) {
        DiffPoly P21 = assemble_P(2, 1, d, spec, ctx6, oracle, opt.policy);
        check(r, "P2_1-vanishes-d" + std::to_string(d), P21.is_zero());
        DiffPoly P22 = assemble_P(2, 2, d, spec, ctx6, oracle, opt.policy);
        TruncationContext kctx(1, ctx6.dmax, ctx6.emax);
        DiffPoly expected = kdv_transport(kdv_P(d, kctx), ctx6, 2, 2);
        check(r, "P2_2-kdv-d" + std::to_string(d), P22 == expected);
    }

    // P^1_{1,0} against the closed forms, at the wider u cutoff.
    {
        TruncationContext ctx8(2, 8, 2);
        DiffPoly P = assemble_P(1, 1, 0, spec, ctx8, oracle, opt.policy);
        DiffPoly G = golden_P110(spec, ctx8);
        check(r, "P1_1_0-golden", P == G);
    }

    // P^1_{2,0} against the sum of listed contributions; eps degree exactly 4.
    DiffPoly P120 = assemble_P(1, 2, 0, spec, ctx6, oracle, opt.policy);
    {
        DiffPoly sum(ctx6);
        for (const auto& t : golden_P120_contributions(spec, ctx6)) sum += t.form;
        check(r, "P1_2_0-contributions", P120 == sum);
        check(r, "P1_2_0-eps-degree-4", P120.max_eps() == 4);
    }

    // Transformed primary flows.
    {
        DiffPoly P110 = assemble_P(1, 1, 0, spec, ctx6, oracle, opt.policy);
        DiffPoly P210 = assemble_P(2, 1, 0, spec, ctx6, oracle, opt.policy);
        DiffPoly P220 = assemble_P(2, 2, 0, spec, ctx6, oracle, opt.policy);
        MiuraMap m = normalizing_miura(spec, ctx6);
        auto expected = normalized_primary_flows(spec, ctx6);
        auto t1 = transform_flows({P110, P210}, m);
        auto t2 = transform_flows({P120, P220}, m);
        check(r, "flow-t1-v1", t1[0] == expected[0][0]);
        check(r, "flow-t1-v2", t1[1] == expected[0][1]);
        check(r, "flow-t2-v1", t2[0] == expected[1][0]);
        check(r, "flow-t2-v2", t2[1] == expected[1][1]);
    }

    // Figure fidelity.
    {
        auto got1 = enumerated_families(1, 1, 0, 0, 5, spec);
        auto g1b = enumerated_families(1, 1, 0, 1, 5, spec);
        got1.insert(g1b.begin(), g1b.end());
        auto want1 = expected_families_fig1();
        check(r, "figure1-families-4", got1 == want1, set_diff_string(got1, want1));

        auto got2 = enumerated_families(1, 2, 0, 0, 5, spec);
        auto want2 = expected_families_fig2();
        check(r, "figure2-families-6", got2 == want2, set_diff_string(got2, want2));

        auto got3 = enumerated_families(1, 2, 0, 1, 5, spec);
        auto want3 = expected_families_fig3();
        check(r, "figure3-families-9", got3 == want3, set_diff_string(got3, want3));

        auto got4 = enumerated_families(1, 2, 0, 2, 5, spec);
        auto want4 = expected_families_fig4();
        check(r, "figure4-families-6", got4 == want4, set_diff_string(got4, want4));

        bool single = true;
        for (int g = 0; g <= 2 && single; ++g)
            for (int n = 0; n <= 4 && single; ++n) {
                if (2 * g + n == 0) continue;
                for (const auto& tree : enumerate_trees(2, g, n + 2, 0))
                    for (const auto& dec : enumerate_decorations(tree, 2, 2, spec, 0))
                        single = single && dec.tree.n_vertices() == 1;
            }
        check(r, "P2-sector-single-vertex-trees", single);
    }
    return r;
}

SuiteReport verify_finiteness(const VerifyOptions& opt) {
    SuiteReport r{"finiteness", {}};
    check(r, "bound-N2-d0", genus_bound(2, 0) == 6);
    check(r, "bound-N3-d1", genus_bound(3, 1) == 16);
    for (int N = 2; N <= 3; ++N)
        for (int d = 0; d <= 1; ++d) {
            LemmaScan s = scan_lemma_trees(N, d);
            std::ostringstream os;
            os << "max=" << s.max_genus << " shapes=" << s.n_shapes;
            check(r, "lemma-scan-N" + std::to_string(N) + "-d" + std::to_string(d),
                  s.max_genus == genus_bound(N, d) && s.extremal_found, os.str());
        }
    // Observed eps degree of the assembled P^1_{2,0} with the genus loop
    // opened to the combinatorial bound.
    {
        Oracle oracle(opt.corrupt_q_table);
        FamilySpec spec = FamilySpec::rank2_symbolic();
        TruncationContext wide(2, 2, 2 * static_cast<int>(genus_bound(2, 0)));
        int eps = observed_max_eps(1, 2, 0, spec, wide, oracle);
        check(r, "observed-eps-degree", eps == 4, "max_eps=" + std::to_string(eps));
    }
    return r;
}

SuiteReport verify_commutativity(const VerifyOptions& opt) {
    SuiteReport r{"commutativity", {}};
    Oracle oracle(opt.corrupt_q_table);
    FamilySpec spec = FamilySpec::rank2_symbolic();
    TruncationContext ctx(2, 5, 4);

    std::vector<DiffPoly> Q1 = {dx(assemble_P(1, 1, 0, spec, ctx, oracle, opt.policy)),
                                dx(assemble_P(2, 1, 0, spec, ctx, oracle, opt.policy))};
    std::vector<DiffPoly> Q2 = {dx(assemble_P(1, 2, 0, spec, ctx, oracle, opt.policy)),
                                dx(assemble_P(2, 2, 0, spec, ctx, oracle, opt.policy))};
    for (const auto& c : check_commutativity(Q1, Q2)) {
        std::ostringstream os;
        os << "residual_terms=" << c.residual_terms << " certified=(u<=" << c.certified_udeg
           << ", eps<=" << c.certified_eps << ")";
        check(r, "t10-t20-on-u" + std::to_string(c.alpha),
              c.zero && c.certified_udeg >= 4 && c.certified_eps >= 4, os.str());
    }
    for (const auto& c : check_commutativity(Q1, Q1))
        check(r, "t10-self-on-u" + std::to_string(c.alpha), c.zero);

    // Rank-1 KdV flows.
    TruncationContext kctx(1, 5, 4);
    std::vector<DiffPoly> k1 = {dx(kdv_P(1, kctx))};
    std::vector<DiffPoly> k2 = {dx(kdv_P(2, kctx))};
    for (const auto& c : check_commutativity(k1, k2))
        check(r, "kdv-t1-t2", c.zero, "residual_terms=" + std::to_string(c.residual_terms));
    return r;
}

std::vector<SuiteReport> verify_all(const VerifyOptions& opt) {
    return {verify_kdv(opt), verify_oracle(opt), verify_theorem_n2(opt), verify_commutativity(opt),
            verify_finiteness(opt)};
}

}  // namespace drh
