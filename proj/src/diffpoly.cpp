#include "drh/diffpoly.hpp"

#include <algorithm>
#include <sstream>

namespace drh {

void DiffMonomial::normalize() {
    std::sort(factors.begin(), factors.end(),
              [](const std::array<int, 3>& a, const std::array<int, 3>& b) {
                  return std::tie(a[0], a[1]) < std::tie(b[0], b[1]);
              });
    std::vector<std::array<int, 3>> merged;
    for (const auto& f : factors) {
        if (f[2] == 0) continue;
        if (!merged.empty() && merged.back()[0] == f[0] && merged.back()[1] == f[1])
            merged.back()[2] += f[2];
        else
            merged.push_back(f);
    }
    factors = std::move(merged);
}

DiffPoly DiffPoly::constant(const TruncationContext& ctx, const ParamRational& c) {
    DiffPoly p(ctx);
    p.add_term(DiffMonomial{}, c);
    return p;
}

DiffPoly DiffPoly::constant(const TruncationContext& ctx, const Rational& c) {
    return constant(ctx, ParamRational::constant(ctx.num_params(), c));
}

DiffPoly DiffPoly::var(const TruncationContext& ctx, int alpha, int d) {
    if (alpha < 1 || alpha > ctx.rank)
        throw std::invalid_argument("DiffPoly::var: variable index out of range");
    if (d < 0) throw std::invalid_argument("DiffPoly::var: negative jet order");
    DiffPoly p(ctx);
    DiffMonomial m;
    m.factors.push_back({alpha, d, 1});
    p.add_term(m, ParamRational::constant(ctx.num_params(), 1));
    return p;
}

void DiffPoly::add_term(DiffMonomial m, const ParamRational& c) {
    if (c.is_zero()) return;
    if (c.num_params() != ctx_.num_params())
        throw ContextMismatch("DiffPoly::add_term: coefficient parameter-space mismatch");
    if (m.eps < 0) throw std::invalid_argument("DiffPoly: negative eps power");
    if (m.eps > ctx_.emax || m.u_degree() > ctx_.dmax) return;
    for (const auto& f : m.factors)
        if (f[0] < 1 || f[0] > ctx_.rank || f[1] < 0)
            throw std::invalid_argument("DiffPoly: malformed factor");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    check_ctx(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    check_ctx(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

DiffPoly operator-(const DiffPoly& a) {
    DiffPoly r(a.ctx_);
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    a.check_ctx(b);
    DiffPoly r(a.ctx_);
    for (const auto& [ma, ca] : a.terms_) {
        int da = ma.u_degree();
        for (const auto& [mb, cb] : b.terms_) {
            if (ma.eps + mb.eps > a.ctx_.emax) continue;
            if (da + mb.u_degree() > a.ctx_.dmax) continue;
            DiffMonomial m;
            m.eps = ma.eps + mb.eps;
            m.factors = ma.factors;
            m.factors.insert(m.factors.end(), mb.factors.begin(), mb.factors.end());
            m.normalize();
            r.add_term(std::move(m), ca * cb);
        }
    }
    return r;
}

DiffPoly& DiffPoly::operator*=(const ParamRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    if (c.is_constant()) {
        Rational v = c.constant_value();
        for (auto& [m, t] : terms_) t *= v;
        return *this;
    }
    DiffPoly r(ctx_);
    for (const auto& [m, t] : terms_) r.add_term(m, t * c);
    return *this = std::move(r);
}

DiffPoly& DiffPoly::operator*=(const Rational& c) {
    return *this *= ParamRational::constant(ctx_.num_params(), c);
}

DiffPoly DiffPoly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("DiffPoly::pow: negative exponent");
    DiffPoly r = constant(ctx_, Rational(1));
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
}

DiffPoly DiffPoly::eps_part(int k) const {
    DiffPoly r(ctx_);
    for (const auto& [m, c] : terms_)
        if (m.eps == k) r.terms_.emplace(m, c);
    return r;
}

int DiffPoly::max_eps() const {
    int e = -1;
    for (const auto& [m, c] : terms_) e = std::max(e, m.eps);
    return e;
}

int DiffPoly::min_u_degree() const {
    int d = ctx_.dmax + 1;
    for (const auto& [m, c] : terms_) d = std::min(d, m.u_degree());
    return d;
}

bool DiffPoly::has_constant_term() const {
    for (const auto& [m, c] : terms_)
        if (m.eps == 0 && m.factors.empty()) return true;
    return false;
}

std::string DiffPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        if (m.eps > 0) {
            os << "*eps";
            if (m.eps > 1) os << "^" << m.eps;
        }
        for (const auto& f : m.factors) {
            os << "*u" << f[0];
            if (f[1] >= 1 && f[1] <= 3)
                os << "_" << std::string(static_cast<size_t>(f[1]), 'x');
            else if (f[1] > 3)
                os << "_" << f[1];
            if (f[2] > 1) os << "^" << f[2];
        }
    }
    return os.str();
}

DiffPoly dx(const DiffPoly& p) {
    DiffPoly r(p.ctx());
    for (const auto& [m, c] : p.terms()) {
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const auto& f = m.factors[i];
            DiffMonomial t;
            t.eps = m.eps;
            t.factors = m.factors;
            if (t.factors[i][2] == 1)
                t.factors.erase(t.factors.begin() + static_cast<long>(i));
            else
                t.factors[i][2] -= 1;
            t.factors.push_back({f[0], f[1] + 1, 1});
            t.normalize();
            r.add_term(std::move(t), c * Rational(f[2]));
        }
    }
    return r;
}

DiffPoly dxk(const DiffPoly& p, int k) {
    DiffPoly r = p;
    for (int i = 0; i < k; ++i) r = dx(r);
    return r;
}

DiffPoly pderiv(const DiffPoly& p, int alpha, int k) {
    DiffPoly r(p.ctx());
    for (const auto& [m, c] : p.terms()) {
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const auto& f = m.factors[i];
            if (f[0] != alpha || f[1] != k) continue;
            DiffMonomial t;
            t.eps = m.eps;
            t.factors = m.factors;
            if (t.factors[i][2] == 1)
                t.factors.erase(t.factors.begin() + static_cast<long>(i));
            else
                t.factors[i][2] -= 1;
            r.add_term(std::move(t), c * Rational(f[2]));
        }
    }
    return r;
}

DiffPoly expand_inverse(const DiffPoly& q, int k) {
    if (k <= 0) throw std::invalid_argument("expand_inverse: exponent must be positive");
    if (q.has_constant_term())
        throw std::invalid_argument("expand_inverse: q has a nonzero constant term");
    const auto& ctx = q.ctx();
    DiffPoly r = DiffPoly::constant(ctx, Rational(1));
    DiffPoly qp = DiffPoly::constant(ctx, Rational(1));
    // Every monomial of q has joint grade u_degree + eps >= 1, so q^i dies
    // beyond i = dmax + emax.
    for (int i = 1; i <= ctx.dmax + ctx.emax; ++i) {
        qp *= q;
        if (qp.is_zero()) break;
        Rational coef = Rational((i % 2 == 0) ? 1 : -1) * Rational(binomial(k + i - 1, i));
        r += qp * coef;
    }
    return r;
}

DiffPoly dx_preimage(const DiffPoly& p) {
    const auto& ctx = p.ctx();
    DiffPoly result(ctx);
    if (p.is_zero()) return result;
    if (p.has_constant_term()) throw std::domain_error("dx_preimage: constant term present");

    // dx preserves (u-degree, eps) and raises diff order by one, so invert
    // slice by slice: collect candidate preimage monomials of matching grade,
    // solve the exact linear system by Gaussian elimination.
    struct SliceKey {
        int eps, udeg, order;
        bool operator<(const SliceKey& o) const {
            return std::tie(eps, udeg, order) < std::tie(o.eps, o.udeg, o.order);
        }
    };
    std::map<SliceKey, DiffPoly> slices;
    for (const auto& [m, c] : p.terms()) {
        SliceKey key{m.eps, m.u_degree(), m.diff_order()};
        auto [it, inserted] = slices.emplace(key, DiffPoly(ctx));
        it->second.add_term(m, c);
    }

    for (const auto& [key, rhs] : slices) {
        if (key.order == 0) throw std::domain_error("dx_preimage: order-zero slice is not exact");
        // Enumerate all monomials of (eps, udeg, order-1): images under dx
        // span the slice containing rhs if rhs is integrable.
        std::vector<DiffMonomial> basis;
        std::vector<std::array<int, 3>> cur;
        // Recursive enumeration of sorted factor lists.
        auto rec = [&](auto&& self, int min_alpha, int min_d, int deg_left, int ord_left) -> void {
            if (deg_left == 0) {
                if (ord_left == 0) {
                    DiffMonomial m;
                    m.eps = key.eps;
                    m.factors = cur;
                    m.normalize();
                    basis.push_back(std::move(m));
                }
                return;
            }
            for (int alpha = min_alpha; alpha <= ctx.rank; ++alpha)
                for (int d = (alpha == min_alpha ? min_d : 0); d <= ord_left; ++d) {
                    cur.push_back({alpha, d, 1});
                    self(self, alpha, d, deg_left - 1, ord_left - d);
                    cur.pop_back();
                }
        };
        rec(rec, 1, 0, key.udeg, key.order - 1);
        std::sort(basis.begin(), basis.end(), [](const DiffMonomial& a, const DiffMonomial& b) {
            return DiffMonomialLess{}(a, b);
        });
        basis.erase(std::unique(basis.begin(), basis.end()), basis.end());

        // Build the dx images and the target-monomial index.
        std::map<DiffMonomial, size_t, DiffMonomialLess> row_index;
        std::vector<DiffPoly> images;
        images.reserve(basis.size());
        for (const auto& b : basis) {
            DiffPoly mono(ctx);
            mono.add_term(b, ParamRational::constant(ctx.num_params(), 1));
            DiffPoly img = dx(mono);
            for (const auto& [m, c] : img.terms()) row_index.emplace(m, row_index.size());
            images.push_back(std::move(img));
        }
        for (const auto& [m, c] : rhs.terms()) row_index.emplace(m, row_index.size());

        const size_t rows = row_index.size(), cols = basis.size();
        // Dense system over the coefficient ring; solved per parameter
        // monomial would be overkill: dx has rational structure constants, so
        // solve once with ParamRational right-hand sides.
        std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(cols, Rational(0)));
        std::vector<ParamRational> b(rows, ParamRational::zero(ctx.num_params()));
        for (size_t j = 0; j < cols; ++j)
            for (const auto& [m, c] : images[j].terms())
                A[row_index[m]][j] = c.constant_value();
        for (const auto& [m, c] : rhs.terms()) b[row_index[m]] = c;

        // Gaussian elimination with exact pivots.
        std::vector<long> pivot_col_of_row(rows, -1);
        size_t r = 0;
        for (size_t col = 0; col < cols && r < rows; ++col) {
            size_t sel = r;
            while (sel < rows && A[sel][col] == 0) ++sel;
            if (sel == rows) continue;
            std::swap(A[sel], A[r]);
            std::swap(b[sel], b[r]);
            Rational inv = Rational(1) / A[r][col];
            for (size_t j = col; j < cols; ++j) A[r][j] *= inv;
            b[r] *= inv;
            for (size_t i = 0; i < rows; ++i) {
                if (i == r || A[i][col] == 0) continue;
                Rational f = A[i][col];
                for (size_t j = col; j < cols; ++j) A[i][j] -= f * A[r][j];
                b[i] -= f * b[r];
            }
            pivot_col_of_row[r] = static_cast<long>(col);
            ++r;
        }
        for (size_t i = r; i < rows; ++i)
            if (!b[i].is_zero())
                throw std::domain_error("dx_preimage: slice is not a total x-derivative");
        std::vector<ParamRational> sol(cols, ParamRational::zero(ctx.num_params()));
        for (size_t i = 0; i < r; ++i) sol[static_cast<size_t>(pivot_col_of_row[i])] = b[i];
        for (size_t j = 0; j < cols; ++j)
            if (!sol[j].is_zero()) result.add_term(basis[j], sol[j]);
    }

    // dx is injective on polynomials without constant term, so re-check.
    if (dx(result) != p) throw std::domain_error("dx_preimage: verification failed");
    return result;
}

MiuraMap MiuraMap::identity(const TruncationContext& c) {
    MiuraMap m(c);
    for (int alpha = 1; alpha <= c.rank; ++alpha) m.images.push_back(DiffPoly::var(c, alpha));
    return m;
}

DiffPoly substitute(const DiffPoly& p, const MiuraMap& m) {
    if (p.ctx() != m.ctx) throw ContextMismatch("substitute: context mismatch");
    if (m.images.size() != static_cast<size_t>(m.ctx.rank))
        throw std::invalid_argument("substitute: map must have one image per variable");
    const auto& ctx = p.ctx();
    // Cache dx^k of each image.
    std::vector<std::vector<DiffPoly>> jets(static_cast<size_t>(ctx.rank));
    auto jet = [&](int alpha, int k) -> const DiffPoly& {
        auto& v = jets[static_cast<size_t>(alpha - 1)];
        if (v.empty()) v.push_back(m.images[static_cast<size_t>(alpha - 1)]);
        while (static_cast<int>(v.size()) <= k) v.push_back(dx(v.back()));
        return v[static_cast<size_t>(k)];
    };
    DiffPoly r(ctx);
    for (const auto& [mono, c] : p.terms()) {
        DiffPoly t(ctx);
        DiffMonomial eps_only;
        eps_only.eps = mono.eps;
        t.add_term(eps_only, c);
        for (const auto& f : mono.factors) t *= jet(f[0], f[1]).pow(f[2]);
        r += t;
    }
    return r;
}

DiffPoly eps_rescale(const DiffPoly& p, int g_param_index) {
    const auto& ctx = p.ctx();
    DiffPoly r(ctx);
    ParamRational g = ParamRational::symbol(ctx.num_params(), g_param_index);
    for (const auto& [m, c] : p.terms()) {
        if (m.eps % 2 != 0)
            throw std::domain_error("eps_rescale: odd eps power");
        r.add_term(m, c * g.pow(m.eps / 2));
    }
    return r;
}

DiffPoly flow_apply(const DiffPoly& F, const std::vector<DiffPoly>& flows) {
    const auto& ctx = F.ctx();
    if (flows.size() != static_cast<size_t>(ctx.rank))
        throw std::invalid_argument("flow_apply: one flow per variable required");
    for (const auto& q : flows) F.check_ctx(q);
    // Jet orders actually appearing in F, per variable.
    std::vector<std::vector<int>> orders(static_cast<size_t>(ctx.rank));
    for (const auto& [m, c] : F.terms())
        for (const auto& f : m.factors) orders[static_cast<size_t>(f[0] - 1)].push_back(f[1]);
    DiffPoly r(ctx);
    for (int alpha = 1; alpha <= ctx.rank; ++alpha) {
        auto& ks = orders[static_cast<size_t>(alpha - 1)];
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        if (ks.empty()) continue;
        DiffPoly q = flows[static_cast<size_t>(alpha - 1)];
        int cur = 0;
        for (int k : ks) {
            for (; cur < k; ++cur) q = dx(q);
            r += pderiv(F, alpha, k) * q;
        }
    }
    return r;
}

MiuraMap invert_miura(const MiuraMap& m) {
    const auto& ctx = m.ctx;
    const int n = ctx.rank;
    if (m.images.size() != static_cast<size_t>(n))
        throw std::invalid_argument("invert_miura: map must have one image per variable");

    // Linear part at eps^0, u-degree 1, jet order 0 must be an invertible
    // matrix of constant rationals.
    std::vector<std::vector<Rational>> A(static_cast<size_t>(n),
                                         std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
    for (int a = 0; a < n; ++a)
        for (const auto& [mono, c] : m.images[static_cast<size_t>(a)].terms()) {
            if (mono.eps != 0 || mono.u_degree() != 1) continue;
            if (mono.factors[0][1] != 0) continue;
            if (!c.is_constant())
                throw std::domain_error("invert_miura: symbolic linear part is not supported");
            A[static_cast<size_t>(a)][static_cast<size_t>(mono.factors[0][0] - 1)] =
                c.constant_value();
        }
    // Invert A exactly.
    std::vector<std::vector<Rational>> inv(static_cast<size_t>(n),
                                           std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
    for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    {
        auto M = A;
        for (int col = 0; col < n; ++col) {
            int sel = col;
            while (sel < n && M[static_cast<size_t>(sel)][static_cast<size_t>(col)] == 0) ++sel;
            if (sel == n) throw std::domain_error("invert_miura: linear part not invertible");
            std::swap(M[static_cast<size_t>(sel)], M[static_cast<size_t>(col)]);
            std::swap(inv[static_cast<size_t>(sel)], inv[static_cast<size_t>(col)]);
            Rational p = Rational(1) / M[static_cast<size_t>(col)][static_cast<size_t>(col)];
            for (int j = 0; j < n; ++j) {
                M[static_cast<size_t>(col)][static_cast<size_t>(j)] *= p;
                inv[static_cast<size_t>(col)][static_cast<size_t>(j)] *= p;
            }
            for (int i = 0; i < n; ++i) {
                if (i == col) continue;
                Rational f = M[static_cast<size_t>(i)][static_cast<size_t>(col)];
                if (f == 0) continue;
                for (int j = 0; j < n; ++j) {
                    M[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                        f * M[static_cast<size_t>(col)][static_cast<size_t>(j)];
                    inv[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                        f * inv[static_cast<size_t>(col)][static_cast<size_t>(j)];
                }
            }
        }
    }

    // Write the map as u-tilde = A u + H(u) with H of joint grade >= 2, and
    // iterate phi <- A^{-1}(id - H(phi)); each pass fixes one more grade.
    std::vector<DiffPoly> H;
    for (int a = 0; a < n; ++a) {
        DiffPoly h = m.images[static_cast<size_t>(a)];
        for (int g = 1; g <= n; ++g) {
            DiffPoly lin = DiffPoly::var(ctx, g);
            h -= lin * A[static_cast<size_t>(a)][static_cast<size_t>(g - 1)];
        }
        for (const auto& [mono, c] : h.terms()) {
            if (mono.eps == 0 && mono.u_degree() + mono.eps < 2)
                throw std::domain_error(
                    "invert_miura: image has eps^0 terms below joint grade 2");
        }
        H.push_back(std::move(h));
    }
    MiuraMap phi = MiuraMap::identity(ctx);
    const int passes = ctx.dmax + ctx.emax + 1;
    for (int pass = 0; pass < passes; ++pass) {
        std::vector<DiffPoly> rhs;
        for (int a = 0; a < n; ++a)
            rhs.push_back(DiffPoly::var(ctx, a + 1) - substitute(H[static_cast<size_t>(a)], phi));
        MiuraMap next(ctx);
        for (int a = 0; a < n; ++a) {
            DiffPoly img(ctx);
            for (int g = 0; g < n; ++g)
                img += rhs[static_cast<size_t>(g)] * inv[static_cast<size_t>(a)][static_cast<size_t>(g)];
            next.images.push_back(std::move(img));
        }
        if (next.images == phi.images) break;
        phi = std::move(next);
    }
    for (int a = 0; a < n; ++a)
        if (substitute(m.images[static_cast<size_t>(a)], phi) != DiffPoly::var(ctx, a + 1))
            throw std::domain_error("invert_miura: iteration did not converge");
    return phi;
}

}  // namespace drh
