#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "drh/param.hpp"

namespace drh {

class ContextMismatch : public std::invalid_argument {
public:
    explicit ContextMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Finite surrogate for the power-series ring: N dependent variables,
/// total u-degree cutoff dmax, epsilon-power cutoff emax. Two polynomials
/// combine only when their contexts agree.
struct TruncationContext {
    int rank = 1;
    int dmax = 0;
    int emax = 0;

    TruncationContext() = default;
    TruncationContext(int rank_, int dmax_, int emax_) : rank(rank_), dmax(dmax_), emax(emax_) {
        if (rank < 1 || dmax < 0 || emax < 0)
            throw std::invalid_argument("TruncationContext: invalid bounds");
    }

    bool operator==(const TruncationContext& o) const {
        return rank == o.rank && dmax == o.dmax && emax == o.emax;
    }
    bool operator!=(const TruncationContext& o) const { return !(*this == o); }

    int num_params() const { return rank + 1; }
};

/// Monomial in the jet variables: eps^{epsPower} * prod u^alpha_d^exp with
/// factors sorted by (alpha, d), alpha in 1..rank, d >= 0, exp >= 1.
struct DiffMonomial {
    int eps = 0;
    std::vector<std::array<int, 3>> factors;  // (alpha, d, exp)

    int u_degree() const {
        int s = 0;
        for (const auto& f : factors) s += f[2];
        return s;
    }
    int diff_order() const {
        int s = 0;
        for (const auto& f : factors) s += f[1] * f[2];
        return s;
    }
    int max_jet_order() const {
        int m = -1;
        for (const auto& f : factors)
            if (f[1] > m) m = f[1];
        return m;
    }

    void normalize();  // sort and merge factors

    bool operator==(const DiffMonomial& o) const { return eps == o.eps && factors == o.factors; }
};

/// Canonical monomial order: (epsPower, total u-degree, lex on the sorted
/// factor triples). Gives deterministic serialization and diffing.
struct DiffMonomialLess {
    bool operator()(const DiffMonomial& a, const DiffMonomial& b) const {
        if (a.eps != b.eps) return a.eps < b.eps;
        int da = a.u_degree(), db = b.u_degree();
        if (da != db) return da < db;
        return a.factors < b.factors;
    }
};

/// Truncated element of the ring of differential polynomials with
/// ParamRational coefficients. Immutable in spirit: operations return new
/// values, so sharing across threads is safe.
class DiffPoly {
public:
    using TermMap = std::map<DiffMonomial, ParamRational, DiffMonomialLess>;

    explicit DiffPoly(const TruncationContext& ctx) : ctx_(ctx) {}

    static DiffPoly zero(const TruncationContext& ctx) { return DiffPoly(ctx); }
    static DiffPoly constant(const TruncationContext& ctx, const ParamRational& c);
    static DiffPoly constant(const TruncationContext& ctx, const Rational& c);
    /// u^alpha_d (alpha is 1-based).
    static DiffPoly var(const TruncationContext& ctx, int alpha, int d = 0);

    const TruncationContext& ctx() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    /// Adds c * m, enforcing the cutoffs (terms beyond them are dropped).
    void add_term(DiffMonomial m, const ParamRational& c);

    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator-(const DiffPoly& a);
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }
    DiffPoly& operator*=(const ParamRational& c);
    DiffPoly& operator*=(const Rational& c);
    friend DiffPoly operator*(DiffPoly a, const ParamRational& c) { return a *= c; }
    friend DiffPoly operator*(const ParamRational& c, DiffPoly a) { return a *= c; }
    friend DiffPoly operator*(DiffPoly a, const Rational& c) { return a *= c; }
    friend DiffPoly operator*(const Rational& c, DiffPoly a) { return a *= c; }
    DiffPoly pow(int k) const;

    bool operator==(const DiffPoly& o) const { return ctx_ == o.ctx_ && terms_ == o.terms_; }
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }

    /// The eps^k part (as a polynomial still carrying the eps power).
    DiffPoly eps_part(int k) const;
    int max_eps() const;      // -1 for zero
    int min_u_degree() const; // large value for zero
    bool has_constant_term() const;

    void check_ctx(const DiffPoly& o) const {
        if (ctx_ != o.ctx_) throw ContextMismatch("DiffPoly: truncation context mismatch");
    }

    std::string to_string() const;

private:
    TruncationContext ctx_;
    TermMap terms_;
};

/// The derivation d/dx = sum u^alpha_{n+1} d/du^alpha_n.
DiffPoly dx(const DiffPoly& p);
DiffPoly dxk(const DiffPoly& p, int k);

/// Formal partial derivative d/du^alpha_k.
DiffPoly pderiv(const DiffPoly& p, int alpha, int k);

/// Truncated expansion of (1+q)^{-k}; q must have zero constant term.
DiffPoly expand_inverse(const DiffPoly& q, int k);

/// Unique preimage of p under d/dx on differential polynomials without
/// constant term; throws std::domain_error when p is not a total x-derivative.
DiffPoly dx_preimage(const DiffPoly& p);

/// Change of dependent variables: entry alpha-1 gives the image of u^alpha.
struct MiuraMap {
    TruncationContext ctx;
    std::vector<DiffPoly> images;

    explicit MiuraMap(const TruncationContext& c) : ctx(c) {}
    static MiuraMap identity(const TruncationContext& c);
};

/// Substitutes u^gamma_k -> dx^k(images[gamma]) in every monomial.
DiffPoly substitute(const DiffPoly& p, const MiuraMap& m);

/// eps^{2g} -> (G^{g_param_index})^g eps^{2g}; odd eps powers are rejected.
DiffPoly eps_rescale(const DiffPoly& p, int g_param_index);

/// Evolutionary derivative of F along the flows Q^gamma = du^gamma/dt:
/// sum_{gamma,k} dF/du^gamma_k * dx^k(Q^gamma).
DiffPoly flow_apply(const DiffPoly& F, const std::vector<DiffPoly>& flows);

/// Order-by-order inverse in the joint (u-degree, eps) grading. The linear
/// part must be an invertible matrix of constant rationals.
MiuraMap invert_miura(const MiuraMap& m);

}  // namespace drh
