#pragma once

#include <map>
#include <string>
#include <vector>

#include "drh/rational.hpp"

namespace drh {

/// A partition: weakly decreasing positive integers.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    Partition(std::initializer_list<int> p) : parts(p) { validate(); }
    explicit Partition(std::vector<int> p) : parts(std::move(p)) { validate(); }

    void validate() const;
    int length() const { return static_cast<int>(parts.size()); }
    int weight() const {
        int w = 0;
        for (int p : parts) w += p;
        return w;
    }
    bool operator==(const Partition& o) const { return parts == o.parts; }
    bool operator<(const Partition& o) const { return parts < o.parts; }
};

/// Homogeneous linear form in the multiplicity symbols a_1..a_n
/// (coefficient vector of length n).
using LinearForm = std::vector<Rational>;

inline LinearForm zero_form(int nvars) { return LinearForm(static_cast<size_t>(nvars), Rational(0)); }
inline LinearForm unit_form(int nvars, int i) {
    LinearForm f = zero_form(nvars);
    f[static_cast<size_t>(i)] = 1;
    return f;
}
inline bool form_is_zero(const LinearForm& f) {
    for (const auto& c : f)
        if (c != 0) return false;
    return true;
}

/// Exact polynomial in the multiplicity symbols a_1..a_nvars over Q.
/// Dense exponent vectors of fixed length nvars; no zero coefficients stored.
class MultiPoly {
public:
    using ExpoVec = std::vector<int>;
    using TermMap = std::map<ExpoVec, Rational>;

    explicit MultiPoly(int nvars) : nvars_(nvars) {}

    static MultiPoly zero(int nvars) { return MultiPoly(nvars); }
    static MultiPoly constant(int nvars, const Rational& c);
    static MultiPoly var(int nvars, int i);
    static MultiPoly from_linear(const LinearForm& f);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const ExpoVec& e, const Rational& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    MultiPoly& operator*=(const Rational& c);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    MultiPoly pow(int k) const;

    bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// Total degree of every term equals deg (vacuously true for 0).
    bool is_homogeneous(int deg) const;

    std::string to_string() const;

private:
    int nvars_;
    TermMap terms_;
};

/// Monomial symmetric function m_lambda(a_1..a_n): the sum of all distinct
/// monomials whose exponent multiset is lambda.
MultiPoly msym(const Partition& lambda, int nvars);

/// Exact coefficient of a_1^{k_1}...a_n^{k_n}.
Rational coef_extract(const MultiPoly& p, const std::vector<int>& k);

/// Substitutes a_i = 0 and drops the variable (i is 1-based).
MultiPoly set_var_zero(const MultiPoly& p, int i);

/// Exact composition p(L_1,...,L_nvars) where each image L_i is a linear form
/// over target_nvars symbols.
MultiPoly substitute_linear(const MultiPoly& p, const std::vector<LinearForm>& images,
                            int target_nvars);

/// Expansion in the monomial symmetric basis by repeated leading-term
/// subtraction; throws std::invalid_argument if p is not symmetric.
std::vector<std::pair<Partition, Rational>> to_msym_basis(const MultiPoly& p);

/// Debug form: the m_lambda expansion when symmetric, raw terms otherwise.
std::string msym_string(const MultiPoly& p);

}  // namespace drh
