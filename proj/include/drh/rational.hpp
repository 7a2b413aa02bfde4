#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace drh {

// Exact arithmetic everywhere: all coefficients are GMP rationals.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p" or "p/q".
inline Rational rat_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("rat_from_string: cannot parse '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

inline Integer factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative argument");
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

// (2d+1)!! = 1*3*5*...*(2d+1)
inline Integer double_factorial_odd(int d) {
    Integer f = 1;
    for (int k = 1; k <= 2 * d + 1; k += 2) f *= k;
    return f;
}

// Generalized binomial coefficient a*(a-1)*...*(a-k+1)/k! for rational a.
inline Rational binomial_general(const Rational& a, int k) {
    if (k < 0) return Rational(0);
    Rational num = 1;
    for (int i = 0; i < k; ++i) num *= a - i;
    return num / Rational(factorial(k));
}

inline Integer binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

}  // namespace drh
