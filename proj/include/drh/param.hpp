#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drh/rational.hpp"

namespace drh {

/// Sparse polynomial over Q in the formal parameters of a rank-N family:
/// parameter 0 is xi (the R-matrix entry scale), parameters 1..N are G^1..G^N.
/// Exponent vectors have fixed length N+1; zero coefficients are never stored.
class ParamRational {
public:
    using ExpoVec = std::vector<int>;
    using TermMap = std::map<ExpoVec, Rational>;

    explicit ParamRational(int num_params) : num_params_(num_params) {}

    static ParamRational zero(int num_params) { return ParamRational(num_params); }

    static ParamRational constant(int num_params, const Rational& c) {
        ParamRational p(num_params);
        if (c != 0) p.terms_[ExpoVec(static_cast<size_t>(num_params), 0)] = c;
        return p;
    }

    /// index 0 = xi, index i>=1 = G^i.
    static ParamRational symbol(int num_params, int index) {
        if (index < 0 || index >= num_params)
            throw std::invalid_argument("ParamRational::symbol: index out of range");
        ParamRational p(num_params);
        ExpoVec e(static_cast<size_t>(num_params), 0);
        e[static_cast<size_t>(index)] = 1;
        p.terms_[e] = 1;
        return p;
    }

    int num_params() const { return num_params_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        for (int e : terms_.begin()->first)
            if (e != 0) return false;
        return true;
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("ParamRational: not a constant");
        return terms_.begin()->second;
    }

    ParamRational& operator+=(const ParamRational& o) {
        check_params(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    ParamRational& operator-=(const ParamRational& o) {
        check_params(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend ParamRational operator+(ParamRational a, const ParamRational& b) { return a += b; }
    friend ParamRational operator-(ParamRational a, const ParamRational& b) { return a -= b; }

    friend ParamRational operator-(const ParamRational& a) {
        ParamRational r(a.num_params_);
        for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
        return r;
    }

    friend ParamRational operator*(const ParamRational& a, const ParamRational& b) {
        a.check_params(b);
        ParamRational r(a.num_params_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                ExpoVec e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    ParamRational& operator*=(const ParamRational& o) { return *this = *this * o; }

    ParamRational& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }

    friend ParamRational operator*(ParamRational a, const Rational& c) { return a *= c; }
    friend ParamRational operator*(const Rational& c, ParamRational a) { return a *= c; }

    ParamRational pow(int k) const {
        if (k < 0) throw std::invalid_argument("ParamRational::pow: negative exponent");
        ParamRational r = constant(num_params_, 1);
        for (int i = 0; i < k; ++i) r *= *this;
        return r;
    }

    bool operator==(const ParamRational& o) const {
        return num_params_ == o.num_params_ && terms_ == o.terms_;
    }
    bool operator!=(const ParamRational& o) const { return !(*this == o); }

    /// Substitutes exact rational values for a subset of the parameters
    /// (std::nullopt keeps the parameter symbolic).
    ParamRational evaluate(const std::vector<std::optional<Rational>>& values) const {
        if (values.size() != static_cast<size_t>(num_params_))
            throw std::invalid_argument("ParamRational::evaluate: wrong value count");
        ParamRational r(num_params_);
        for (const auto& [e, c] : terms_) {
            Rational coef = c;
            ExpoVec rest(e);
            for (size_t i = 0; i < e.size(); ++i) {
                if (!values[i]) continue;
                for (int k = 0; k < e[i]; ++k) coef *= *values[i];
                rest[i] = 0;
            }
            r.add_term(rest, coef);
        }
        return r;
    }

    std::string to_string() const;

private:
    void check_params(const ParamRational& o) const {
        if (num_params_ != o.num_params_)
            throw std::invalid_argument("ParamRational: parameter-space mismatch");
    }

    void add_term(const ExpoVec& e, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int num_params_;
    TermMap terms_;
};

}  // namespace drh
