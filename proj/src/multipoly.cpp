#include "drh/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace drh {

void Partition::validate() const {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
}

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(ExpoVec(static_cast<size_t>(nvars), 0), c);
    return p;
}

MultiPoly MultiPoly::var(int nvars, int i) {
    if (i < 0 || i >= nvars) throw std::invalid_argument("MultiPoly::var: index out of range");
    MultiPoly p(nvars);
    ExpoVec e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(i)] = 1;
    p.add_term(e, 1);
    return p;
}

MultiPoly MultiPoly::from_linear(const LinearForm& f) {
    MultiPoly p(static_cast<int>(f.size()));
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        ExpoVec e(f.size(), 0);
        e[i] = 1;
        p.add_term(e, f[i]);
    }
    return p;
}

void MultiPoly::add_term(const ExpoVec& e, const Rational& c) {
    if (e.size() != static_cast<size_t>(nvars_))
        throw std::invalid_argument("MultiPoly::add_term: exponent vector length mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("MultiPoly: nvars mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("MultiPoly: nvars mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("MultiPoly: nvars mismatch");
    MultiPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            MultiPoly::ExpoVec e(ea);
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly MultiPoly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("MultiPoly::pow: negative exponent");
    MultiPoly r = constant(nvars_, 1);
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
}

bool MultiPoly::is_homogeneous(int deg) const {
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int x : e) d += x;
        if (d != deg) return false;
    }
    return true;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_to_string(c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*a" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

MultiPoly msym(const Partition& lambda, int nvars) {
    if (lambda.length() > nvars)
        throw std::invalid_argument("msym: partition longer than variable count");
    MultiPoly p(nvars);
    std::vector<int> e(lambda.parts);
    e.resize(static_cast<size_t>(nvars), 0);
    std::sort(e.begin(), e.end());
    do {
        p.add_term(e, 1);
    } while (std::next_permutation(e.begin(), e.end()));
    return p;
}

Rational coef_extract(const MultiPoly& p, const std::vector<int>& k) {
    if (k.size() != static_cast<size_t>(p.nvars()))
        throw std::invalid_argument("coef_extract: exponent vector length mismatch");
    auto it = p.terms().find(k);
    return it == p.terms().end() ? Rational(0) : it->second;
}

MultiPoly set_var_zero(const MultiPoly& p, int i) {
    if (i < 1 || i > p.nvars()) throw std::invalid_argument("set_var_zero: index out of range");
    MultiPoly r(p.nvars() - 1);
    for (const auto& [e, c] : p.terms()) {
        if (e[static_cast<size_t>(i - 1)] != 0) continue;
        std::vector<int> f;
        f.reserve(e.size() - 1);
        for (size_t j = 0; j < e.size(); ++j)
            if (j != static_cast<size_t>(i - 1)) f.push_back(e[j]);
        r.add_term(f, c);
    }
    return r;
}

MultiPoly substitute_linear(const MultiPoly& p, const std::vector<LinearForm>& images,
                            int target_nvars) {
    if (images.size() != static_cast<size_t>(p.nvars()))
        throw std::invalid_argument("substitute_linear: one image per variable required");
    for (const auto& f : images)
        if (f.size() != static_cast<size_t>(target_nvars))
            throw std::invalid_argument("substitute_linear: image length mismatch");
    MultiPoly r(target_nvars);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly t = MultiPoly::constant(target_nvars, c);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t *= MultiPoly::from_linear(images[i]).pow(e[i]);
        r += t;
    }
    return r;
}

std::vector<std::pair<Partition, Rational>> to_msym_basis(const MultiPoly& p) {
    std::vector<std::pair<Partition, Rational>> out;
    MultiPoly rest = p;
    while (!rest.is_zero()) {
        // Lex-largest exponent vector; for a symmetric polynomial it is
        // weakly decreasing.
        auto it = std::prev(rest.terms().end());
        std::vector<int> e = it->first;
        Rational c = it->second;
        for (size_t i = 0; i + 1 < e.size(); ++i)
            if (e[i] < e[i + 1])
                throw std::invalid_argument("to_msym_basis: polynomial is not symmetric");
        std::vector<int> parts;
        for (int x : e)
            if (x > 0) parts.push_back(x);
        Partition lambda(parts);
        MultiPoly m = msym(lambda, p.nvars());
        rest -= c * m;
        // If subtraction failed to clear the leading term the input cannot be
        // symmetric.
        if (coef_extract(rest, e) != 0)
            throw std::invalid_argument("to_msym_basis: polynomial is not symmetric");
        out.emplace_back(lambda, c);
    }
    return out;
}

std::string msym_string(const MultiPoly& p) {
    try {
        auto expansion = to_msym_basis(p);
        if (expansion.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [lambda, c] : expansion) {
            if (!first) os << " + ";
            first = false;
            os << rat_to_string(c) << "*m(";
            for (size_t i = 0; i < lambda.parts.size(); ++i) {
                if (i) os << ",";
                os << lambda.parts[i];
            }
            os << ")";
        }
        return os.str();
    } catch (const std::invalid_argument&) {
        return p.to_string();
    }
}

}  // namespace drh
