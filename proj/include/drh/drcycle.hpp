#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "drh/multipoly.hpp"

namespace drh {

/// One marked point of a vertex integral: a multiplicity (homogeneous linear
/// form in the global a-symbols) and a psi exponent.
struct QueryPoint {
    LinearForm mult;
    int psi = 0;
};

/// A vertex integral against lambda_g and a psi monomial over the cycle with
/// the given ramification data. Multiplicities must sum to zero.
struct VertexIntegralQuery {
    int genus = 0;
    int nvars = 0;
    std::vector<QueryPoint> points;

    std::string describe() const;
};

class UnsupportedPattern : public std::runtime_error {
public:
    explicit UnsupportedPattern(const VertexIntegralQuery& q)
        : std::runtime_error("unsupported vertex integral pattern: " + q.describe()) {}
};

/// Exact values of the vertex integrals arising from nilpotent rank-2
/// families (genus 0, 1, 2) plus the diagonal-flow pattern of arbitrary d,
/// whose generating function is the KdV hierarchy. Pure table lookups and
/// polynomial algebra; safe to share across threads.
class Oracle {
public:
    explicit Oracle(bool corrupt_q_table_for_tests = false);

    /// Dispatcher: zero on dimension failure, the zero-multiplicity rule,
    /// then the genus-specific tables; throws UnsupportedPattern otherwise.
    MultiPoly evaluate(const VertexIntegralQuery& q) const;

    /// (m-3)!/prod k_i! as a constant polynomial; zero on dimension failure.
    MultiPoly genus0(const VertexIntegralQuery& q) const;

    /// Genus 1, psi^1 on all but two points: the degree-2 symmetric value in
    /// the psi-point multiplicities with the distinguished psi-free one.
    MultiPoly genus1_unified(const VertexIntegralQuery& q) const;

    /// Genus 1, three points, psi^1 on exactly one: (b1^2+b2^2)/24 in the two
    /// psi-free multiplicities.
    MultiPoly genus1_seed(const LinearForm& b1, const LinearForm& b2) const;

    /// Genus 2, psi^1 on all but one point: the degree-4 symmetric value.
    MultiPoly genus2_Q(const VertexIntegralQuery& q) const;

    /// Zero for g >= 1 when every multiplicity form vanishes identically.
    bool zero_multiplicity_applies(const VertexIntegralQuery& q) const;

    bool dimension_ok(const VertexIntegralQuery& q) const;

    /// The integral with psi^d at a zero-multiplicity point and no other psi,
    /// as a symmetric polynomial in n = d+1-g of the remaining multiplicities;
    /// read off from the Lax-engine flow of the same d.
    const MultiPoly& kdv_integral(int g, int d) const;

    /// Pre-builds kdv_integral entries so concurrent evaluation never writes.
    void warm_kdv_tables(int max_genus, int d) const;

private:
    MultiPoly q_value(int n) const;        // genus-2 table polynomial in n vars
    MultiPoly unified_value(int n) const;  // genus-1 table in n+1 vars (last = b)

    std::vector<Rational> q_coefs_;  // coefficients of m4, m22, m31, m211, m1111
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, MultiPoly> kdv_cache_;
};

}  // namespace drh
