#pragma once

#include <string>
#include <vector>

#include "drh/hierarchy.hpp"
#include "drh/jsonio.hpp"

namespace drh {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string residual;  // diagnostic payload for failures / sizes
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

json to_json(const SuiteReport& r);

struct VerifyOptions {
    bool corrupt_q_table = false;  // negative-control hook
    ExecPolicy policy = ExecPolicy::Parallel;
};

/// Independent genus-0 intersection-number oracle: string-equation recursion
/// on the psi exponent vector (one entry per marked point).
Rational genus0_string_oracle(std::vector<int> exps);

SuiteReport verify_kdv(const VerifyOptions& opt = {});
SuiteReport verify_oracle(const VerifyOptions& opt = {});
SuiteReport verify_theorem_n2(const VerifyOptions& opt = {});
SuiteReport verify_finiteness(const VerifyOptions& opt = {});
SuiteReport verify_commutativity(const VerifyOptions& opt = {});
std::vector<SuiteReport> verify_all(const VerifyOptions& opt = {});

}  // namespace drh
