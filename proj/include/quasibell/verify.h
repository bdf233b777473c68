#pragma once

#include <functional>
#include <string>
#include <vector>

namespace quasibell {

struct CheckResult {
    std::string name;
    bool passed;
    /// Largest observed deviation (or smallest margin, for lower bounds).
    double worst;
    double tolerance;
    /// Parameters of the worst (or first failing) case.
    std::string detail;
};

struct VerificationSuite {
    std::string name;
    std::function<CheckResult()> run;
};

/// Every invariant suite exposed by the `verify` subcommand, in run order.
std::vector<VerificationSuite> verification_suites();

/// Runs every suite. `on_result` is called after each one finishes.
std::vector<CheckResult> run_verification(const std::function<void(const CheckResult &)> &on_result = {});

}  // namespace quasibell
