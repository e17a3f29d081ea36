#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jetstress {

enum class Arithmetic { rational, floating };

struct CheckOptions {
    int trials = 10;
    std::uint64_t seed = 1;
    int max_dim = 0;  ///< 0: suite default (5 for exterior, 3 otherwise)
    int max_order = 3;
    Arithmetic mode = Arithmetic::rational;
    double tol = 1e-10;
};

/// One identity run over randomized cases.
struct CheckResult {
    std::string suite;
    std::string label;      ///< short identity tag, e.g. Tr_St_Dens_vs_St_Dens
    std::string statement;  ///< the identity in plain text
    int cases = 0;
    bool pass = true;
    std::string max_residual;
};

const std::vector<std::string>& check_suite_names();
bool is_check_suite(const std::string& name);

/// Runs one suite (or every suite for "all"); deterministic in the options.
std::vector<CheckResult> run_checks(const std::string& suite, const CheckOptions& options);

/// Aligned plain-text table, one line per identity, then a summary line.
std::string format_check_report(const std::vector<CheckResult>& results, const CheckOptions& options);

}  // namespace jetstress
