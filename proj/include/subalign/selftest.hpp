#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subalign {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the full invariant suite (operator identities, width monotonicity,
/// containments, second-order inequality, grid-span law, width/sparsity
/// requirements on generated schemes, closed-form spot values, sweep bound
/// consistency, grid witnesses, small-diversity infeasibility). One result per
/// criterion; `out`, when given, receives a pass/fail line as each finishes.
std::vector<CriterionResult> run_selftest(std::ostream* out = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace subalign
