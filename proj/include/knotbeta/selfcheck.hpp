#pragma once

#include <string>
#include <vector>

#include "knotbeta/knot_io.hpp"

namespace knotbeta {

enum class CheckStatus { Pass, Fail, Skip };

struct CheckResult {
    std::string id;
    std::string name;
    CheckStatus status = CheckStatus::Fail;
    std::string detail;   // measured values, thresholds, skip reasons
    double seconds = 0.0;
};

/// The full oracle suite. Every tolerance is pinned here; the run config only
/// carries resolution overrides (epsilon, order, samples). Checks whose
/// preconditions the overrides violate are reported as Skip with the reason.
std::vector<CheckResult> run_selfcheck(const RunConfig& cfg);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace knotbeta
