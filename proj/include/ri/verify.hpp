#pragma once

#include <string>
#include <vector>

#include "ri/io_json.hpp"

namespace ri {

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;  // measured worst-case deviation
    double tolerance = 0.0; // 0 means the check is exact
    std::string detail;
};

/// Runs every invariant applicable to the sections present in the document.
/// Exact checks use rational arithmetic when the input allows it.
std::vector<CheckResult> run_verification(const InputDocument& doc);

Json checks_to_json(const std::vector<CheckResult>& checks);
bool all_passed(const std::vector<CheckResult>& checks);

} // namespace ri
