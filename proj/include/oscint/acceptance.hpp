#pragma once

// The acceptance suite: one entry per criterion, each returning pass/fail with
// a short detail line. Run by the dedicated test binary and by `selftest`.

#include "oscint/config.hpp"

#include <string>
#include <vector>

namespace oscint {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double runtime_ms = 0;
};

std::vector<CriterionResult> run_acceptance(const GlobalConfig& cfg);

// prints one line per criterion; returns the number of failures
int report_acceptance(const std::vector<CriterionResult>& results);

} // namespace oscint
