// Dedicated acceptance binary: one pass/fail line per criterion, nonzero exit
// on any failure. Also reachable as `oscint selftest`.

#include "oscint/acceptance.hpp"

int main() {
    oscint::GlobalConfig cfg = oscint::GlobalConfig::from_env();
    auto results = oscint::run_acceptance(cfg);
    return oscint::report_acceptance(results) == 0 ? 0 : 1;
}
