#pragma once

#include <cstdint>
#include <string>

namespace oscint {

struct GlobalConfig {
    double tol = 1e-9;           // default engine tolerance
    int precision_bits = 256;    // floor for extended-precision phase reduction
    std::uint64_t seed = 20260810ULL; // randomized property sweeps
    std::string format = "json"; // json|csv where a choice exists

    void validate() const;
    // Applies OSCINT_TOL / OSCINT_PRECISION / OSCINT_SEED if set.
    static GlobalConfig from_env();
};

} // namespace oscint
