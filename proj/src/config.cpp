#include "oscint/config.hpp"

#include "oscint/errors.hpp"

#include <cstdlib>

namespace oscint {

void GlobalConfig::validate() const {
    if (!(tol > 0)) throw InvalidTolerance(tol);
    if (precision_bits < 64) throw Error("precision must be at least 64 bits");
    if (format != "json" && format != "csv") throw Error("format must be json or csv");
}

GlobalConfig GlobalConfig::from_env() {
    GlobalConfig cfg;
    if (const char* s = std::getenv("OSCINT_TOL")) cfg.tol = std::strtod(s, nullptr);
    if (const char* s = std::getenv("OSCINT_PRECISION")) cfg.precision_bits = std::atoi(s);
    if (const char* s = std::getenv("OSCINT_SEED")) cfg.seed = std::strtoull(s, nullptr, 10);
    cfg.validate();
    return cfg;
}

} // namespace oscint
