#pragma once

#include <stdexcept>
#include <string>

namespace oscint {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroPolynomial : Error {
    ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};

struct InvalidTolerance : Error {
    explicit InvalidTolerance(double tol)
        : Error("tolerance must be positive, got " + std::to_string(tol)) {}
};

struct InvalidRange : Error {
    using Error::Error;
};

struct ToleranceNotMet : Error {
    ToleranceNotMet(double requested, double achieved)
        : Error("adaptive refinement stalled: requested " + std::to_string(requested) +
                ", achieved " + std::to_string(achieved)),
          requested(requested), achieved(achieved) {}
    double requested, achieved;
};

struct NotConverged : Error {
    using Error::Error;
};

struct PreconditionFailed : Error {
    PreconditionFailed(const std::string& what, double where)
        : Error(what + " (violated near t = " + std::to_string(where) + ")"),
          where(where) {}
    double where;
};

struct DegreeTooSmall : Error {
    using Error::Error;
};

struct DegenerateDerivative : Error {
    using Error::Error;
};

struct EmptySet : Error {
    using Error::Error;
};

struct DuplicatePoints : Error {
    using Error::Error;
};

struct IoError : Error {
    IoError(const std::string& what, const std::string& path)
        : Error(what + ": " + path), path(path) {}
    std::string path;
};

struct NotFound : IoError {
    explicit NotFound(const std::string& path) : IoError("file not found", path) {}
};

struct ParseError : IoError {
    ParseError(const std::string& what, const std::string& path, long line)
        : IoError(what + " at line " + std::to_string(line), path), line(line) {}
    long line;
};

} // namespace oscint
