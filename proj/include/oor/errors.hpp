#pragma once

#include <stdexcept>
#include <string>

namespace oor {

// Base for all domain errors. `kind()` is stable and machine-readable;
// the CLI maps it into error JSON and exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define OOR_DEFINE_ERROR(NAME)                                              \
    class NAME : public Error {                                             \
    public:                                                                 \
        explicit NAME(const std::string& message) : Error(#NAME, message) {} \
    }

OOR_DEFINE_ERROR(CoverageError);
OOR_DEFINE_ERROR(DegenerateSpectrumError);
OOR_DEFINE_ERROR(GridMismatchError);
OOR_DEFINE_ERROR(RangeError);
OOR_DEFINE_ERROR(ConvergenceError);
OOR_DEFINE_ERROR(RankError);
OOR_DEFINE_ERROR(DimensionError);
OOR_DEFINE_ERROR(ParseError);
OOR_DEFINE_ERROR(ChecksumError);
OOR_DEFINE_ERROR(RoleError);
OOR_DEFINE_ERROR(FitError);
OOR_DEFINE_ERROR(InvalidArgumentError);

#undef OOR_DEFINE_ERROR

} // namespace oor
