#pragma once

#include <stdexcept>
#include <string>

namespace ymh {

// Numeric values are part of the C ABI (see ymh.h); do not renumber.
enum class ErrorCode : int {
    InvalidArgument = 1,
    NonFiniteState = 2,
    EnergyDriftExceeded = 3,
    NoCrossings = 4,
    DegenerateOrbit = 5,
    OffShell = 6,
    DimensionOverflow = 7,
    ConvergenceFailure = 8,
    NoConvergence = 9,
    DegenerateFit = 10,
    InsufficientData = 11,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace ymh
