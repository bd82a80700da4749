#include "ymh/error.hpp"

namespace ymh {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::EnergyDriftExceeded: return "EnergyDriftExceeded";
    case ErrorCode::NoCrossings: return "NoCrossings";
    case ErrorCode::DegenerateOrbit: return "DegenerateOrbit";
    case ErrorCode::OffShell: return "OffShell";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::InsufficientData: return "InsufficientData";
    }
    return "Unknown";
}

} // namespace ymh
