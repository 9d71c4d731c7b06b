#include "hlab/error.hpp"

namespace hlab {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::DomainError: return "domain error";
    case ErrorCode::StripViolation: return "strip violation";
    case ErrorCode::ZeroTime: return "zero time";
    case ErrorCode::QuadratureFailure: return "quadrature failure";
    case ErrorCode::BudgetExhausted: return "budget exhausted";
    case ErrorCode::EmptyRegion: return "empty region";
    case ErrorCode::ConfigError: return "configuration error";
    case ErrorCode::IoError: return "i/o error";
    }
    return "unknown error";
}

void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace hlab
