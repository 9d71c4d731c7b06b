#pragma once

#include <stdexcept>
#include <string>

namespace hlab {

enum class ErrorCode {
    InvalidArgument = 1,
    DimensionMismatch,
    DomainError,
    StripViolation,
    ZeroTime,
    QuadratureFailure,
    BudgetExhausted,
    EmptyRegion,
    ConfigError,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Carries the best available estimate when an adaptive integrator or
// series runs out of budget before meeting its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(ErrorCode code, const std::string& what, double best_re, double best_im,
                     double error_estimate)
        : Error(code, what), best_re_(best_re), best_im_(best_im), error_(error_estimate) {}
    double best_re() const noexcept { return best_re_; }
    double best_im() const noexcept { return best_im_; }
    double error_estimate() const noexcept { return error_; }

private:
    double best_re_, best_im_, error_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool cond, ErrorCode code, const char* what) {
    if (!cond) fail(code, what);
}

}  // namespace hlab
