#pragma once

#include <stdexcept>
#include <string>

namespace lh {

enum class ErrorCode {
    InvalidConfig,
    NonConvergence,
    SymmetryViolation,
    OutOfStrip,
    BranchFailure,
    InvalidParameters,
    NumericalInstability,
    PoleError,
    InvalidAbscissa,
    NonRealResult,
    NotMartingale,
    NoBrownianComponent,
    DegenerateModel,
    NegativeMSE,
    NoBracket,
    UnsupportedModel,
    TableAccuracy,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace lh
