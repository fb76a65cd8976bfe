#ifndef NONARCH_ERROR_HPP
#define NONARCH_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace nonarch {

/// Machine-readable failure categories. The CLI maps these to exit codes and
/// prints the name verbatim.
enum class ErrorCode {
  ParseError,
  DivisionByZero,
  NotPrime,
  PreconditionViolated,
  SizeGuardExceeded,
  PrecisionExhausted,
  NegativeValuation,
  PrimeMismatch,
  RadiusMismatch,
  NotIntegral,
  HenselConditionFailed,
  InsufficientPrecision,
  NotAResidueRoot,
  ResidueRootNotSimple,
  SingularJacobian,
  DegreeMismatch,
  ResultantBoundViolated,
  ZeroPolynomial,
  NotMonic,
  NotAUnit,
  DominanceFailed,
  ConvergencePrecondition,
  MissingPrimeDivisor,
  NoConvergence,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NegativeValuation: return "NegativeValuation";
    case ErrorCode::PrimeMismatch: return "PrimeMismatch";
    case ErrorCode::RadiusMismatch: return "RadiusMismatch";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::HenselConditionFailed: return "HenselConditionFailed";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::NotAResidueRoot: return "NotAResidueRoot";
    case ErrorCode::ResidueRootNotSimple: return "ResidueRootNotSimple";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::ResultantBoundViolated: return "ResultantBoundViolated";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::DominanceFailed: return "DominanceFailed";
    case ErrorCode::ConvergencePrecondition: return "ConvergencePrecondition";
    case ErrorCode::MissingPrimeDivisor: return "MissingPrimeDivisor";
    case ErrorCode::NoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace nonarch

#endif  // NONARCH_ERROR_HPP
