#ifndef RHLAB_ERRORS_HPP
#define RHLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rhlab {

enum class ErrorCode {
  PointExcluded,
  NonFiniteValue,
  SingularMetric,
  PreconditionViolated,
  SignViolation,
  CriticalPoint,
  NonconstantScalar,
  NotAlmostHermitian,
  UnknownEntry,
  BadParams,
  IncompatiblePair,
  NonPositiveWarp,
  CaseMismatch,
  ZeroDivision,
  SignMismatch,
  RadicandNegative,
  StepUnderflow,
  MonotonicityViolated,
  ZeroCrossing,
  ZeroSymmetricPart,
  DomainExhausted,
  ConfigError,
  IoError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rhlab

#endif
