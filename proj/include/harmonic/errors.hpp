#pragma once

#include <stdexcept>
#include <string>

namespace harmonic {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// Requested enclosure width not reachable at the working precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class CertificationError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public CertificationError {
 public:
  using CertificationError::CertificationError;
};

// Crosscheck identity violated; indicates a bug or a tampered certificate.
class MismatchError : public CertificationError {
 public:
  using CertificationError::CertificationError;
};

class DuplicateElementError : public CertificationError {
 public:
  using CertificationError::CertificationError;
};

// Threshold comparison straddles the enclosure by more than the decision
// margin. Recoverable by raising the precision.
class UndecidableThresholdError : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class TargetOutsideBoxError : public InputError {
 public:
  using InputError::InputError;
};

class ConfigInvalidError : public InputError {
 public:
  using InputError::InputError;
};

// Wraps a failure of one pipeline stage so callers can name the stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what, int exit_code)
      : Error(stage + ": " + what), stage_(std::move(stage)), exit_code_(exit_code) {}

  const std::string& stage() const noexcept { return stage_; }
  int exit_code() const noexcept { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

}  // namespace harmonic
