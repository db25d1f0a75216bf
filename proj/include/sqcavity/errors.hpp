#pragma once

#include <stdexcept>
#include <string>

namespace sqcavity {

// Rejected inputs: bad parameters, malformed configs, out-of-range grids.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Anything that goes wrong while integrating or evaluating observables.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Excited population grew past the guard fraction of rho11(0); the
// semiclassical field equation is no longer trustworthy.
class DispersiveRegimeViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepSizeUnderflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Overlap exponent |beta - beta~|^2 / 2 too large to exponentiate.
class AnsatzBreakdown : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoBracket : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sqcavity
