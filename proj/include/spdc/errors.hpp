#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid caller-supplied argument (non-positive counts, negative sigma, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A computation was asked for outside the region where it is defined or
/// validated. Subclasses name the specific failure.
class NumericalDomainError : public Error {
 public:
  using Error::Error;
};

/// Wavelength outside the dispersion model's validity interval.
class RangeError : public NumericalDomainError {
 public:
  using NumericalDomainError::NumericalDomainError;
};

class CalibrationError : public NumericalDomainError {
 public:
  using NumericalDomainError::NumericalDomainError;
};

class NoSolutionError : public NumericalDomainError {
 public:
  using NumericalDomainError::NumericalDomainError;
};

/// Spectral phase was requested from a source that only carries |F|^2.
class PhaseUnavailableError : public NumericalDomainError {
 public:
  using NumericalDomainError::NumericalDomainError;
};

class UnwrapError : public NumericalDomainError {
 public:
  using NumericalDomainError::NumericalDomainError;
};

}  // namespace spdc
