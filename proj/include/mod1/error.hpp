// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mod1 {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two tables that must share a truncation do not.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A computed quantity violates a structural identity it must satisfy.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// The operation does not apply to this kind of input.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A truncation window is too small to certify the requested accuracy.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The input violates a hypothesis the result depends on.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment or family description.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature gave up before reaching its tolerance.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double error_estimate)
      : Error(what), error_estimate_(error_estimate) {}

  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

}  // namespace mod1
