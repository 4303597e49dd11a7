#pragma once

#include <stdexcept>
#include <string>

namespace robinbif {

// Base of every error thrown by the toolkit. The CLI maps ValidationError
// subclasses to exit code 1 and NumericalError subclasses to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Parameter outside the admissible range (e.g. mu = 1 where h1 vanishes).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A homotopy function returned NaN/inf.
class EvaluationError : public ValidationError {
 public:
  EvaluationError(const std::string& what, double mu) : ValidationError(what), mu_(mu) {}
  double mu() const { return mu_; }

 private:
  double mu_;
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedGridError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RootIsolationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CurveError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Newton divergence or eigensolver iteration limit.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double last_residual = 0.0)
      : NumericalError(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

// Continuation step size fell below the minimum.
class StallError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Normal form degenerates (c = 0, c1^2 = c2^2, resonant denominators...).
class DegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Supplied kernel vectors are not a kernel of the assembled linearization.
class KernelMismatchError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace robinbif
