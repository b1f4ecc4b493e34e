#pragma once

#include <stdexcept>
#include <string>

namespace hypermat {

// Base of every library error. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scalar function is undefined on part of the spectrum, an argument is
// outside the supported domain, or a branch cut is hit.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition (non-commuting parameters, bad
// shapes, forbidden scalar values).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Eigenvalue/Schur iteration did not converge.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

// Parlett recurrence met a vanishing eigenvalue gap and the scalar function
// offers no derivative information.
class ConfluenceError : public Error {
 public:
  using Error::Error;
};

// Quadrature ladder exhausted before reaching the requested tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

// Random case generation could not satisfy its constraints.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Malformed JSON input; `path` is a JSON pointer to the offending node.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace hypermat
