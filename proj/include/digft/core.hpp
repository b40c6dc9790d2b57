#pragma once

// Shared scalar/matrix aliases and the exception hierarchy used across digft.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace digft {

using Complex = std::complex<double>;
using Index = Eigen::Index;

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or unreadable input data (files, matrices handed to constructors).
class InputError : public Error {
 public:
  using Error::Error;
};

class IoError : public InputError {
 public:
  using InputError::InputError;
};

/// Malformed text; carries the 1-based line number when known (0 otherwise).
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InputError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : ParseError(what, 0) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

class SelfLoopError : public InputError {
 public:
  SelfLoopError(Index vertex, std::size_t line = 0)
      : InputError((line == 0 ? std::string() : "line " + std::to_string(line) + ": ") +
                   "self-loop at vertex " + std::to_string(vertex)),
        vertex_(vertex) {}

  Index vertex() const noexcept { return vertex_; }

 private:
  Index vertex_;
};

/// A graph or signal whose weight/value class does not admit the requested measure.
class ClassError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace digft
