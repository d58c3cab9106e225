#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relmirror {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite entries, out-of-range scalars, malformed instances.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidInput {
 public:
  DimensionMismatch(std::ptrdiff_t expected, std::ptrdiff_t actual)
      : InvalidInput("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                     std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::ptrdiff_t expected() const { return expected_; }
  std::ptrdiff_t actual() const { return actual_; }

 private:
  std::ptrdiff_t expected_;
  std::ptrdiff_t actual_;
};

// Growth coefficients that do not define a reference function.
class InvalidPolynomial : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Root finding or an iteration loop failed to reach its tolerance.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double bracket_lo, double bracket_hi)
      : Error(what), lo_(bracket_lo), hi_(bracket_hi) {}

  double bracket_lo() const { return lo_; }
  double bracket_hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

// A solver loop failed at a given iterate index.
class SolverFailure : public NumericalFailure {
 public:
  SolverFailure(std::size_t iteration, const NumericalFailure& cause)
      : NumericalFailure("iteration " + std::to_string(iteration) + ": " + cause.what(),
                         cause.bracket_lo(), cause.bracket_hi()),
        iteration_(iteration) {}

  std::size_t iteration() const { return iteration_; }

 private:
  std::size_t iteration_;
};

// A sampled pair with x != y produced a zero Bregman distance.
class ReferenceDegeneracy : public Error {
 public:
  using Error::Error;
};

}  // namespace relmirror
