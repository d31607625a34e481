#pragma once

#include <stdexcept>
#include <string>

namespace gspnorm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of the formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation at a pole of a Gamma, zeta or Euler factor.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Quadrature or series failed to reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last, double previous)
      : Error(what), last_(last), previous_(previous) {}
  double last() const { return last_; }
  double previous() const { return previous_; }

 private:
  double last_;
  double previous_;
};

}  // namespace gspnorm
