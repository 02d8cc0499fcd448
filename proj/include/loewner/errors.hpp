#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace loewner {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A rational map was evaluated at (or numerically at) one of its poles.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an operation (negative time, point off the disk, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input data violates a type invariant (non-positive weight, coincident atoms, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Geometric constraints that cannot be met simultaneously.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

// A solved construction lands outside its admissible set (e.g. beta <= 0).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// ODE integration could not continue. Carries the last accepted state.
class IntegrationFailure : public Error {
 public:
  IntegrationFailure(const std::string& what, double t, std::complex<double> w)
      : Error(what), t_(t), w_(w) {}

  double t() const noexcept { return t_; }
  std::complex<double> w() const noexcept { return w_; }

 private:
  double t_;
  std::complex<double> w_;
};

}  // namespace loewner
