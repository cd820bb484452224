#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace tfgp {

/// Base class for every failure reported by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, int iterations, double residual)
      : Error(what + " (iterations=" + std::to_string(iterations) +
              ", residual=" + format_residual(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}
  int iterations() const { return iterations_; }
  static std::string format_residual(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", r);
    return buf;
  }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class WindowTooSmall : public Error {
 public:
  using Error::Error;
};
class SingularOperator : public Error {
 public:
  using Error::Error;
};
class MissingPrior : public Error {
 public:
  using Error::Error;
};
class TailTooNoisy : public Error {
 public:
  using Error::Error;
};
class TailBudgetExceeded : public Error {
 public:
  using Error::Error;
};
class ExtrapolationUnstable : public Error {
 public:
  using Error::Error;
};
class ConsistencyFailure : public Error {
 public:
  using Error::Error;
};
class NegativeProfile : public Error {
 public:
  using Error::Error;
};
class GridMismatch : public Error {
 public:
  using Error::Error;
};
class QuadratureBudget : public Error {
 public:
  using Error::Error;
};
class CaseMismatch : public Error {
 public:
  using Error::Error;
};
class SolverFailure : public Error {
 public:
  using Error::Error;
};
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace tfgp
