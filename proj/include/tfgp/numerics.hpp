#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tfgp/grid.hpp"

namespace tfgp {

/// Solves a tridiagonal system in place (Thomas algorithm). `lower[0]` and
/// `upper[n-1]` are ignored. Throws SingularOperator when a pivot falls below
/// `pivot_floor` relative to the row scale.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs,
                                      double pivot_floor = 1e-14);

/// Smallest diagonal-dominance margin |d_i| - |l_i| - |u_i| over all rows.
double dominance_margin(std::span<const double> lower, std::span<const double> diag,
                        std::span<const double> upper);

/// Banded matrix in LAPACK general-band storage, solved with partial pivoting.
class BandMatrix {
 public:
  BandMatrix(std::size_t n, int lower_bw, int upper_bw);
  double& at(std::size_t row, std::size_t col);
  std::size_t size() const { return n_; }
  /// Solves A x = rhs; overwrites the factorization. Throws SingularOperator.
  std::vector<double> solve(std::vector<double> rhs);

 private:
  std::size_t n_;
  int kl_, ku_, ldab_;
  std::vector<double> ab_;
};

/// Numerov-consistent first derivative on a uniform grid: fourth-order accurate
/// given exact second-derivative samples; one-sided fourth-order stencils at
/// the two ends.
std::vector<double> compact_first_derivative(const Grid& grid, std::span<const double> values,
                                             std::span<const double> second);

/// Composite Simpson integral of samples on `grid`, split into segments at
/// `breaks` (each must coincide with a node) so that kinks at the breaks do
/// not degrade the order. If `error` is given it receives a Richardson
/// estimate from the half-resolution rule.
double integrate_segments(const Grid& grid, std::span<const double> values,
                          std::span<const double> breaks = {}, double* error = nullptr);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double rms_residual = 0;
};

/// Least-squares line through (x_i, y_i).
LineFit fit_line(std::span<const double> x, std::span<const double> y);
/// Least-squares slope of log|y| against log x.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace tfgp
