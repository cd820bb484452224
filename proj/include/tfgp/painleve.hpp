#pragma once

#include <cstddef>
#include <vector>

#include "tfgp/grid.hpp"
#include "tfgp/tail_series.hpp"

namespace tfgp {

/// Finite window [-left, right] in the boundary-layer coordinate y.
struct Window {
  double left = 30.0;
  double right = 40.0;
};

/// Coefficients b_0..b_{n_max} of the large-y expansion
/// nu0(y) ~ y^{1/2} sum_n b_n (2y)^{-3n/2}, returned as a TailSeries with
/// scale 2. Computed in exact 128-bit integer arithmetic; once an intermediate
/// would overflow, the remaining coefficients continue in long double.
TailSeries b_coefficients(int n_max);

/// Number of leading b_n produced exactly by the last b_coefficients-style
/// recurrence run up to n_max (the rest come from the floating fallback).
int exact_b_count(int n_max);

/// y^{1/2} sum_{n<n_terms} b_n (2y)^{-3n/2}; y > 0.
double nu0_tail_plus(double y, int n_terms);
/// Leading decaying behaviour (-y)^{-1/4} exp(-(-y)^{3/2}/3) / sqrt(pi); y < 0.
double nu0_tail_minus(double y);

struct PainleveOptions {
  Window window;
  int nodes_per_unit = 64;
  double tol = 1e-10;
  int max_iterations = 60;
  /// Right boundary value uses this many series terms.
  int tail_terms = 9;
  /// Max allowed mismatch between the interior solution and the tail formulas
  /// one unit inside each end.
  double window_tol = 1e-7;
};

/// Hastings-McLeod solution of 4 nu'' + y nu - nu^3 = 0 on a finite window.
class HastingsMcLeod {
 public:
  HastingsMcLeod(ScalarField field, ScalarField w0, TailSeries tail_plus, double residual_norm,
                 PainleveOptions options, int iterations);

  const ScalarField& field() const { return field_; }
  const ScalarField& w0() const { return w0_; }
  const Grid& grid() const { return field_.grid(); }
  const GridPtr& grid_ptr() const { return field_.grid_ptr(); }
  const TailSeries& tail_plus() const { return tail_plus_; }
  double residual_norm() const { return residual_norm_; }
  const PainleveOptions& options() const { return options_; }
  Window window() const { return options_.window; }
  int iterations() const { return iterations_; }

  std::span<const double> values() const { return field_.values(); }
  std::span<const double> first_derivative() const { return field_.first_derivative(); }
  std::span<const double> second_derivative() const { return field_.second_derivative(); }

  /// nu0(y) for any real y: interpolated inside the window, tail formulas
  /// beyond it.
  double operator()(double y) const;
  double derivative(double y) const;

 private:
  ScalarField field_;
  ScalarField w0_;
  TailSeries tail_plus_;
  double residual_norm_;
  PainleveOptions options_;
  int iterations_;
};

/// Damped Newton solve of the Numerov discretization with Dirichlet data from
/// the two tail formulas. Throws NonConvergence or WindowTooSmall.
HastingsMcLeod solve_hastings_mcleod(const PainleveOptions& options = {});

/// Max over interior nodes of the Numerov-form ODE residual, in units of
/// 4 nu'' + y nu - nu^3.
double painleve_residual(const Grid& grid, std::span<const double> nu);

}  // namespace tfgp
