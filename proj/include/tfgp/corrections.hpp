#pragma once

#include <array>
#include <span>
#include <vector>

#include "tfgp/grid.hpp"
#include "tfgp/painleve.hpp"
#include "tfgp/tail_series.hpp"

namespace tfgp {

/// Solution nu_n of the linearized layer equation -4 v'' + W0 v = F_n.
struct CorrectionFunction {
  int order = 0;
  int dimension = 0;
  /// Values with first and second derivatives attached.
  ScalarField field;
  /// Large-y expansion y^{1/2-2n} sum_m g_{n,m} y^{-3m/2}.
  TailSeries tail;
  double residual_norm = 0;
  /// Dirichlet value used at the right end (from `tail`); zero on the left.
  double right_value = 0;
  /// Smallest diagonal-dominance margin of the discrete operator.
  double dominance_margin = 0;

  double operator()(double y) const;
};

struct CorrectionOptions {
  double tol = 1e-8;
  /// Number of tail coefficients g_{n,0..} kept.
  int tail_terms = 8;
};

/// Ordered triples (n1, n2, n3), each n_i < n, summing to n.
std::vector<std::array<int, 3>> cubic_index_set(int n);

/// F_n sampled on the grid of nu0. `priors` must hold nu_1..nu_{n-1} for the
/// same dimension (any order); throws MissingPrior otherwise.
ScalarField forcing_F_n(int n, int d, std::span<const CorrectionFunction> priors,
                        const HastingsMcLeod& nu0);

/// Large-y expansion of F_n built from the tails of nu0 and the priors.
TailSeries forcing_tail(int n, int d, std::span<const CorrectionFunction> priors,
                        int tail_terms = 8);

/// Tail of the solution of -4 v'' + W0 v = F with F = y^{p+1} sum F_k y^{-3k/2}.
TailSeries correction_tail(const TailSeries& forcing, int tail_terms = 8);

/// Solves -4 v'' + W0 v = forcing on the nu0 grid, v = 0 on the left end and
/// v = right_value on the right end. Numerov scheme, tridiagonal solve.
/// Returns values, first and second derivatives as a field; `residual`
/// receives the max-norm equation residual.
ScalarField solve_layer_equation(const HastingsMcLeod& nu0, std::span<const double> forcing,
                                 double right_value, double* residual = nullptr,
                                 double* margin = nullptr);

CorrectionFunction solve_correction(int n, int d, const HastingsMcLeod& nu0,
                                    std::span<const CorrectionFunction> priors,
                                    const CorrectionOptions& options = {});

/// nu_1..nu_{n_max} for dimension d.
std::vector<CorrectionFunction> solve_corrections(int n_max, int d, const HastingsMcLeod& nu0,
                                                  const CorrectionOptions& options = {});

struct TailFit {
  double exponent = 0;
  double coefficient = 0;
  double rms_residual = 0;
};

/// Least-squares fit of log|nu_n| against log y on [L+/2, L+]. Throws
/// TailTooNoisy when the rms residual exceeds `max_rms`.
TailFit correction_tail_fit(const CorrectionFunction& cf, double max_rms = 0.05);

}  // namespace tfgp
