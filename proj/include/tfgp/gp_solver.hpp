#pragma once

#include <string>
#include <vector>

#include "tfgp/constants.hpp"
#include "tfgp/corrections.hpp"
#include "tfgp/grid.hpp"
#include "tfgp/painleve.hpp"

namespace tfgp {

struct GroundStateOptions {
  /// Outer radius; 0 selects 1 + 10 eps^{2/3}.
  double R_max = 0;
  /// Radial nodes; 0 derives them from `layer_step`.
  std::size_t n_nodes = 0;
  /// Target spacing in the layer coordinate y = (1-r^2)/eps^{2/3}.
  double layer_step = 1.0 / 128;
  double tol = 1e-10;
  int max_iterations = 50;
};

/// Radial ground state of eps^2 (eta'' + (d-1)/r eta') + (1-r^2) eta - eta^3 = 0
/// with eta'(0) = 0 and eta(R_max) = 0.
struct GroundState {
  double epsilon = 0;
  int dimension = 0;
  double R_max = 0;
  /// eta on the radial grid with first and second derivatives attached.
  ScalarField profile;
  double E_total = 0;
  double E_potential = 0;
  double E_kinetic = 0;
  /// Int eta^4 over R^d.
  double quartic = 0;
  int newton_iterations = 0;
  double residual_norm = 0;
  /// Quadrature error estimate for the energies (half-resolution comparison).
  double quadrature_error = 0;
};

GroundState solve_ground_state(double epsilon, int d, const HastingsMcLeod& nu0,
                               const GroundStateOptions& options = {});

struct Energies {
  double total = 0;
  double potential = 0;
  double kinetic = 0;
  double quartic = 0;
};

/// Radial quadrature with measure |S^{d-1}| r^{d-1} dr; stores the result on `state`.
Energies energies(GroundState& state);

/// R_{N,eps}(y) = eps^{-2(N+1)/3} (nu_eps - sum_{n<=N} eps^{2n/3} nu_n) with
/// nu_eps(y) = eps^{-1/3} eta(sqrt(1 - eps^{2/3} y)), sampled at the nu0 nodes
/// inside the radial domain. `corrections` holds nu_1..nu_N for the state's dimension.
ScalarField extract_remainder(const GroundState& state, const HastingsMcLeod& nu0,
                              const std::vector<CorrectionFunction>& corrections, int N);

struct VerificationRow {
  double epsilon = 0;
  double numeric = 0;
  double predicted = 0;
  double delta = 0;
  bool ok = true;
  std::string error;
};

struct VerificationReport {
  int dimension = 0;
  EnergyKind kind = EnergyKind::total;
  std::vector<VerificationRow> rows;
  double slope = 0;
  double threshold = 2.7;
  bool pass = false;
};

/// Solves the ground state at each eps and compares the chosen energy with
/// the expansion. A failed solve is recorded in its row and excluded from the fit.
VerificationReport verify_expansion(int d, const std::vector<double>& eps_list,
                                    const ExpansionCoefficients& coeffs, const HastingsMcLeod& nu0,
                                    const GroundStateOptions& options = {},
                                    double threshold = 2.7);

/// Same comparison from already solved states.
VerificationReport verify_expansion(const std::vector<GroundState>& states,
                                    const ExpansionCoefficients& coeffs, double threshold = 2.7);

double energy_of(const GroundState& s, EnergyKind k);

}  // namespace tfgp
