#pragma once

#include <string>
#include <vector>

#include "tfgp/corrections.hpp"
#include "tfgp/painleve.hpp"

namespace tfgp {

/// |S^{d-1}|: 2, 2pi, 4pi.
double sphere_measure(int d);
/// Integral of (1-|x|^2)_+^2 over R^d.
double eta0_quartic_integral(int d);

/// Integral over (0,1) of ((1-t)^{d/2-1} - 1)/t.
double beta_integral(int d);

enum class IntegrandKind { g0, g1, g2, g3, y_g0, y_g2 };

/// One of the regularized layer integrands.
///   g0 = nu0^4 - y_+^2 + (2/y) 1{y>=1}
///   g1 = nu0^3 nu1 + (d-1)/2 1{y>=0}
///   g2 = y (nu0^2 - y_+) + (1/y) 1{y>=1}
///   g3 = y nu0 nu1 + (d-1)/2 1{y>=0}
///   y_g0 = y g0, y_g2 = y g2
struct RegularizedIntegrand {
  IntegrandKind kind = IntegrandKind::g0;
  int dimension = 1;

  std::string name() const;
  bool needs_nu1() const { return kind == IntegrandKind::g1 || kind == IntegrandKind::g3; }
  /// Algebraic decay rate alpha with |g| <= C y^{-alpha} at +infinity.
  double decay_alpha() const;
  /// Pointwise value (nu1 may be null for kinds that do not use it).
  double operator()(double y, const HastingsMcLeod& nu0, const CorrectionFunction* nu1) const;
};

struct IntegralValue {
  double value = 0;
  double quadrature_error = 0;
  /// Closed-form contribution of the tail beyond the window.
  double tail = 0;
  double tail_budget = 0;
  double budget() const { return quadrature_error + tail_budget; }
};

/// Integral over the real line: window quadrature (split at y=0 and y=1,
/// indicator terms exactly) plus the tail series integrated beyond L+.
/// Throws TailBudgetExceeded when the tail estimate exceeds `tol`.
IntegralValue regularized_integral(const RegularizedIntegrand& which, const HastingsMcLeod& nu0,
                                   const CorrectionFunction* nu1, double tol = 1e-8);

/// All integrals entering the coefficients for one dimension.
struct LayerIntegrals {
  int dimension = 0;
  double beta = 0;
  double eta4 = 0;
  IntegralValue g0, y_g0, g1, g2, y_g2, g3;
};

LayerIntegrals layer_integrals(int d, const HastingsMcLeod& nu0, const CorrectionFunction& nu1,
                               double tol = 1e-8);

enum class EnergyKind { total, potential, kinetic };
std::string to_string(EnergyKind k);

/// E(eps) = c_const + c_log eps^2 ln eps + c_eps2 eps^2 + c_eps83 eps^{8/3} + O(eps^3).
struct ExpansionCoefficients {
  EnergyKind kind = EnergyKind::total;
  int dimension = 0;
  double c_const = 0;
  double c_log = 0;
  double c_eps2 = 0;
  double c_eps83 = 0;
  int remainder_order = 3;
  /// Propagated integral error in c_eps2 and c_eps83.
  double budget_eps2 = 0;
  double budget_eps83 = 0;

  double evaluate(double eps) const;
};

ExpansionCoefficients energy_expansion_coeffs(int d, const LayerIntegrals& in);
ExpansionCoefficients potential_expansion_coeffs(int d, const LayerIntegrals& in);
/// 2 total - potential; throws ConsistencyFailure if the constant does not cancel.
ExpansionCoefficients kinetic_expansion_coeffs(const ExpansionCoefficients& total,
                                               const ExpansionCoefficients& potential);

struct VirialCheck {
  double lhs = 0;
  double rhs = 0;
  /// Int (nu0'^2 - 1{y>=1}/(4y)).
  double gradient_integral = 0;
  double budget = 0;
};

/// (1/4) Int (nu0^4 - y nu0^2 + 1{y>=1}/y) against 1/2 - Int (nu0'^2 - 1{y>=1}/(4y)).
VirialCheck virial_identity_check(const HastingsMcLeod& nu0);

/// phi(xi) = 2^{-1/3} nu0(-2^{2/3} xi) and its derivative.
double dps_phi(const HastingsMcLeod& nu0, double xi);
double dps_phi_derivative(const HastingsMcLeod& nu0, double xi);
/// Max of |phi'' - xi phi - phi^3| over the nodes of the nu0 grid.
double dps_phi_residual(const HastingsMcLeod& nu0);

struct DpsConstant {
  /// Richardson limit of Int_{-A}^inf phi'^2 - (1/4) ln A, minus (1/4) ln 2.
  double C = 0;
  /// Same constant from the tail-compensated gradient integral.
  double C_tail = 0;
  double error = 0;
  /// Raw estimates S(A) at the three cutoffs, smallest A first.
  std::vector<double> cutoffs;
  std::vector<double> estimates;
};

/// Throws ExtrapolationUnstable when the extrapolation levels disagree by more than `tol`.
DpsConstant dps_constant_C(const HastingsMcLeod& nu0, double tol = 1e-6);

/// ln(R/a_HO) - 2 + (7/4) ln 2 + 3C.
double physical_kinetic_energy(double R_over_aHO, double C);
double physical_kinetic_energy(double R_over_aHO, const HastingsMcLeod& nu0);
/// Same bracket written as ln(R/a_HO) - 2 + ln 2 + 3 (C + (1/4) ln 2).
double physical_kinetic_energy_unreduced(double R_over_aHO, double C);
/// Same bracket through the quartic integral Q = Int(nu0^4 - y nu0^2 + 1{y>=1}/y):
/// ln(R/a_HO) - 1/2 + (3/2) ln 2 - (3/4) Q.
double physical_kinetic_energy_from_quartic(double R_over_aHO, double Q);

}  // namespace tfgp
