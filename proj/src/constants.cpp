#include "tfgp/constants.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tfgp/errors.hpp"
#include "tfgp/numerics.hpp"

namespace tfgp {

namespace {

constexpr int kTailTerms = 10;

void check_dimension(int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
}

TailSeries nu0_tail() { return b_coefficients(kTailTerms - 1).normalized(); }

TailSeries integrand_tail(const RegularizedIntegrand& w, const CorrectionFunction* nu1) {
  const TailSeries t0 = nu0_tail();
  const double half = 0.5 * (w.dimension - 1);
  switch (w.kind) {
    case IntegrandKind::g0:
    case IntegrandKind::y_g0: {
      const TailSeries g = t0 * t0 * t0 * t0 + TailSeries::monomial(-1, 4) +
                           TailSeries::monomial(2, -2);
      return w.kind == IntegrandKind::g0 ? g : g.times_power(2);
    }
    case IntegrandKind::g2:
    case IntegrandKind::y_g2: {
      const TailSeries g = (t0 * t0 + TailSeries::monomial(-1, 2)).times_power(2) +
                           TailSeries::monomial(1, -2);
      return w.kind == IntegrandKind::g2 ? g : g.times_power(2);
    }
    case IntegrandKind::g1:
      return t0 * t0 * t0 * nu1->tail + TailSeries::constant(half);
    case IntegrandKind::g3:
      return (t0 * nu1->tail).times_power(2) + TailSeries::constant(half);
  }
  throw std::logic_error("unknown integrand");
}

// Continuous part of the integrand (indicator terms removed).
double smooth_part(IntegrandKind k, double y, double v, double v1) {
  const double yp = std::max(y, 0.0);
  switch (k) {
    case IntegrandKind::g0: return v * v * v * v - yp * yp;
    case IntegrandKind::y_g0: return y * (v * v * v * v - yp * yp);
    case IntegrandKind::g2: return y * (v * v - yp);
    case IntegrandKind::y_g2: return y * y * (v * v - yp);
    case IntegrandKind::g1: return v * v * v * v1;
    case IntegrandKind::g3: return y * v * v1;
  }
  return 0.0;
}

// Indicator part at a point.
double indicator_part(const RegularizedIntegrand& w, double y) {
  const double half = 0.5 * (w.dimension - 1);
  switch (w.kind) {
    case IntegrandKind::g0: return y >= 1 ? 2 / y : 0.0;
    case IntegrandKind::y_g0: return y >= 1 ? 2.0 : 0.0;
    case IntegrandKind::g2: return y >= 1 ? 1 / y : 0.0;
    case IntegrandKind::y_g2: return y >= 1 ? 1.0 : 0.0;
    case IntegrandKind::g1:
    case IntegrandKind::g3: return y >= 0 ? half : 0.0;
  }
  return 0.0;
}

// Exact integral of the indicator part over [-inf, L].
double indicator_integral(const RegularizedIntegrand& w, double L) {
  const double half = 0.5 * (w.dimension - 1);
  switch (w.kind) {
    case IntegrandKind::g0: return 2 * std::log(L);
    case IntegrandKind::y_g0: return 2 * (L - 1);
    case IntegrandKind::g2: return std::log(L);
    case IntegrandKind::y_g2: return L - 1;
    case IntegrandKind::g1:
    case IntegrandKind::g3: return half * L;
  }
  return 0.0;
}

double tail_integral(const TailSeries& t, double lo, double tol, double* budget,
                     const std::string& what) {
  double b = 0;
  const double v = t.integrate_from(lo, &b);
  if (!(b <= tol)) {
    throw TailBudgetExceeded(what + ": tail remainder estimate " + std::to_string(b) +
                             " above tolerance");
  }
  if (budget) *budget = b;
  return v;
}

}  // namespace

double sphere_measure(int d) {
  check_dimension(d);
  constexpr double pi = std::numbers::pi;
  return d == 1 ? 2.0 : d == 2 ? 2 * pi : 4 * pi;
}

double eta0_quartic_integral(int d) {
  // |S| * Int_0^1 (1-r^2)^2 r^{d-1} dr = |S| * B(d/2, 3) / 2.
  const double a = 0.5 * d;
  const double beta = std::tgamma(a) * 2.0 / std::tgamma(a + 3);
  return sphere_measure(d) * beta / 2;
}

double beta_integral(int d) {
  check_dimension(d);
  if (d == 2) return 0.0;
  const double a = 0.5 * d - 1;
  boost::math::quadrature::tanh_sinh<double> q;
  auto f = [a](double t, double tc) {
    // tc = 1 - t, supplied accurately near t = 1.
    if (t <= 0) return -a;
    const double one_minus = t > 0.5 ? tc : 1 - t;
    return std::expm1(a * std::log(one_minus)) / t;
  };
  return q.integrate(f, 0.0, 1.0);
}

std::string RegularizedIntegrand::name() const {
  switch (kind) {
    case IntegrandKind::g0: return "g0";
    case IntegrandKind::g1: return "g1";
    case IntegrandKind::g2: return "g2";
    case IntegrandKind::g3: return "g3";
    case IntegrandKind::y_g0: return "y_g0";
    case IntegrandKind::y_g2: return "y_g2";
  }
  return "?";
}

double RegularizedIntegrand::decay_alpha() const {
  switch (kind) {
    case IntegrandKind::g0:
    case IntegrandKind::g2: return 4.0;
    default: return 3.0;
  }
}

double RegularizedIntegrand::operator()(double y, const HastingsMcLeod& nu0,
                                        const CorrectionFunction* nu1) const {
  if (needs_nu1() && !nu1) throw MissingPrior(name() + " needs nu_1");
  if (y > nu0.grid().back()) return integrand_tail(*this, nu1).evaluate(y);
  const double v1 = needs_nu1() ? (*nu1)(y) : 0.0;
  return smooth_part(kind, y, nu0(y), v1) + indicator_part(*this, y);
}

IntegralValue regularized_integral(const RegularizedIntegrand& which, const HastingsMcLeod& nu0,
                                   const CorrectionFunction* nu1, double tol) {
  check_dimension(which.dimension);
  if (which.needs_nu1()) {
    if (!nu1) throw MissingPrior(which.name() + " needs nu_1");
    if (nu1->order != 1 || nu1->dimension != which.dimension) {
      throw CaseMismatch(which.name() + ": correction is not nu_1 for d=" +
                         std::to_string(which.dimension));
    }
    if (nu1->field.size() != nu0.grid().size()) {
      throw GridMismatch(which.name() + ": nu_1 grid differs from nu_0 grid");
    }
  }
  const Grid& grid = nu0.grid();
  const auto y = grid.nodes();
  const auto v = nu0.values();
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = smooth_part(which.kind, y[i], v[i], which.needs_nu1() ? nu1->field[i] : 0.0);
  }
  IntegralValue out;
  const double breaks[] = {0.0, 1.0};
  const double L = grid.back();
  out.value = integrate_segments(grid, f, breaks, &out.quadrature_error) +
              indicator_integral(which, L);
  out.tail = tail_integral(integrand_tail(which, nu1), L, tol, &out.tail_budget,
                           which.name());
  out.value += out.tail;
  return out;
}

LayerIntegrals layer_integrals(int d, const HastingsMcLeod& nu0, const CorrectionFunction& nu1,
                               double tol) {
  check_dimension(d);
  LayerIntegrals in;
  in.dimension = d;
  in.beta = beta_integral(d);
  in.eta4 = eta0_quartic_integral(d);
  auto run = [&](IntegrandKind k) { return regularized_integral({k, d}, nu0, &nu1, tol); };
  in.g0 = run(IntegrandKind::g0);
  in.y_g0 = run(IntegrandKind::y_g0);
  in.g1 = run(IntegrandKind::g1);
  in.g2 = run(IntegrandKind::g2);
  in.y_g2 = run(IntegrandKind::y_g2);
  in.g3 = run(IntegrandKind::g3);
  return in;
}

std::string to_string(EnergyKind k) {
  switch (k) {
    case EnergyKind::total: return "total";
    case EnergyKind::potential: return "potential";
    case EnergyKind::kinetic: return "kinetic";
  }
  return "?";
}

double ExpansionCoefficients::evaluate(double eps) const {
  const double e2 = eps * eps;
  return c_const + c_log * e2 * std::log(eps) + c_eps2 * e2 + c_eps83 * std::pow(eps, 8.0 / 3.0);
}

ExpansionCoefficients energy_expansion_coeffs(int d, const LayerIntegrals& in) {
  check_dimension(d);
  if (in.dimension != d) throw CaseMismatch("integrals were computed for another dimension");
  const double s = sphere_measure(d);
  ExpansionCoefficients c;
  c.kind = EnergyKind::total;
  c.dimension = d;
  c.c_const = -0.5 * in.eta4;
  c.c_log = -s / 3;
  c.c_eps2 = -(s / 4) * (4.0 * (1 - d) / d - 2 * in.beta + in.g0.value);
  c.c_eps83 = -(s / 4) * ((1 - 0.5 * d) * (2 + in.y_g0.value) + 4 * in.g1.value);
  c.budget_eps2 = (s / 4) * in.g0.budget();
  c.budget_eps83 = (s / 4) * (std::abs(1 - 0.5 * d) * in.y_g0.budget() + 4 * in.g1.budget());
  return c;
}

ExpansionCoefficients potential_expansion_coeffs(int d, const LayerIntegrals& in) {
  check_dimension(d);
  if (in.dimension != d) throw CaseMismatch("integrals were computed for another dimension");
  const double s = sphere_measure(d);
  ExpansionCoefficients c;
  c.kind = EnergyKind::potential;
  c.dimension = d;
  c.c_const = -in.eta4;
  c.c_log = -s / 3;
  c.c_eps2 = -(s / 2) * (2.0 * (1 - d) / d - in.beta + in.g2.value);
  c.c_eps83 = -(s / 2) * ((1 - 0.5 * d) * (1 + in.y_g2.value) + 2 * in.g3.value);
  c.budget_eps2 = (s / 2) * in.g2.budget();
  c.budget_eps83 = (s / 2) * (std::abs(1 - 0.5 * d) * in.y_g2.budget() + 2 * in.g3.budget());
  return c;
}

ExpansionCoefficients kinetic_expansion_coeffs(const ExpansionCoefficients& total,
                                               const ExpansionCoefficients& potential) {
  if (total.dimension != potential.dimension || total.kind != EnergyKind::total ||
      potential.kind != EnergyKind::potential) {
    throw CaseMismatch("kinetic assembly needs total and potential coefficients of one dimension");
  }
  ExpansionCoefficients c;
  c.kind = EnergyKind::kinetic;
  c.dimension = total.dimension;
  c.c_const = 2 * total.c_const - potential.c_const;
  c.c_log = 2 * total.c_log - potential.c_log;
  c.c_eps2 = 2 * total.c_eps2 - potential.c_eps2;
  c.c_eps83 = 2 * total.c_eps83 - potential.c_eps83;
  c.budget_eps2 = 2 * total.budget_eps2 + potential.budget_eps2;
  c.budget_eps83 = 2 * total.budget_eps83 + potential.budget_eps83;
  if (std::abs(c.c_const) > 1e-10) {
    throw ConsistencyFailure("kinetic constant term does not cancel: " + std::to_string(c.c_const));
  }
  return c;
}

namespace {

// Int_{-inf}^{Y} nu0'^2 over the window; Y must be a node.
double gradient_integral_to(const HastingsMcLeod& nu0, double Y, double* err) {
  const Grid& grid = nu0.grid();
  const std::size_t last = grid.node_index(Y);
  const auto d1 = nu0.first_derivative();
  std::vector<double> f(last + 1);
  for (std::size_t i = 0; i <= last; ++i) f[i] = d1[i] * d1[i];
  const Grid sub = Grid::uniform(grid.front(), grid[last], last + 1);
  return integrate_segments(sub, f, {}, err);
}

}  // namespace

VirialCheck virial_identity_check(const HastingsMcLeod& nu0) {
  const Grid& grid = nu0.grid();
  const auto y = grid.nodes();
  const auto v = nu0.values();
  const double L = grid.back();
  const TailSeries t0 = nu0_tail();

  std::vector<double> q(grid.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = v[i] * v[i] * (v[i] * v[i] - y[i]);
  double err_q = 0, err_k = 0, b_q = 0, b_k = 0;
  const double breaks[] = {1.0};
  const TailSeries q_tail =
      t0 * t0 * t0 * t0 - (t0 * t0).times_power(2) + TailSeries::monomial(1, -2);
  const double quartic = integrate_segments(grid, q, breaks, &err_q) + std::log(L) +
                         q_tail.integrate_from(L, &b_q);

  const TailSeries dt = t0.derivative();
  const TailSeries k_tail = dt * dt - TailSeries::monomial(0.25, -2);
  const double grad = gradient_integral_to(nu0, L, &err_k) - 0.25 * std::log(L) +
                      k_tail.integrate_from(L, &b_k);

  VirialCheck out;
  out.lhs = 0.25 * quartic;
  out.gradient_integral = grad;
  out.rhs = 0.5 - grad;
  out.budget = 0.25 * (err_q + b_q) + err_k + b_k;
  return out;
}

double dps_phi(const HastingsMcLeod& nu0, double xi) {
  return std::pow(2.0, -1.0 / 3) * nu0(-std::pow(2.0, 2.0 / 3) * xi);
}

double dps_phi_derivative(const HastingsMcLeod& nu0, double xi) {
  return -std::pow(2.0, 1.0 / 3) * nu0.derivative(-std::pow(2.0, 2.0 / 3) * xi);
}

double dps_phi_residual(const HastingsMcLeod& nu0) {
  // Numerov form of phi'' = xi phi + phi^3 on the image of the nu0 nodes.
  const Grid& grid = nu0.grid();
  const auto y = grid.nodes();
  const auto v = nu0.values();
  const long double c = std::pow(2.0L, -1.0L / 3);
  const long double k = std::pow(2.0L, -2.0L / 3);
  const long double h = k * grid.step();
  auto phi = [&](std::size_t i) { return c * v[i]; };
  auto rhs = [&](std::size_t i) {
    const long double p = phi(i);
    return -k * y[i] * p + p * p * p;
  };
  long double r = 0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    // Nodes run in decreasing xi; the second difference is symmetric.
    const long double second = phi(i + 1) - 2 * phi(i) + phi(i - 1);
    const long double res = second - h * h / 12 * (rhs(i - 1) + 10 * rhs(i) + rhs(i + 1));
    r = std::max(r, std::abs(res));
  }
  return static_cast<double>(r / (h * h));
}

DpsConstant dps_constant_C(const HastingsMcLeod& nu0, double tol) {
  const double L = nu0.grid().back();
  const double k = std::pow(2.0, -2.0 / 3);
  const double ln2 = std::numbers::ln2;
  DpsConstant out;
  double quad_err = 0;
  for (double Y : {L / 4, L / 2, L}) {
    double e = 0;
    const double A = k * Y;
    out.cutoffs.push_back(A);
    out.estimates.push_back(gradient_integral_to(nu0, Y, &e) - 0.25 * std::log(A));
    quad_err = std::max(quad_err, e);
  }
  // S(A) = S + a A^{-3} + b A^{-6} + ...
  const auto& s = out.estimates;
  const double r1a = (8 * s[1] - s[0]) / 7;
  const double r1b = (8 * s[2] - s[1]) / 7;
  const double r2 = (64 * r1b - r1a) / 63;
  out.C = r2 - 0.25 * ln2;
  out.error = std::abs(r2 - r1b) + quad_err;
  if (!(out.error <= tol)) {
    throw ExtrapolationUnstable("DPS constant extrapolation levels differ by " +
                                std::to_string(out.error));
  }
  const VirialCheck v = virial_identity_check(nu0);
  out.C_tail = v.gradient_integral - ln2 / 12;
  return out;
}

double physical_kinetic_energy(double R_over_aHO, double C) {
  if (!(R_over_aHO > 0)) throw std::domain_error("physical_kinetic_energy needs R/a_HO > 0");
  return std::log(R_over_aHO) - 2 + 1.75 * std::numbers::ln2 + 3 * C;
}

double physical_kinetic_energy(double R_over_aHO, const HastingsMcLeod& nu0) {
  return physical_kinetic_energy(R_over_aHO, dps_constant_C(nu0).C);
}

double physical_kinetic_energy_unreduced(double R_over_aHO, double C) {
  if (!(R_over_aHO > 0)) throw std::domain_error("physical_kinetic_energy needs R/a_HO > 0");
  const double ln2 = std::numbers::ln2;
  return std::log(R_over_aHO) - 2 + ln2 + 3 * (C + 0.25 * ln2);
}

double physical_kinetic_energy_from_quartic(double R_over_aHO, double Q) {
  if (!(R_over_aHO > 0)) throw std::domain_error("physical_kinetic_energy needs R/a_HO > 0");
  return std::log(R_over_aHO) - 0.5 + 1.5 * std::numbers::ln2 - 0.75 * Q;
}

}  // namespace tfgp
