#include "tfgp/gp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfgp/errors.hpp"
#include "tfgp/numerics.hpp"

namespace tfgp {

namespace {

constexpr double kD2[5] = {-1, 16, -30, 16, -1};
constexpr double kD1[5] = {1, -8, 0, 8, -1};

// Radial operator on nodes 0..n-1 with eta_{-k} = eta_k and eta = 0 from
// node n-1 on.
struct RadialProblem {
  double eps2;
  int d;
  double h;
  std::size_t n;
  std::vector<double> r;

  // Index of the unknown carrying node j, or -1 for a zero node.
  long source(long j) const {
    if (j < 0) j = -j;
    return j >= static_cast<long>(n) - 1 ? -1 : j;
  }

  double value(const std::vector<double>& v, long j) const {
    const long s = source(j);
    return s < 0 ? 0.0 : v[static_cast<std::size_t>(s)];
  }

  // Stencil weights of eps^2 (D2 + (d-1)/r D1) at node i.
  void weights(std::size_t i, double w[5]) const {
    const double a = eps2 / (12 * h * h);
    if (i == 0) {
      for (int k = 0; k < 5; ++k) w[k] = d * a * kD2[k];
      return;
    }
    const double b = eps2 * (d - 1) / (r[i] * 12 * h);
    for (int k = 0; k < 5; ++k) w[k] = a * kD2[k] + b * kD1[k];
  }

  double residual(const std::vector<double>& v, std::size_t i) const {
    double w[5];
    weights(i, w);
    double s = 0;
    for (int k = 0; k < 5; ++k) s += w[k] * value(v, static_cast<long>(i) + k - 2);
    const double e = v[i];
    return s + (1 - r[i] * r[i]) * e - e * e * e;
  }

  double max_residual(const std::vector<double>& v) const {
    double m = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) m = std::max(m, std::abs(residual(v, i)));
    return m;
  }

  std::vector<double> newton_step(const std::vector<double>& v) const {
    const std::size_t m = n - 1;
    BandMatrix J(m, 2, 2);
    std::vector<double> rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
      double w[5];
      weights(i, w);
      for (int k = 0; k < 5; ++k) {
        const long s = source(static_cast<long>(i) + k - 2);
        if (s >= 0) J.at(i, static_cast<std::size_t>(s)) += w[k];
      }
      J.at(i, i) += 1 - r[i] * r[i] - 3 * v[i] * v[i];
      rhs[i] = -residual(v, i);
    }
    return J.solve(std::move(rhs));
  }

  std::vector<double> first_derivative(const std::vector<double>& v) const {
    std::vector<double> d1(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (int k = 0; k < 5; ++k) s += kD1[k] * value(v, static_cast<long>(i) + k - 2);
      d1[i] = s / (12 * h);
    }
    return d1;
  }
};

double radial_integral(const Grid& g, const std::vector<double>& f, int d, double* err) {
  std::vector<double> w(f.size());
  const auto r = g.nodes();
  for (std::size_t i = 0; i < f.size(); ++i) w[i] = f[i] * std::pow(r[i], d - 1);
  return sphere_measure(d) * integrate_segments(g, w, {}, err);
}

}  // namespace

Energies energies(GroundState& state) {
  const Grid& g = state.profile.grid();
  const auto r = g.nodes();
  const auto eta = state.profile.values();
  const auto d1 = state.profile.first_derivative();
  const int d = state.dimension;
  std::vector<double> q(g.size()), p(g.size()), k(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double e2 = eta[i] * eta[i];
    q[i] = e2 * e2;
    p[i] = (r[i] * r[i] - 1) * e2;
    k[i] = d1[i] * d1[i];
  }
  double eq = 0, ep = 0, ek = 0;
  Energies out;
  out.quartic = radial_integral(g, q, d, &eq);
  out.potential = radial_integral(g, p, d, &ep);
  out.kinetic = state.epsilon * state.epsilon * radial_integral(g, k, d, &ek);
  out.total = out.kinetic + out.potential + 0.5 * out.quartic;
  state.E_total = out.total;
  state.E_potential = out.potential;
  state.E_kinetic = out.kinetic;
  state.quartic = out.quartic;
  state.quadrature_error =
      sphere_measure(d) * (0.5 * eq + ep + state.epsilon * state.epsilon * ek);
  return out;
}

GroundState solve_ground_state(double epsilon, int d, const HastingsMcLeod& nu0,
                               const GroundStateOptions& options) {
  if (!(epsilon > 0 && epsilon <= 0.3)) {
    throw std::invalid_argument("solve_ground_state: epsilon must lie in (0, 0.3]");
  }
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  const double e23 = std::cbrt(epsilon * epsilon);
  const double R = options.R_max > 0 ? options.R_max : 1 + 10 * e23;
  if (R < 1 + 8 * e23) {
    throw std::invalid_argument("solve_ground_state: R_max must be at least 1 + 8 eps^{2/3}");
  }
  std::size_t n = options.n_nodes;
  if (n == 0) {
    const double h_target = options.layer_step * e23 / 2;
    n = static_cast<std::size_t>(std::ceil(R / h_target / 4)) * 4 + 1;
  }
  if (n < 9) throw std::invalid_argument("solve_ground_state: too few nodes");

  auto grid = std::make_shared<const Grid>(Grid::uniform(0.0, R, n));
  RadialProblem pb{epsilon * epsilon, d, grid->step(), n, {grid->nodes().begin(), grid->nodes().end()}};

  std::vector<double> v(n - 1);
  const double e13 = std::cbrt(epsilon);
  for (std::size_t i = 0; i + 1 < n; ++i) v[i] = e13 * nu0((1 - pb.r[i] * pb.r[i]) / e23);

  double max_lambda = 1.0;
  int it = 0;
  double res = pb.max_residual(v);
  for (int attempt = 0;; ++attempt) {
    bool negative = false;
    for (; it < options.max_iterations && res > options.tol; ++it) {
      const std::vector<double> step = pb.newton_step(v);
      double lambda = max_lambda;
      std::vector<double> trial(v.size());
      double trial_res = 0;
      for (;;) {
        for (std::size_t i = 0; i < v.size(); ++i) trial[i] = v[i] + lambda * step[i];
        trial_res = pb.max_residual(trial);
        if (trial_res < res || lambda < 1e-6) break;
        lambda *= 0.5;
      }
      if (!(trial_res < res)) break;
      v.swap(trial);
      res = trial_res;
      if (*std::min_element(v.begin(), v.end()) < -1e-8) {
        negative = true;
        break;
      }
    }
    if (!negative) break;
    if (attempt > 0) {
      throw NegativeProfile("ground-state Newton iterate left the positive cone (eps=" +
                            std::to_string(epsilon) + ", d=" + std::to_string(d) + ")");
    }
    // Restart from the layer guess with stronger damping.
    for (std::size_t i = 0; i + 1 < n; ++i) v[i] = e13 * nu0((1 - pb.r[i] * pb.r[i]) / e23);
    res = pb.max_residual(v);
    max_lambda = 0.25;
  }
  if (!(res <= options.tol)) {
    throw NonConvergence("ground-state Newton iteration stalled (eps=" + std::to_string(epsilon) +
                             ", d=" + std::to_string(d) + ")",
                         it, res);
  }

  std::vector<double> eta(v);
  eta.push_back(0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(eta[i] > 0)) {
      throw NegativeProfile("ground state is not positive at r=" + std::to_string(pb.r[i]));
    }
  }
  std::vector<double> d1 = pb.first_derivative(v);
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double e = eta[i];
    const double rest = (e * e * e - (1 - pb.r[i] * pb.r[i]) * e) / pb.eps2;
    d2[i] = i == 0 ? rest / d : rest - (d - 1) / pb.r[i] * d1[i];
  }

  GroundState s;
  s.epsilon = epsilon;
  s.dimension = d;
  s.R_max = R;
  s.profile = ScalarField(grid, std::move(eta), std::move(d1), std::move(d2));
  s.newton_iterations = it;
  s.residual_norm = res;
  energies(s);
  return s;
}

ScalarField extract_remainder(const GroundState& state, const HastingsMcLeod& nu0,
                              const std::vector<CorrectionFunction>& corrections, int N) {
  if (N < 0) throw std::invalid_argument("extract_remainder: N must be >= 0");
  std::vector<const CorrectionFunction*> nus(static_cast<std::size_t>(N) + 1, nullptr);
  for (const auto& c : corrections) {
    if (c.dimension == state.dimension && c.order >= 1 && c.order <= N) {
      nus[static_cast<std::size_t>(c.order)] = &c;
    }
  }
  for (int k = 1; k <= N; ++k) {
    if (!nus[static_cast<std::size_t>(k)]) {
      throw MissingPrior("extract_remainder needs nu_" + std::to_string(k));
    }
  }
  const double eps = state.epsilon;
  const double e23 = std::cbrt(eps * eps);
  const double y_lo = (1 - state.R_max * state.R_max) / e23;
  const double y_hi = 1 / e23;
  const Grid& yg = nu0.grid();
  const auto ys = yg.nodes();
  std::size_t first = ys.size(), last = 0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (ys[i] >= y_lo && ys[i] <= y_hi) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first >= last || last - first < 4) {
    throw GridMismatch("radial domain and layer window barely overlap");
  }

  const std::size_t m = last - first + 1;
  const double scale = std::pow(eps, -2.0 * (N + 1) / 3);
  const ScalarField lagrange(state.profile.grid_ptr(),
                             {state.profile.values().begin(), state.profile.values().end()});
  std::vector<double> out(m);
  double resample = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double y = ys[first + k];
    const double r = std::sqrt(std::max(0.0, 1 - e23 * y));
    const double eta = state.profile(r);
    resample = std::max(resample, std::abs(eta - lagrange(r)));
    double expansion = nu0.values()[first + k];
    double w = 1;
    for (int n = 1; n <= N; ++n) {
      w *= e23;
      expansion += w * nus[static_cast<std::size_t>(n)]->field[first + k];
    }
    out[k] = scale * (eta / std::cbrt(eps) - expansion);
  }
  const double amplified = resample * scale / std::cbrt(eps);
  if (amplified > 1e-4) {
    throw GridMismatch("resampling error " + std::to_string(amplified) + " above tolerance");
  }
  auto sub = std::make_shared<const Grid>(Grid::uniform(ys[first], ys[last], m));
  return ScalarField(sub, std::move(out));
}

double energy_of(const GroundState& s, EnergyKind k) {
  switch (k) {
    case EnergyKind::total: return s.E_total;
    case EnergyKind::potential: return s.E_potential;
    case EnergyKind::kinetic: return s.E_kinetic;
  }
  return 0.0;
}

namespace {

void fit_report(VerificationReport& rep) {
  std::vector<double> xs, ys;
  for (const auto& row : rep.rows) {
    if (row.ok && row.delta != 0) {
      xs.push_back(row.epsilon);
      ys.push_back(row.delta);
    }
  }
  if (xs.size() < 2) {
    rep.slope = NAN;
    rep.pass = false;
    return;
  }
  rep.slope = fit_loglog(xs, ys).slope;
  rep.pass = rep.slope >= rep.threshold &&
             std::all_of(rep.rows.begin(), rep.rows.end(), [](const auto& r) { return r.ok; });
}

}  // namespace

VerificationReport verify_expansion(const std::vector<GroundState>& states,
                                    const ExpansionCoefficients& coeffs, double threshold) {
  VerificationReport rep;
  rep.dimension = coeffs.dimension;
  rep.kind = coeffs.kind;
  rep.threshold = threshold;
  for (const auto& s : states) {
    if (s.dimension != coeffs.dimension) {
      throw CaseMismatch("ground state and coefficients have different dimensions");
    }
    VerificationRow row;
    row.epsilon = s.epsilon;
    row.numeric = energy_of(s, coeffs.kind);
    row.predicted = coeffs.evaluate(s.epsilon);
    row.delta = row.numeric - row.predicted;
    rep.rows.push_back(row);
  }
  fit_report(rep);
  return rep;
}

VerificationReport verify_expansion(int d, const std::vector<double>& eps_list,
                                    const ExpansionCoefficients& coeffs, const HastingsMcLeod& nu0,
                                    const GroundStateOptions& options, double threshold) {
  if (eps_list.size() < 4) throw std::invalid_argument("verify_expansion needs at least 4 eps values");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0 && eps_list[i] <= 0.2)) {
      throw std::invalid_argument("verify_expansion: eps values must lie in (0, 0.2]");
    }
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw std::invalid_argument("verify_expansion: eps list must be decreasing");
    }
  }
  if (coeffs.dimension != d) throw CaseMismatch("coefficients are for another dimension");
  VerificationReport rep;
  rep.dimension = d;
  rep.kind = coeffs.kind;
  rep.threshold = threshold;
  for (double eps : eps_list) {
    VerificationRow row;
    row.epsilon = eps;
    row.predicted = coeffs.evaluate(eps);
    try {
      const GroundState s = solve_ground_state(eps, d, nu0, options);
      row.numeric = energy_of(s, coeffs.kind);
      row.delta = row.numeric - row.predicted;
    } catch (const Error& e) {
      row.ok = false;
      row.error = e.what();
    }
    rep.rows.push_back(row);
  }
  fit_report(rep);
  return rep;
}

}  // namespace tfgp
