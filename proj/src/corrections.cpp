#include "tfgp/corrections.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "tfgp/errors.hpp"
#include "tfgp/numerics.hpp"

namespace tfgp {

namespace {

void check_dimension(int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
}

// nu_1..nu_{n-1} for dimension d, indexed by order.
std::map<int, const CorrectionFunction*> collect_priors(int n, int d,
                                                        std::span<const CorrectionFunction> priors) {
  std::map<int, const CorrectionFunction*> out;
  for (const auto& p : priors) {
    if (p.dimension == d && p.order >= 1 && p.order < n) out[p.order] = &p;
  }
  for (int k = 1; k < n; ++k) {
    if (!out.count(k)) {
      throw MissingPrior("forcing for n=" + std::to_string(n) + " needs nu_" + std::to_string(k) +
                         " (d=" + std::to_string(d) + ")");
    }
  }
  return out;
}

}  // namespace

double CorrectionFunction::operator()(double y) const {
  const Grid& g = field.grid();
  if (y > g.back()) return tail.evaluate(y);
  if (y < g.front()) return 0.0;
  return field(y);
}

std::vector<std::array<int, 3>> cubic_index_set(int n) {
  std::vector<std::array<int, 3>> out;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int c = n - a - b;
      if (c >= 0 && c < n) out.push_back({a, b, c});
    }
  }
  return out;
}

ScalarField forcing_F_n(int n, int d, std::span<const CorrectionFunction> priors,
                        const HastingsMcLeod& nu0) {
  if (n < 1) throw std::invalid_argument("forcing_F_n: n must be >= 1");
  check_dimension(d);
  const auto prior = collect_priors(n, d, priors);
  const Grid& grid = nu0.grid();
  const std::size_t m = grid.size();
  for (const auto& [k, p] : prior) {
    if (p->field.size() != m || p->field.grid().front() != grid.front() ||
        p->field.grid().back() != grid.back()) {
      throw GridMismatch("prior nu_" + std::to_string(k) + " lives on a different grid");
    }
  }
  auto values_of = [&](int k) { return k == 0 ? nu0.values() : prior.at(k)->field.values(); };
  auto d1_of = [&](int k) {
    return k == 0 ? nu0.first_derivative() : prior.at(k)->field.first_derivative();
  };
  auto d2_of = [&](int k) {
    return k == 0 ? nu0.second_derivative() : prior.at(k)->field.second_derivative();
  };

  std::vector<double> f(m, 0.0);
  for (const auto& t : cubic_index_set(n)) {
    const auto a = values_of(t[0]), b = values_of(t[1]), c = values_of(t[2]);
    for (std::size_t i = 0; i < m; ++i) f[i] -= a[i] * b[i] * c[i];
  }
  const auto d1 = d1_of(n - 1);
  const auto d2 = d2_of(n - 1);
  const auto y = grid.nodes();
  for (std::size_t i = 0; i < m; ++i) f[i] += -2.0 * d * d1[i] - 4.0 * y[i] * d2[i];
  return ScalarField(nu0.grid_ptr(), std::move(f));
}

TailSeries forcing_tail(int n, int d, std::span<const CorrectionFunction> priors, int tail_terms) {
  if (n < 1) throw std::invalid_argument("forcing_tail: n must be >= 1");
  check_dimension(d);
  const auto prior = collect_priors(n, d, priors);
  const TailSeries t0 = b_coefficients(tail_terms - 1).normalized();
  auto tail_of = [&](int k) { return k == 0 ? t0 : prior.at(k)->tail.normalized(); };

  const TailSeries& prev = tail_of(n - 1);
  TailSeries f = prev.derivative().scaled(-2.0 * d) - prev.derivative().derivative().times_power(2).scaled(4.0);
  for (const auto& t : cubic_index_set(n)) {
    f = f - tail_of(t[0]) * tail_of(t[1]) * tail_of(t[2]);
  }
  return f;
}

TailSeries correction_tail(const TailSeries& forcing, int tail_terms) {
  const TailSeries t0 = b_coefficients(tail_terms - 1).normalized();
  const TailSeries w = (t0 * t0).scaled(3.0) + TailSeries::monomial(-1.0, 2);
  const TailSeries f = forcing.normalized();
  const std::size_t k_max =
      std::min({f.size(), w.size(), static_cast<std::size_t>(std::max(tail_terms, 0))});
  const int p_x2 = f.leading_power_x2() - 2;
  const double p = 0.5 * p_x2;
  const auto& wc = w.coeffs();
  const auto& fc = f.coeffs();
  std::vector<double> g(k_max, 0.0);
  for (std::size_t k = 0; k < k_max; ++k) {
    double s = fc[k];
    for (std::size_t j = 1; j <= k; ++j) s -= wc[j] * g[k - j];
    if (k >= 2) {
      const double q = p - 1.5 * static_cast<double>(k - 2);
      s += 4 * q * (q - 1) * g[k - 2];
    }
    g[k] = s / wc[0];
  }
  return TailSeries(p_x2, std::move(g));
}

ScalarField solve_layer_equation(const HastingsMcLeod& nu0, std::span<const double> forcing,
                                 double right_value, double* residual, double* margin) {
  const Grid& grid = nu0.grid();
  const std::size_t n = grid.size();
  if (forcing.size() != n) throw std::invalid_argument("solve_layer_equation: size mismatch");
  const auto w = nu0.w0().values();
  const double h = grid.step();
  const double c = h * h / 48;

  const std::size_t m = n - 2;
  std::vector<double> lower(m), diag(m), upper(m), rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = k + 1;
    lower[k] = 1 - c * w[i - 1];
    diag[k] = -2 - 10 * c * w[i];
    upper[k] = 1 - c * w[i + 1];
    rhs[k] = -c * (forcing[i - 1] + 10 * forcing[i] + forcing[i + 1]);
  }
  rhs[m - 1] -= upper[m - 1] * right_value;
  if (margin) *margin = dominance_margin(lower, diag, upper);
  const std::vector<double> x = solve_tridiagonal(lower, diag, upper, rhs);

  std::vector<double> v(n);
  v.front() = 0.0;
  std::copy(x.begin(), x.end(), v.begin() + 1);
  v.back() = right_value;

  if (residual) {
    long double r = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      auto f = [&](std::size_t j) {
        return (static_cast<long double>(w[j]) * v[j] - forcing[j]) / 4;
      };
      const long double second =
          (static_cast<long double>(v[i + 1]) - v[i]) - (static_cast<long double>(v[i]) - v[i - 1]);
      const long double num = second - static_cast<long double>(h) * h / 12 * (f(i - 1) + 10 * f(i) + f(i + 1));
      r = std::max(r, std::abs(num));
    }
    *residual = static_cast<double>(4 * r / (static_cast<long double>(h) * h));
  }

  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = (w[i] * v[i] - forcing[i]) / 4;
  std::vector<double> d1 = compact_first_derivative(grid, v, d2);
  return ScalarField(nu0.grid_ptr(), std::move(v), std::move(d1), std::move(d2));
}

CorrectionFunction solve_correction(int n, int d, const HastingsMcLeod& nu0,
                                    std::span<const CorrectionFunction> priors,
                                    const CorrectionOptions& options) {
  const ScalarField f = forcing_F_n(n, d, priors, nu0);
  CorrectionFunction cf;
  cf.order = n;
  cf.dimension = d;
  cf.tail = correction_tail(forcing_tail(n, d, priors, options.tail_terms), options.tail_terms);
  cf.right_value = cf.tail.evaluate(nu0.grid().back());
  cf.field = solve_layer_equation(nu0, f.values(), cf.right_value, &cf.residual_norm,
                                  &cf.dominance_margin);
  if (!(cf.residual_norm <= options.tol)) {
    throw NonConvergence("correction nu_" + std::to_string(n) + " residual above tolerance", 1,
                         cf.residual_norm);
  }
  return cf;
}

std::vector<CorrectionFunction> solve_corrections(int n_max, int d, const HastingsMcLeod& nu0,
                                                  const CorrectionOptions& options) {
  std::vector<CorrectionFunction> out;
  out.reserve(static_cast<std::size_t>(std::max(n_max, 0)));
  for (int n = 1; n <= n_max; ++n) out.push_back(solve_correction(n, d, nu0, out, options));
  return out;
}

TailFit correction_tail_fit(const CorrectionFunction& cf, double max_rms) {
  const Grid& g = cf.field.grid();
  const double hi = g.back();
  if (hi < 30) throw WindowTooSmall("tail fit needs a right window end of at least 30");
  const auto y = g.nodes();
  const auto v = cf.field.values();
  std::vector<double> xs, ys;
  double sign = 0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    if (y[i] < hi / 2) continue;
    if (v[i] == 0) throw TailTooNoisy("correction vanishes inside the fit range");
    const double s = v[i] > 0 ? 1.0 : -1.0;
    if (sign == 0) sign = s;
    if (s != sign) throw TailTooNoisy("correction changes sign inside the fit range");
    xs.push_back(y[i]);
    ys.push_back(v[i]);
  }
  const LineFit fit = fit_loglog(xs, ys);
  if (!(fit.rms_residual <= max_rms)) {
    throw TailTooNoisy("tail fit rms residual " + std::to_string(fit.rms_residual));
  }
  return {fit.slope, sign * std::exp(fit.intercept), fit.rms_residual};
}

}  // namespace tfgp
