#include "tfgp/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "tfgp/errors.hpp"
#include "tfgp/numerics.hpp"

namespace tfgp {

namespace {

using i128 = __int128;

std::optional<i128> mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

std::optional<i128> add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) return std::nullopt;
  return r;
}

struct BRecurrence {
  std::vector<long double> values;
  int exact_terms = 0;
};

// One step of the recurrence for b_{n+2} in exact arithmetic; nullopt on overflow.
std::optional<i128> next_exact(const std::vector<i128>& b, int n) {
  // 2 b_{n+2} = 8(9n^2-1) b_n - 3 S1 - S2.
  i128 s1 = 0;
  for (int m = 1; m <= n + 1; ++m) {
    auto p = mul(b[m], b[n + 2 - m]);
    if (!p) return std::nullopt;
    auto s = add(s1, *p);
    if (!s) return std::nullopt;
    s1 = *s;
  }
  i128 s2 = 0;
  for (int l = 1; l <= n; ++l) {
    for (int m = 1; m <= n + 1 - l; ++m) {
      auto p = mul(b[l], b[m]);
      if (!p) return std::nullopt;
      p = mul(*p, b[n + 2 - l - m]);
      if (!p) return std::nullopt;
      auto s = add(s2, *p);
      if (!s) return std::nullopt;
      s2 = *s;
    }
  }
  auto lin = mul(static_cast<i128>(8) * (9 * static_cast<i128>(n) * n - 1), b[n]);
  auto t1 = mul(3, s1);
  if (!lin || !t1) return std::nullopt;
  auto twice = add(*lin, -*t1);
  if (!twice) return std::nullopt;
  twice = add(*twice, -s2);
  if (!twice) return std::nullopt;
  if (*twice % 2 != 0) {
    throw std::logic_error("b_n recurrence lost integrality");
  }
  return *twice / 2;
}

BRecurrence run_recurrence(int n_max) {
  if (n_max < 0) throw std::invalid_argument("b_coefficients: n_max must be >= 0");
  BRecurrence out;
  std::vector<i128> exact{1, 0};
  std::vector<long double> b{1.0L, 0.0L};
  bool exact_ok = true;
  for (int n = 0; n + 2 <= n_max; ++n) {
    if (exact_ok) {
      if (auto next = next_exact(exact, n)) {
        exact.push_back(*next);
        b.push_back(static_cast<long double>(*next));
        continue;
      }
      exact_ok = false;
    }
    long double s1 = 0, s2 = 0;
    for (int m = 1; m <= n + 1; ++m) s1 += b[m] * b[n + 2 - m];
    for (int l = 1; l <= n; ++l) {
      for (int m = 1; m <= n + 1 - l; ++m) s2 += b[l] * b[m] * b[n + 2 - l - m];
    }
    b.push_back(4.0L * (9.0L * n * n - 1.0L) * b[n] - 1.5L * s1 - 0.5L * s2);
  }
  b.resize(static_cast<std::size_t>(n_max) + 1);
  out.exact_terms = std::min<int>(static_cast<int>(exact.size()), n_max + 1);
  out.values = std::move(b);
  return out;
}

double tail_minus_derivative(double y) {
  const double u = -y;
  return nu0_tail_minus(y) * (0.25 / u + 0.5 * std::sqrt(u));
}

}  // namespace

TailSeries b_coefficients(int n_max) {
  const BRecurrence r = run_recurrence(n_max);
  std::vector<double> c(r.values.begin(), r.values.end());
  return TailSeries(1, std::move(c), 2.0);
}

int exact_b_count(int n_max) { return run_recurrence(n_max).exact_terms; }

double nu0_tail_plus(double y, int n_terms) {
  if (!(y > 0)) throw std::domain_error("nu0_tail_plus requires y > 0");
  if (n_terms < 1) throw std::invalid_argument("nu0_tail_plus requires n_terms >= 1");
  return b_coefficients(n_terms - 1).evaluate(y);
}

double nu0_tail_minus(double y) {
  if (!(y < 0)) throw std::domain_error("nu0_tail_minus requires y < 0");
  const double u = -y;
  return std::pow(u, -0.25) * std::exp(-std::pow(u, 1.5) / 3) / std::sqrt(std::numbers::pi);
}

HastingsMcLeod::HastingsMcLeod(ScalarField field, ScalarField w0, TailSeries tail_plus,
                               double residual_norm, PainleveOptions options, int iterations)
    : field_(std::move(field)),
      w0_(std::move(w0)),
      tail_plus_(std::move(tail_plus)),
      residual_norm_(residual_norm),
      options_(options),
      iterations_(iterations) {}

double HastingsMcLeod::operator()(double y) const {
  if (y > grid().back()) return tail_plus_.evaluate(y, static_cast<std::size_t>(options_.tail_terms));
  if (y < grid().front()) return nu0_tail_minus(y);
  return field_(y);
}

double HastingsMcLeod::derivative(double y) const {
  if (y > grid().back()) {
    return tail_plus_.derivative().evaluate(y, static_cast<std::size_t>(options_.tail_terms));
  }
  if (y < grid().front()) return tail_minus_derivative(y);
  return field_.derivative(y);
}

namespace {

template <class T>
T numerov_rhs(double y, T v) {
  return T(0.25) * (v * v * v - T(y) * v);
}

// Numerov residual at node i, in raw (h^2-scaled) units.
template <class T>
T numerov_residual(std::span<const double> y, std::span<const T> v, T h2, std::size_t i) {
  const T second = (v[i + 1] - v[i]) - (v[i] - v[i - 1]);
  const T f = numerov_rhs(y[i - 1], v[i - 1]) + 10 * numerov_rhs(y[i], v[i]) +
              numerov_rhs(y[i + 1], v[i + 1]);
  return second - h2 / 12 * f;
}

template <class T>
T max_residual(std::span<const double> y, std::span<const T> v, T h2) {
  T r = 0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    r = std::max(r, std::abs(numerov_residual(y, v, h2, i)));
  }
  return r;
}

}  // namespace

double painleve_residual(const Grid& grid, std::span<const double> nu) {
  // Extended precision so the figure reflects the samples, not the evaluation.
  std::vector<long double> v(nu.begin(), nu.end());
  const long double h = grid.step();
  const long double h2 = h * h;
  return static_cast<double>(4 * max_residual<long double>(grid.nodes(), v, h2) / h2);
}

HastingsMcLeod solve_hastings_mcleod(const PainleveOptions& options) {
  const Window w = options.window;
  if (!(w.left > 0 && w.right > 0) || !(options.tol > 0)) {
    throw std::invalid_argument("solve_hastings_mcleod: window ends and tol must be positive");
  }
  auto grid = std::make_shared<const Grid>(
      Grid::uniform_per_unit(-w.left, w.right, options.nodes_per_unit));
  const std::size_t n = grid->size();
  const auto y = grid->nodes();
  using real = long double;
  const real h = grid->step();
  const real h2 = h * h;

  // The iteration runs in extended precision: in double the ODE-unit residual
  // floor (~ulp * 4/h^2) sits near 1e-10 at the default spacing.
  std::vector<real> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::max(std::sqrt(std::max(y[i], 0.0)), 1e-3);
  v.front() = nu0_tail_minus(-w.left);
  v.back() = nu0_tail_plus(w.right, options.tail_terms);

  const std::size_t m = n - 2;
  std::vector<double> lower(m), diag(m), upper(m), rhs(m);
  std::vector<real> trial(n);

  real res = max_residual<real>(y, v, h2);
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (4 * res / h2 <= 1e-3 * options.tol) break;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = k + 1;
      auto dfdv = [&](std::size_t j) { return static_cast<double>(0.25L * (3 * v[j] * v[j] - y[j])); };
      const double hd = static_cast<double>(h2);
      lower[k] = 1 - hd / 12 * dfdv(i - 1);
      diag[k] = -2 - 10 * hd / 12 * dfdv(i);
      upper[k] = 1 - hd / 12 * dfdv(i + 1);
      rhs[k] = -static_cast<double>(numerov_residual<real>(y, v, h2, i));
    }
    const std::vector<double> step = solve_tridiagonal(lower, diag, upper, rhs);
    real lambda = 1.0;
    real trial_res = 0.0;
    for (;;) {
      trial = v;
      for (std::size_t k = 0; k < m; ++k) trial[k + 1] += lambda * step[k];
      trial_res = max_residual<real>(y, trial, h2);
      if (trial_res < res || lambda < 1e-6) break;
      lambda *= 0.5;
    }
    if (!(trial_res < res)) break;
    v.swap(trial);
    res = trial_res;
  }
  // Residual of the converged iterate. Rounding the samples to double adds
  // up to ~1e-10 at h = 1/64; painleve_residual() measures that separately.
  const double ode_residual = static_cast<double>(4 * res / h2);
  std::vector<double> vd(v.begin(), v.end());
  if (!(ode_residual <= options.tol)) {
    throw NonConvergence("Hastings-McLeod Newton iteration stalled", it, ode_residual);
  }

  std::vector<double> d2(n), w0(n);
  for (std::size_t i = 0; i < n; ++i) {
    d2[i] = static_cast<double>(numerov_rhs(y[i], v[i]));
    w0[i] = 3 * vd[i] * vd[i] - y[i];
  }
  std::vector<double> d1 = compact_first_derivative(*grid, vd, d2);
  v.clear();

  for (std::size_t i = 0; i < n; ++i) {
    if (!(vd[i] > 0) || !(w0[i] > 0) || (i + 1 < n && !(vd[i + 1] > vd[i]))) {
      throw SolverFailure("Hastings-McLeod solution violates positivity/monotonicity at y=" +
                          std::to_string(y[i]));
    }
  }

  const TailSeries tail = b_coefficients(options.tail_terms - 1);
  ScalarField field(grid, std::move(vd), std::move(d1), std::move(d2));
  const double y_in_right = w.right - 1.0;
  const double y_in_left = -w.left + 1.0;
  const double mismatch_right = std::abs(field(y_in_right) - tail.evaluate(y_in_right));
  const double mismatch_left = std::abs(field(y_in_left) - nu0_tail_minus(y_in_left));
  if (mismatch_right > options.window_tol || mismatch_left > options.window_tol) {
    throw WindowTooSmall("tail formulas disagree with the interior solution (right " +
                         std::to_string(mismatch_right) + ", left " +
                         std::to_string(mismatch_left) + ")");
  }
  return HastingsMcLeod(std::move(field), ScalarField(grid, std::move(w0)), tail, ode_residual,
                        options, it);
}

}  // namespace tfgp
