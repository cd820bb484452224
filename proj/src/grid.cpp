#include "tfgp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tfgp {

namespace {

std::vector<double> simpson_weights_uniform(std::size_t n, double h) {
  std::vector<double> w(n, 0.0);
  const std::size_t intervals = n - 1;
  if (intervals == 1) {
    w[0] = w[1] = h / 2;
    return w;
  }
  // Leading Simpson panels; a trailing 3/8 panel absorbs an odd count.
  std::size_t simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    w[i] += h / 3;
    w[i + 1] += 4 * h / 3;
    w[i + 2] += h / 3;
  }
  if (simpson_end != intervals) {
    const std::size_t i = simpson_end;
    w[i] += 3 * h / 8;
    w[i + 1] += 9 * h / 8;
    w[i + 2] += 9 * h / 8;
    w[i + 3] += 3 * h / 8;
  }
  return w;
}

std::vector<double> simpson_weights_graded(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> w(n, 0.0);
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const double h0 = x[i + 1] - x[i];
    const double h1 = x[i + 2] - x[i + 1];
    const double s = h0 + h1;
    w[i] += s / 6 * (2 - h1 / h0);
    w[i + 1] += s * s * s / (6 * h0 * h1);
    w[i + 2] += s / 6 * (2 - h0 / h1);
  }
  if (i + 1 < n) {
    // Last lone interval: integrate the quadratic through the final three nodes.
    const double a = x[n - 3], b = x[n - 2], c = x[n - 1];
    // Integrals over [b, c] of the Lagrange basis polynomials.
    auto basis_integral = [&](double p, double q, double r) {
      // L(t) = (t-q)(t-r)/((p-q)(p-r)), integrated over [b, c].
      auto prim = [&](double t) {
        return (t * t * t / 3 - (q + r) * t * t / 2 + q * r * t) / ((p - q) * (p - r));
      };
      return prim(c) - prim(b);
    };
    w[n - 3] += basis_integral(a, b, c);
    w[n - 2] += basis_integral(b, a, c);
    w[n - 1] += basis_integral(c, a, b);
  }
  return w;
}

}  // namespace

Grid::Grid(std::vector<double> nodes, Spacing spacing)
    : nodes_(std::move(nodes)), spacing_(spacing) {
  if (nodes_.size() < 3) {
    throw std::invalid_argument("Grid needs at least 3 nodes");
  }
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    if (!(nodes_[i + 1] > nodes_[i])) {
      throw std::invalid_argument("Grid nodes must be strictly increasing");
    }
  }
  weights_ = spacing_ == Spacing::uniform
                 ? simpson_weights_uniform(nodes_.size(), step())
                 : simpson_weights_graded(nodes_);
}

Grid Grid::uniform(double lo, double hi, std::size_t n_nodes) {
  if (n_nodes < 3 || !(hi > lo)) {
    throw std::invalid_argument("uniform grid needs hi > lo and n_nodes >= 3");
  }
  std::vector<double> x(n_nodes);
  const double h = (hi - lo) / static_cast<double>(n_nodes - 1);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    x[i] = lo + h * static_cast<double>(i);
  }
  x.back() = hi;
  return Grid(std::move(x), Spacing::uniform);
}

Grid Grid::uniform_per_unit(double lo, double hi, int nodes_per_unit) {
  if (nodes_per_unit < 1) {
    throw std::invalid_argument("nodes_per_unit must be positive");
  }
  const double k_lo = lo * nodes_per_unit;
  const double k_hi = hi * nodes_per_unit;
  if (std::abs(k_lo - std::round(k_lo)) > 1e-9 || std::abs(k_hi - std::round(k_hi)) > 1e-9) {
    throw std::invalid_argument("grid ends must be multiples of 1/nodes_per_unit");
  }
  const long i_lo = std::lround(k_lo);
  const long i_hi = std::lround(k_hi);
  if (i_hi - i_lo < 2) {
    throw std::invalid_argument("grid too short");
  }
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(i_hi - i_lo + 1));
  // Dividing exact integers keeps nodes such as 0 and 1 exact.
  for (long i = i_lo; i <= i_hi; ++i) {
    x.push_back(static_cast<double>(i) / nodes_per_unit);
  }
  return Grid(std::move(x), Spacing::uniform);
}

Grid Grid::graded(std::vector<double> nodes) {
  return Grid(std::move(nodes), Spacing::graded);
}

std::size_t Grid::bracket(double x) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  std::size_t i = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return std::min(i, nodes_.size() - 2);
}

std::size_t Grid::node_index(double x, double rel_tol) const {
  const std::size_t i = bracket(x);
  const double tol = rel_tol * length();
  if (std::abs(nodes_[i] - x) <= tol) return i;
  if (std::abs(nodes_[i + 1] - x) <= tol) return i + 1;
  throw std::invalid_argument("value " + std::to_string(x) + " is not a grid node");
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_ || values_.size() != grid_->size()) {
    throw std::invalid_argument("ScalarField: value count does not match grid");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("ScalarField: non-finite sample");
  }
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values, std::vector<double> d1,
                         std::vector<double> d2)
    : ScalarField(std::move(grid), std::move(values)) {
  if (d1.size() != values_.size() || d2.size() != values_.size()) {
    throw std::invalid_argument("ScalarField: derivative count does not match grid");
  }
  d1_ = std::move(d1);
  d2_ = std::move(d2);
}

namespace {

struct HermiteBasis {
  double h0, h1, h2, h3, h4, h5;
};

HermiteBasis quintic(double t) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  return {1 - 10 * t3 + 15 * t4 - 6 * t5,
          t - 6 * t3 + 8 * t4 - 3 * t5,
          0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5,
          0.5 * t3 - t4 + 0.5 * t5,
          -4 * t3 + 7 * t4 - 3 * t5,
          10 * t3 - 15 * t4 + 6 * t5};
}

HermiteBasis quintic_prime(double t) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  return {-30 * t2 + 60 * t3 - 30 * t4,
          1 - 18 * t2 + 32 * t3 - 15 * t4,
          t - 4.5 * t2 + 6 * t3 - 2.5 * t4,
          1.5 * t2 - 4 * t3 + 2.5 * t4,
          -12 * t2 + 28 * t3 - 15 * t4,
          30 * t2 - 60 * t3 + 30 * t4};
}

}  // namespace

double ScalarField::operator()(double x) const {
  const Grid& g = *grid_;
  if (!g.contains(x)) {
    throw std::out_of_range("ScalarField: evaluation point outside grid");
  }
  const std::size_t i = g.bracket(x);
  if (has_derivatives()) {
    const double h = g[i + 1] - g[i];
    const HermiteBasis b = quintic((x - g[i]) / h);
    return values_[i] * b.h0 + h * d1_[i] * b.h1 + h * h * d2_[i] * b.h2 +
           values_[i + 1] * b.h5 + h * d1_[i + 1] * b.h4 + h * h * d2_[i + 1] * b.h3;
  }
  const std::size_t n = g.size();
  const std::size_t m = std::min<std::size_t>(4, n);
  const std::size_t s = std::min(i == 0 ? 0 : i - 1, n - m);
  double sum = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    double l = 1.0;
    for (std::size_t b = 0; b < m; ++b) {
      if (a != b) l *= (x - g[s + b]) / (g[s + a] - g[s + b]);
    }
    sum += l * values_[s + a];
  }
  return sum;
}

double ScalarField::derivative(double x) const {
  const Grid& g = *grid_;
  if (!g.contains(x)) {
    throw std::out_of_range("ScalarField: evaluation point outside grid");
  }
  if (!has_derivatives()) {
    throw std::logic_error("ScalarField: no derivative samples attached");
  }
  const std::size_t i = g.bracket(x);
  const double h = g[i + 1] - g[i];
  const HermiteBasis b = quintic_prime((x - g[i]) / h);
  return (values_[i] * b.h0 + values_[i + 1] * b.h5) / h + d1_[i] * b.h1 + d1_[i + 1] * b.h4 +
         h * (d2_[i] * b.h2 + d2_[i + 1] * b.h3);
}

}  // namespace tfgp
