#include "tfgp/numerics.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfgp/errors.hpp"

namespace tfgp {

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs,
                                      double pivot_floor) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n || n == 0) {
    throw std::invalid_argument("solve_tridiagonal: size mismatch");
  }
  std::vector<double> c(n), x(n);
  double scale = std::abs(diag[0]) + std::abs(upper[0]);
  double pivot = diag[0];
  if (std::abs(pivot) <= pivot_floor * scale) {
    throw SingularOperator("tridiagonal pivot vanished at row 0");
  }
  c[0] = upper[0] / pivot;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i] * c[i - 1];
    scale = std::abs(diag[i]) + std::abs(lower[i]) + (i + 1 < n ? std::abs(upper[i]) : 0.0);
    if (std::abs(pivot) <= pivot_floor * scale) {
      throw SingularOperator("tridiagonal pivot vanished at row " + std::to_string(i));
    }
    c[i] = i + 1 < n ? upper[i] / pivot : 0.0;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

double dominance_margin(std::span<const double> lower, std::span<const double> diag,
                        std::span<const double> upper) {
  const std::size_t n = diag.size();
  double margin = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    const double off = (i > 0 ? std::abs(lower[i]) : 0.0) + (i + 1 < n ? std::abs(upper[i]) : 0.0);
    margin = std::min(margin, std::abs(diag[i]) - off);
  }
  return margin;
}

BandMatrix::BandMatrix(std::size_t n, int lower_bw, int upper_bw)
    : n_(n), kl_(lower_bw), ku_(upper_bw), ldab_(2 * lower_bw + upper_bw + 1),
      ab_(static_cast<std::size_t>(ldab_) * n, 0.0) {}

double& BandMatrix::at(std::size_t row, std::size_t col) {
  const long offset = static_cast<long>(row) - static_cast<long>(col);
  if (offset > kl_ || -offset > ku_) {
    throw std::out_of_range("BandMatrix: entry outside band");
  }
  // Column-major band storage with kl extra rows for the LU fill-in.
  const long band_row = kl_ + ku_ + offset;
  return ab_[static_cast<std::size_t>(band_row) + col * static_cast<std::size_t>(ldab_)];
}

std::vector<double> BandMatrix::solve(std::vector<double> rhs) {
  if (rhs.size() != n_) throw std::invalid_argument("BandMatrix: rhs size mismatch");
  std::vector<lapack_int> ipiv(n_);
  const lapack_int info =
      LAPACKE_dgbsv(LAPACK_COL_MAJOR, static_cast<lapack_int>(n_), kl_, ku_, 1, ab_.data(), ldab_,
                    ipiv.data(), rhs.data(), static_cast<lapack_int>(n_));
  if (info != 0) {
    throw SingularOperator("banded solve failed (info=" + std::to_string(info) + ")");
  }
  return rhs;
}

std::vector<double> compact_first_derivative(const Grid& grid, std::span<const double> v,
                                             std::span<const double> f) {
  const std::size_t n = grid.size();
  if (v.size() != n || f.size() != n || n < 5) {
    throw std::invalid_argument("compact_first_derivative: size mismatch");
  }
  const double h = grid.step();
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d[i] = (v[i + 1] - v[i - 1]) / (2 * h) - h * (f[i + 1] - f[i - 1]) / 12;
  }
  d[0] = (-25 * v[0] + 48 * v[1] - 36 * v[2] + 16 * v[3] - 3 * v[4]) / (12 * h);
  const std::size_t m = n - 1;
  d[m] = (25 * v[m] - 48 * v[m - 1] + 36 * v[m - 2] - 16 * v[m - 3] + 3 * v[m - 4]) / (12 * h);
  return d;
}

namespace {

// Pairwise non-uniform Simpson over nodes first, first+stride, ..., last.
double simpson_range(std::span<const double> x, std::span<const double> f, std::size_t first,
                     std::size_t last, std::size_t stride) {
  double sum = 0.0;
  std::size_t i = first;
  for (; i + 2 * stride <= last; i += 2 * stride) {
    const double h0 = x[i + stride] - x[i];
    const double h1 = x[i + 2 * stride] - x[i + stride];
    const double s = h0 + h1;
    sum += s / 6 *
           ((2 - h1 / h0) * f[i] + s * s / (h0 * h1) * f[i + stride] + (2 - h0 / h1) * f[i + 2 * stride]);
  }
  if (i < last) {
    if (i == first) {
      return 0.5 * (x[last] - x[first]) * (f[first] + f[last]);
    }
    // Quadratic through the final three sampled nodes, integrated over the last interval.
    const std::size_t a = i - stride, b = i, c = last;
    auto basis = [&](double p, double q, double r, double lo, double hi) {
      auto prim = [&](double t) { return t * t * t / 3 - (q + r) * t * t / 2 + q * r * t; };
      return (prim(hi) - prim(lo)) / ((p - q) * (p - r));
    };
    sum += f[a] * basis(x[a], x[b], x[c], x[b], x[c]) + f[b] * basis(x[b], x[a], x[c], x[b], x[c]) +
           f[c] * basis(x[c], x[a], x[b], x[b], x[c]);
  }
  return sum;
}

double trapezoid_range(std::span<const double> x, std::span<const double> f, std::size_t first,
                       std::size_t last) {
  double sum = 0.0;
  for (std::size_t i = first; i < last; ++i) sum += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
  return sum;
}

}  // namespace

double integrate_segments(const Grid& grid, std::span<const double> values,
                          std::span<const double> breaks, double* error) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("integrate_segments: size mismatch");
  }
  std::vector<std::size_t> cuts{0};
  for (double b : breaks) {
    if (b <= grid.front() || b >= grid.back()) continue;
    cuts.push_back(grid.node_index(b));
  }
  cuts.push_back(grid.size() - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto x = grid.nodes();
  double total = 0.0;
  double err = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const std::size_t a = cuts[s], b = cuts[s + 1];
    const double fine = simpson_range(x, values, a, b, 1);
    total += fine;
    if (error) {
      if ((b - a) % 4 == 0) {
        err += std::abs(fine - simpson_range(x, values, a, b, 2)) / 15;
      } else {
        err += std::abs(fine - trapezoid_range(x, values, a, b));
      }
    }
  }
  if (error) *error = err;
  return total;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line: need >= 2 points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(std::abs(y[i]));
  }
  return fit_line(lx, ly);
}

}  // namespace tfgp
