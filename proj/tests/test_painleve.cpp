#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <vector>

#include "support.hpp"
#include "tfgp/errors.hpp"
#include "tfgp/numerics.hpp"
#include "tfgp/painleve.hpp"

using namespace tfgp;
using tfgp::testing::default_nu0;

namespace {

// Second-order finite differences on [-16, 20], Newton with a hand-written
// Thomas sweep. Boundary values use the leading decaying Airy tail on the left
// and y^{1/2} (1 - y^{-3}/2 - 9.125 y^{-6}) on the right.
double fd_nu0_at_zero(int per_unit) {
  const double lo = -16, hi = 20, h = 1.0 / per_unit;
  const int n = static_cast<int>(std::lround((hi - lo) * per_unit)) + 1;
  std::vector<double> y(n), v(n);
  for (int i = 0; i < n; ++i) {
    y[i] = lo + i * h;
    v[i] = std::sqrt(0.5 * (y[i] + std::sqrt(y[i] * y[i] + 1)));
  }
  const double a = -lo;
  v.front() = std::pow(a, -0.25) * std::exp(-std::pow(a, 1.5) / 3) / std::sqrt(std::numbers::pi);
  v.back() = std::sqrt(hi) * (1 - 0.5 * std::pow(hi, -3) - 9.125 * std::pow(hi, -6));
  std::vector<double> diag(n), rhs(n), c(n);
  for (int it = 0; it < 50; ++it) {
    double worst = 0;
    for (int i = 1; i < n - 1; ++i) {
      rhs[i] = -(4 * (v[i + 1] - 2 * v[i] + v[i - 1]) / (h * h) + y[i] * v[i] - v[i] * v[i] * v[i]);
      diag[i] = -8 / (h * h) + y[i] - 3 * v[i] * v[i];
      worst = std::max(worst, std::abs(rhs[i]));
    }
    const double off = 4 / (h * h);
    // Forward sweep on interior unknowns 1..n-2 with zero boundary updates.
    c[1] = off / diag[1];
    rhs[1] /= diag[1];
    for (int i = 2; i < n - 1; ++i) {
      const double m = diag[i] - off * c[i - 1];
      c[i] = off / m;
      rhs[i] = (rhs[i] - off * rhs[i - 1]) / m;
    }
    for (int i = n - 3; i >= 1; --i) rhs[i] -= c[i] * rhs[i + 1];
    for (int i = 1; i < n - 1; ++i) v[i] += rhs[i];
    if (worst < 1e-11) break;
  }
  return v[static_cast<int>(std::lround(-lo * per_unit))];
}

}  // namespace

TEST(BCoefficients, MatchDirectCoefficientMatching) {
  // Substituting y^{1/2} sum c_k y^{-3k/2} into 4v'' + yv - v^3 = 0 and
  // matching powers by hand gives these b_k = c_k 2^{3k/2}.
  const double expected[] = {1, 0, -4, 0, -584, 0, -341024, 0, -445192864};
  const TailSeries b = b_coefficients(8);
  ASSERT_EQ(b.size(), 9u);
  EXPECT_DOUBLE_EQ(b.scale(), 2.0);
  for (int k = 0; k <= 8; ++k) EXPECT_DOUBLE_EQ(b.coeffs()[k], expected[k]) << "b_" << k;
}

TEST(BCoefficients, OddTermsVanishThroughEleven) {
  const TailSeries b = b_coefficients(11);
  for (int k = 1; k <= 11; k += 2) EXPECT_EQ(b.coeffs()[k], 0.0) << "b_" << k;
  EXPECT_GE(exact_b_count(11), 9);
}

TEST(BCoefficients, TwoTermTailIsSqrtMinusHalfPower) {
  for (double y : {10.0, 25.0}) {
    EXPECT_NEAR(nu0_tail_plus(y, 3), std::sqrt(y) - 0.5 * std::pow(y, -2.5), 1e-15);
  }
}

TEST(HastingsMcLeod, ResidualAndRuntime) {
  const auto t0 = std::chrono::steady_clock::now();
  const HastingsMcLeod nu0 = solve_hastings_mcleod();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LE(nu0.residual_norm(), 1e-10);
  EXPECT_LE(painleve_residual(nu0.grid(), nu0.values()), 1e-9);
  EXPECT_LT(secs, 10.0);
  EXPECT_EQ(nu0.grid().size(), 4481u);
}

TEST(HastingsMcLeod, MonotoneWithPositivePotential) {
  const auto& nu0 = default_nu0();
  const auto v = nu0.values();
  const auto w = nu0.w0().values();
  for (std::size_t i = 1; i < v.size(); ++i) ASSERT_GT(v[i], v[i - 1]) << "node " << i;
  for (std::size_t i = 0; i < w.size(); ++i) ASSERT_GT(w[i], 0.0) << "node " << i;
  for (std::size_t i = 0; i < w.size(); ++i) {
    ASSERT_NEAR(w[i], 3 * v[i] * v[i] - nu0.grid()[i], 1e-13);
  }
}

TEST(HastingsMcLeod, ValueAtOriginAgainstFiniteDifferenceOracle) {
  const double coarse = fd_nu0_at_zero(32), fine = fd_nu0_at_zero(64);
  const double extrapolated = (4 * fine - coarse) / 3;
  EXPECT_NEAR(default_nu0()(0.0), extrapolated, 2e-8);
}

TEST(HastingsMcLeod, ValueAtOriginAgainstStandardNormalization) {
  // In the normalization q'' = x q + 2 q^3, q(0) = 0.36706155154807... and nu0(0) = 2^{5/6} q(0).
  EXPECT_NEAR(default_nu0()(0.0) / std::pow(2.0, 5.0 / 6), 0.3670615515480784, 1e-9);
}

TEST(HastingsMcLeod, LeftTailRatioApproachesOne) {
  const auto& nu0 = default_nu0();
  double prev = INFINITY;
  for (double y : {-4.0, -8.0, -12.0}) {
    const double gap = std::abs(nu0(y) / nu0_tail_minus(y) - 1);
    EXPECT_LT(gap, prev) << y;
    prev = gap;
  }
  EXPECT_LT(prev, 0.02);
  EXPECT_GT(nu0(-8.0), 0.0);
  EXPECT_LT(nu0(-8.0), 1e-3);
}

TEST(HastingsMcLeod, RightTailFiveTermsDecayFast) {
  const auto& nu0 = default_nu0();
  std::vector<double> ys, es;
  for (double y = 20; y <= 36; y += 4) {
    ys.push_back(y);
    es.push_back(std::abs(nu0(y) - nu0_tail_plus(y, 5)));
  }
  EXPECT_LE(fit_loglog(ys, es).slope, -5.5);
}

TEST(HastingsMcLeod, RefinementChangesOriginValueLittle) {
  PainleveOptions fine;
  fine.nodes_per_unit = 128;
  EXPECT_NEAR(solve_hastings_mcleod(fine)(0.0), default_nu0()(0.0), 1e-9);
}

TEST(HastingsMcLeod, RejectsTinyWindow) {
  PainleveOptions o;
  o.window = {3, 4};
  EXPECT_THROW(solve_hastings_mcleod(o), WindowTooSmall);
}

TEST(HastingsMcLeod, EvaluatesBeyondWindowWithTails) {
  const auto& nu0 = default_nu0();
  EXPECT_NEAR(nu0(55.0), nu0_tail_plus(55.0, 9), 1e-15);
  EXPECT_DOUBLE_EQ(nu0(-35.0), nu0_tail_minus(-35.0));
}
