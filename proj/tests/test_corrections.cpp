#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "support.hpp"
#include "tfgp/corrections.hpp"
#include "tfgp/errors.hpp"

using namespace tfgp;
using tfgp::testing::default_corrections;
using tfgp::testing::default_nu0;

TEST(IndexSet, MatchesBruteForceEnumeration) {
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::array<int, 3>> brute;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (a + b + c == n) brute.push_back({a, b, c});
    auto got = cubic_index_set(n);
    std::sort(brute.begin(), brute.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, brute) << "n=" << n;
  }
  EXPECT_TRUE(cubic_index_set(1).empty());
  EXPECT_EQ(cubic_index_set(2).size(), 3u);
}

TEST(Forcing, FirstOrderIsDerivativeTerms) {
  const auto& nu0 = default_nu0();
  for (int d = 1; d <= 3; ++d) {
    const ScalarField f = forcing_F_n(1, d, {}, nu0);
    const auto& g = nu0.grid();
    for (std::size_t i = 0; i < g.size(); i += 97) {
      const double expect = -2.0 * d * nu0.first_derivative()[i] - 4 * g[i] * nu0.second_derivative()[i];
      ASSERT_NEAR(f[i], expect, 1e-12 * (1 + std::abs(expect)));
    }
    const std::size_t z = g.node_index(0.0);
    EXPECT_NEAR(f[z], -2.0 * d * nu0.first_derivative()[z], 1e-14);
  }
}

TEST(Forcing, SecondOrderCubicTermIsThreeNu0Nu1Squared) {
  const auto& nu0 = default_nu0();
  const auto& cs = default_corrections(2);
  const ScalarField f = forcing_F_n(2, 2, std::span(cs.data(), 1), nu0);
  const auto& nu1 = cs[0].field;
  const auto& g = nu0.grid();
  for (std::size_t i = 0; i < g.size(); i += 101) {
    const double expect = -3 * nu0.values()[i] * nu1[i] * nu1[i] - 4 * nu1.first_derivative()[i] -
                          4 * g[i] * nu1.second_derivative()[i];
    ASSERT_NEAR(f[i], expect, 1e-12 * (1 + std::abs(expect)));
  }
}

TEST(Forcing, MissingPriorThrows) {
  EXPECT_THROW(forcing_F_n(3, 1, std::span(default_corrections(1).data(), 1), default_nu0()),
               MissingPrior);
}

TEST(LayerEquation, LinearInForcing) {
  const auto& nu0 = default_nu0();
  const ScalarField f = forcing_F_n(1, 3, {}, nu0);
  std::vector<double> f2(f.values().begin(), f.values().end());
  for (double& x : f2) x *= 2;
  const ScalarField a = solve_layer_equation(nu0, f.values(), 0.0);
  const ScalarField b = solve_layer_equation(nu0, f2, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_NEAR(b[i], 2 * a[i], 1e-13 * (1 + std::abs(a[i])));
}

TEST(LayerEquation, ManufacturedSolution) {
  // v = exp(-y^2/8) gives -4 v'' = (1 - y^2/4) v.
  const auto& nu0 = default_nu0();
  const auto& g = nu0.grid();
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double y = g[i], v = std::exp(-y * y / 8);
    f[i] = (1 - y * y / 4) * v + nu0.w0()[i] * v;
  }
  double residual = 0, margin = 0;
  const ScalarField s = solve_layer_equation(nu0, f, 0.0, &residual, &margin);
  EXPECT_GT(margin, 0.0);
  for (std::size_t i = 0; i < g.size(); i += 7) {
    ASSERT_NEAR(s[i], std::exp(-g[i] * g[i] / 8), 1e-9) << g[i];
  }
}

TEST(Corrections, ResidualAndDecay) {
  for (int d = 1; d <= 3; ++d) {
    for (const auto& cf : default_corrections(d)) {
      EXPECT_LE(cf.residual_norm, 1e-8) << "d=" << d << " n=" << cf.order;
      EXPECT_GT(cf.dominance_margin, 0.0);
      EXPECT_EQ(cf.field[0], 0.0);
    }
    const auto& nu1 = default_corrections(d)[0];
    for (double y = -30; y < -15; y += 0.5) EXPECT_LT(std::abs(nu1(y)), 1e-8) << "d=" << d << " y=" << y;
  }
}

TEST(Corrections, FirstOrderTailsFollowTheirPowers) {
  for (int d : {2, 3}) {
    const auto& nu1 = default_corrections(d)[0];
    double prev = INFINITY;
    for (double y : {10.0, 20.0, 30.0}) {
      const double gap = std::abs(std::pow(y, 1.5) * nu1(y) - 0.5 * (1 - d));
      EXPECT_LT(gap, prev) << "d=" << d << " y=" << y;
      prev = gap;
    }
    EXPECT_LT(prev, 0.01 * std::abs(0.5 * (1 - d)));
  }
  const auto& nu1 = default_corrections(1)[0];
  EXPECT_NEAR(std::pow(30.0, 4.5) * nu1(30.0), 7.5, 0.1 * 7.5);
}

TEST(Corrections, TailCoefficientsFromRecurrence) {
  EXPECT_DOUBLE_EQ(default_corrections(1)[0].tail.normalized().coeffs()[2], 7.5);
  EXPECT_DOUBLE_EQ(default_corrections(2)[0].tail.normalized().coeffs()[0], -0.5);
  EXPECT_DOUBLE_EQ(default_corrections(3)[0].tail.normalized().coeffs()[0], -1.0);
}

TEST(Corrections, TailMatchesFieldAtRightEnd) {
  for (int d = 1; d <= 3; ++d) {
    for (const auto& cf : default_corrections(d)) {
      for (double y : {30.0, 35.0, 39.0}) {
        ASSERT_NEAR(cf(y), cf.tail.evaluate(y), 1e-8) << "d=" << d << " n=" << cf.order;
      }
    }
  }
}

TEST(TailFit, ExponentAndCoefficient) {
  const TailFit f3 = correction_tail_fit(default_corrections(3)[0]);
  EXPECT_NEAR(f3.exponent, -1.5, 0.1);
  EXPECT_NEAR(f3.coefficient, -1.0, 0.05);
  const TailFit f2 = correction_tail_fit(default_corrections(2)[0]);
  EXPECT_NEAR(f2.coefficient, -0.5, 0.025);
  const TailFit f1 = correction_tail_fit(default_corrections(1)[0]);
  EXPECT_NEAR(f1.exponent, -4.5, 0.2);
}

TEST(TailFit, RequiresLongWindow) {
  PainleveOptions o;
  o.window = {20, 24};
  const HastingsMcLeod short_nu0 = solve_hastings_mcleod(o);
  const auto cs = solve_corrections(1, 3, short_nu0);
  EXPECT_THROW(correction_tail_fit(cs[0]), WindowTooSmall);
}

TEST(Corrections, GridRefinementAgreement) {
  PainleveOptions o;
  o.nodes_per_unit = 128;
  const HastingsMcLeod fine = solve_hastings_mcleod(o);
  for (int d = 1; d <= 3; ++d) {
    const auto cs = solve_corrections(2, d, fine);
    EXPECT_NEAR(cs[0](0.0), default_corrections(d)[0](0.0), 1e-8);
    EXPECT_NEAR(cs[1](0.0), default_corrections(d)[1](0.0), 1e-8);
  }
}
