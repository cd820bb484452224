#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "support.hpp"
#include "tfgp/constants.hpp"
#include "tfgp/errors.hpp"
#include "tfgp/gp_solver.hpp"
#include "tfgp/numerics.hpp"

using namespace tfgp;
using tfgp::testing::default_corrections;
using tfgp::testing::default_nu0;

namespace {

const GroundState& state(int d, double eps) {
  static std::map<std::pair<int, double>, GroundState> cache;
  const auto key = std::make_pair(d, eps);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, solve_ground_state(eps, d, default_nu0())).first;
  return it->second;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(GroundState, EnergyIdentities) {
  for (int d = 1; d <= 3; ++d) {
    for (double eps : {0.16, 0.04}) {
      const GroundState& s = state(d, eps);
      EXPECT_LT(rel(s.E_total, -0.5 * s.quartic), 1e-8) << d << " " << eps;
      EXPECT_LT(rel(s.E_kinetic, 2 * s.E_total - s.E_potential), 1e-8) << d << " " << eps;
      EXPECT_LE(s.residual_norm, 1e-10);
    }
  }
}

TEST(GroundState, EnergiesRecomputeConsistently) {
  GroundState s = state(2, 0.08);
  const double before = s.E_total;
  const Energies e = energies(s);
  EXPECT_NEAR(e.total, before, 1e-14);
  EXPECT_NEAR(e.quartic, s.quartic, 1e-14);
}

TEST(GroundState, PositiveWithMonotoneDecayOutside) {
  for (int d = 1; d <= 3; ++d) {
    const GroundState& s = state(d, 0.08);
    const auto r = s.profile.grid().nodes();
    const auto v = s.profile.values();
    const double layer = 1 + 2 * std::pow(0.08, 2.0 / 3);
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      ASSERT_GT(v[i], 0.0) << "d=" << d << " r=" << r[i];
      if (r[i] > layer) ASSERT_LT(v[i + 1], v[i]) << "d=" << d << " r=" << r[i];
    }
  }
}

TEST(GroundState, ThomasFermiAwayFromBoundary) {
  const GroundState& s = state(3, 0.04);
  for (double r : {0.0, 0.3, 0.6}) {
    EXPECT_NEAR(s.profile(r), std::sqrt(1 - r * r), 0.01) << r;
  }
}

TEST(GroundState, GridRefinementConvergesAtFourthOrder) {
  GroundStateOptions coarse, mid, fine;
  coarse.layer_step = 1.0 / 32;
  mid.layer_step = 1.0 / 64;
  fine.layer_step = 1.0 / 128;
  const double e = 0.08;
  const double a = solve_ground_state(e, 2, default_nu0(), coarse).E_total;
  const double b = solve_ground_state(e, 2, default_nu0(), mid).E_total;
  const double c = solve_ground_state(e, 2, default_nu0(), fine).E_total;
  EXPECT_GT(std::abs(a - b) / std::abs(b - c), 10.0);
}

TEST(GroundState, LayerProfileApproachesNu0) {
  double prev = INFINITY;
  for (double eps : {0.16, 0.08, 0.04}) {
    const auto R0 = extract_remainder(state(1, eps), default_nu0(), {}, 0);
    const double scale = std::pow(eps, 2.0 / 3);
    double worst = 0;
    for (std::size_t i = 0; i < R0.size(); ++i) {
      const double y = R0.grid()[i];
      if (y >= -5 && y <= 5) worst = std::max(worst, scale * std::abs(R0[i]));
    }
    EXPECT_LT(worst, prev) << eps;
    prev = worst;
  }
}

TEST(Remainder, BoundedAndTendsToNextCorrection) {
  for (int d = 1; d <= 3; ++d) {
    const auto& nu = default_corrections(d);
    double lo = INFINITY, hi = 0, prev_gap = INFINITY;
    for (double eps : {0.2, 0.1, 0.05}) {
      const auto R0 = extract_remainder(state(d, eps), default_nu0(), {}, 0);
      double m = 0;
      for (std::size_t i = 0; i < R0.size(); ++i) {
        const double y = R0.grid()[i];
        if (y >= -10 && y <= 10) m = std::max(m, std::abs(R0[i]));
      }
      lo = std::min(lo, m);
      hi = std::max(hi, m);
      const double gap = std::abs(R0(0.0) - nu[0](0.0));
      EXPECT_LT(gap, prev_gap) << "d=" << d << " eps=" << eps;
      prev_gap = gap;
    }
    EXPECT_LT(hi / lo, 2.0) << "d=" << d;
  }
}

TEST(Remainder, HigherOrderTruncationIsSmaller) {
  for (int d = 1; d <= 3; ++d) {
    const auto& nu = default_corrections(d);
    const double eps = 0.1, s = std::pow(eps, 2.0 / 3);
    const auto R0 = extract_remainder(state(d, eps), default_nu0(), nu, 0);
    const auto R1 = extract_remainder(state(d, eps), default_nu0(), nu, 1);
    double m0 = 0, m1 = 0;
    for (std::size_t i = 0; i < R0.size(); ++i) {
      const double y = R0.grid()[i];
      if (y < -10 || y > 10) continue;
      m0 = std::max(m0, s * std::abs(R0[i]));
      m1 = std::max(m1, s * s * std::abs(R1[i]));
    }
    EXPECT_LT(m1, m0) << "d=" << d;
  }
}

TEST(Verify, RemainderSlopeAboveThreshold) {
  for (int d = 1; d <= 3; ++d) {
    const auto li = layer_integrals(d, default_nu0(), default_corrections(d)[0]);
    const auto total = energy_expansion_coeffs(d, li);
    std::vector<GroundState> states;
    for (double eps : {0.16, 0.08, 0.04, 0.02}) states.push_back(state(d, eps));
    const VerificationReport rep = verify_expansion(states, total);
    EXPECT_TRUE(rep.pass) << "d=" << d << " slope=" << rep.slope;
    EXPECT_GE(rep.slope, 2.7);

    // Without the eps^{8/3} term the remainder is only O(eps^{8/3}).
    ExpansionCoefficients no83 = total;
    no83.c_eps83 = 0;
    const VerificationReport worse = verify_expansion(states, no83);
    EXPECT_LT(worse.slope, 2.7) << "d=" << d;
    EXPECT_FALSE(worse.pass) << "d=" << d;
    double prev = 0;
    for (std::size_t i = 0; i + 1 < states.size(); ++i) {
      const double a = std::abs(states[i].E_total - no83.evaluate(states[i].epsilon));
      const double b = std::abs(states[i + 1].E_total - no83.evaluate(states[i + 1].epsilon));
      const double local = std::log(a / b) / std::log(states[i].epsilon / states[i + 1].epsilon);
      EXPECT_GT(local, prev) << "d=" << d << " i=" << i;
      prev = local;
    }
    EXPECT_NEAR(prev, 8.0 / 3, 0.2) << "d=" << d;
  }
}

TEST(Verify, DroppingLogCoefficientExposesIt) {
  const int d = 1;
  const auto li = layer_integrals(d, default_nu0(), default_corrections(d)[0]);
  ExpansionCoefficients c = energy_expansion_coeffs(d, li);
  const double c_log = c.c_log;
  c.c_log = 0;
  const double eps = 0.02;
  const double delta = state(d, eps).E_total - c.evaluate(eps);
  EXPECT_NEAR(delta / (eps * eps * std::log(1 / eps)), -c_log, 0.25 * std::abs(c_log));
}

TEST(Verify, RejectsBadEpsLists) {
  const auto li = layer_integrals(1, default_nu0(), default_corrections(1)[0]);
  const auto c = energy_expansion_coeffs(1, li);
  EXPECT_THROW(verify_expansion(1, {0.16, 0.08, 0.04}, c, default_nu0()), std::invalid_argument);
  EXPECT_THROW(verify_expansion(1, {0.3, 0.16, 0.08, 0.04}, c, default_nu0()), std::invalid_argument);
  EXPECT_THROW(verify_expansion(1, {0.04, 0.08, 0.16, 0.2}, c, default_nu0()), std::invalid_argument);
  EXPECT_THROW(verify_expansion(2, {0.16, 0.08, 0.04, 0.02}, c, default_nu0()), CaseMismatch);
}

TEST(GroundState, RejectsBadInput) {
  EXPECT_THROW(solve_ground_state(0.0, 1, default_nu0()), std::invalid_argument);
  EXPECT_THROW(solve_ground_state(0.1, 4, default_nu0()), std::invalid_argument);
  GroundStateOptions o;
  o.R_max = 1.01;
  EXPECT_THROW(solve_ground_state(0.1, 1, default_nu0(), o), std::invalid_argument);
}
