#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>

#include <cmath>

#include "tfgp/errors.hpp"
#include "tfgp/lemma.hpp"

using namespace tfgp;

TEST(TestIntegrand, ClosedFormMoments) {
  const TestIntegrand g = TestIntegrand::family(3.5, 2, 3);
  EXPECT_DOUBLE_EQ(g.closed_form_integral(), 0.5 + 3 / 2.5);
  EXPECT_DOUBLE_EQ(g.closed_form_first_moment(), -0.25 + 9 * (1 / 1.5 - 1 / 2.5));
  EXPECT_DOUBLE_EQ(g.tail_amplitude(), std::pow(3.0, 3.5));
  EXPECT_THROW(TestIntegrand::family(1.0).closed_form_integral(), std::domain_error);
  EXPECT_THROW(TestIntegrand::family(2.0).closed_form_first_moment(), std::domain_error);
  EXPECT_DOUBLE_EQ(TestIntegrand::left(4).closed_form_integral(), 0.25);
}

TEST(TruncatedIntegral, PlanarCaseIsElementary) {
  // d=2 has weight 1: Int_{-inf}^T g = 1/k + c/(alpha-1) (1 - (1+T/c)^{1-alpha}).
  for (double alpha : {0.5, 1.5, 2.5}) {
    const TestIntegrand g = TestIntegrand::family(alpha, 2, 3);
    for (double eps : {1e-2, 1e-3}) {
      const double T = std::pow(eps, -2.0 / 3);
      const double exact = 0.5 + 3 / (alpha - 1) * (1 - std::pow(1 + T / 3, 1 - alpha));
      EXPECT_NEAR(truncated_weighted_integral(g, eps, 2), exact, 1e-10 * std::abs(exact));
    }
  }
}

TEST(TruncatedIntegral, ConstantTailAgainstBetaFunction) {
  // With g = 1 on [0, T] the weighted integral is T B(1, d/2) = 2T/d; the left part is about 1.
  const TestIntegrand g = TestIntegrand::family(0.0, 1, 1);
  for (int d = 1; d <= 3; ++d) {
    const double eps = 1e-3, T = std::pow(eps, -2.0 / 3);
    const double v = truncated_weighted_integral(g, eps, d);
    EXPECT_NEAR(v - T * boost::math::beta(1.0, 0.5 * d), 1.0, 0.05) << d;
  }
}

TEST(TruncatedIntegral, RejectsBadArguments) {
  const TestIntegrand g = TestIntegrand::family(1.5);
  EXPECT_THROW(truncated_weighted_integral(g, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(truncated_weighted_integral(g, 0.1, 4), std::invalid_argument);
}

TEST(Prediction, CaseMismatchForSmallAlpha) {
  EXPECT_THROW(lemma_prediction(TestIntegrand::family(1.0), 0.01, 1, 2), CaseMismatch);
  EXPECT_THROW(lemma_prediction(TestIntegrand::family(2.0), 0.01, 1, 3), CaseMismatch);
  EXPECT_THROW(lemma_prediction(TestIntegrand::family(2.0), 0.01, 1, 4), CaseMismatch);
  EXPECT_NO_THROW(lemma_prediction(TestIntegrand::left(), 0.01, 1, 3));
}

TEST(Prediction, CaseOneConstant) {
  const TestIntegrand g = TestIntegrand::family(0.5, 1, 4);
  EXPECT_NEAR(lemma_prediction(g, 0.01, 3, 1), 2 * boost::math::beta(0.5, 1.5), 1e-14);
}

TEST(Orders, CaseOneGrowthWithinFactorThree) {
  for (int d = 1; d <= 3; ++d) {
    const auto row = lemma_order_check(TestIntegrand::family(0.5), d, 1, lemma_eps_list());
    EXPECT_TRUE(row.pass) << d;
    EXPECT_LE(row.bound_ratio_max, 3.0);
    EXPECT_GE(row.bound_ratio_min, 1.0 / 3);
  }
}

TEST(Orders, PlanarCasesMatchPredictedOrders) {
  for (int lemma_case : {2, 3}) {
    const double alpha = lemma_case == 2 ? 1.5 : 2.5;
    const auto row = lemma_order_check(TestIntegrand::family(alpha), 2, lemma_case, lemma_eps_list());
    EXPECT_NEAR(row.slope, lemma_expected_order(lemma_case), 0.1) << lemma_case;
  }
  const auto row = lemma_order_check(TestIntegrand::family(1.5), 3, 2, lemma_eps_list());
  EXPECT_NEAR(row.slope, 1.0 / 3, 0.1);
}

TEST(Orders, VanishingLeadingCoefficientGivesFasterDecay) {
  // For a y^{-alpha} tail the eps^{2(alpha-1)/3} error term carries 1/Gamma(1 - alpha + d/2),
  // which vanishes at (alpha, d) = (3/2, 1), (5/2, 1) and (5/2, 3).
  const auto eps = lemma_eps_list();
  const auto c2 = lemma_order_check(TestIntegrand::family(1.5), 1, 2, eps);
  EXPECT_GT(c2.slope, 1.0 / 3 + 0.2);
  EXPECT_FALSE(c2.pass);
  for (int d : {1, 3}) {
    const auto c3 = lemma_order_check(TestIntegrand::family(2.5), d, 3, eps);
    EXPECT_GT(c3.slope, 1.0 + 0.2) << d;
    EXPECT_FALSE(c3.pass);
  }
}

TEST(Orders, LeftSupportedIntegrandIsAtLeastFourThirds) {
  for (int d : {1, 3}) {
    const auto row = lemma_order_check(TestIntegrand::left(), d, 3, lemma_eps_list());
    EXPECT_TRUE(row.bound_only);
    EXPECT_GE(row.slope, 4.0 / 3 - 0.1) << d;
  }
  const auto exact = lemma_order_check(TestIntegrand::left(), 2, 3, lemma_eps_list());
  EXPECT_TRUE(std::isinf(exact.slope));
  EXPECT_TRUE(exact.pass);
}

TEST(Orders, TableCoversEveryCaseAndDimension) {
  const auto rows = lemma_order_table();
  EXPECT_EQ(rows.size(), 24u);
  for (int lemma_case = 1; lemma_case <= 3; ++lemma_case) {
    for (int d = 1; d <= 3; ++d) {
      int n = 0;
      for (const auto& r : rows) n += r.lemma_case == lemma_case && r.dimension == d && !r.bound_only;
      EXPECT_EQ(n, 2) << lemma_case << " " << d;
    }
  }
}
