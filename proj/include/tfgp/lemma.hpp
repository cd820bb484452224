#pragma once

#include <vector>

namespace tfgp {

/// g(y) = exp(k min(y,0)) (1 + y_+/c)^{-alpha}, or exp(k y) 1{y<0} when
/// `left_only` is set. Moments are closed forms.
struct TestIntegrand {
  double k = 1;
  double c = 1;
  double alpha = 1.5;
  bool left_only = false;

  static TestIntegrand family(double alpha, double k = 1, double c = 1) {
    return {k, c, alpha, false};
  }
  static TestIntegrand left(double k = 1) { return {k, 1, 0, true}; }

  double operator()(double y) const;
  /// Int_R g; requires alpha > 1 unless left_only.
  double closed_form_integral() const;
  /// Int_R y g; requires alpha > 2 unless left_only.
  double closed_form_first_moment() const;
  /// A in g ~ A y^{-alpha} as y -> infinity (0 when left_only).
  double tail_amplitude() const;
};

/// Int_{-inf}^{eps^{-2/3}} g(y) (1 - eps^{2/3} y)^{d/2-1} dy. The last half of
/// the range is integrated in u with y = T(1-u^2), which removes the endpoint
/// singularity for d=1. Throws QuadratureBudget when the estimated error
/// exceeds `tol` relative to the value.
double truncated_weighted_integral(const TestIntegrand& g, double epsilon, int d,
                                   double tol = 1e-12);

/// Case 1: the constant K of the growth bound K eps^{-1/3}, K = A B(1/2, d/2).
/// Case 2: Int g. Case 3: Int g - (d/2-1) eps^{2/3} Int y g.
/// Throws CaseMismatch when alpha is too small for the case.
double lemma_prediction(const TestIntegrand& g, double epsilon, int d, int lemma_case);

/// Expected log-log slope of the prediction error (case 1: of the integral itself).
double lemma_expected_order(int lemma_case);

struct LemmaOrderRow {
  int lemma_case = 0;
  int dimension = 0;
  TestIntegrand g;
  std::vector<double> eps;
  /// Case 1: the integral; cases 2, 3: |integral - prediction|.
  std::vector<double> error;
  double slope = 0;
  double expected = 0;
  /// Case 1: max and min of integral / (K eps^{-1/3}).
  double bound_ratio_max = 0;
  double bound_ratio_min = 0;
  /// Only slope >= expected - tol is required (faster decay allowed).
  bool bound_only = false;
  bool pass = false;
};

/// Five eps values geometrically spaced from 1e-2 down to 1e-4.
std::vector<double> lemma_eps_list();

/// Fits the error slope over `eps`. A left-supported g is always a bound check
/// against order 4/3.
LemmaOrderRow lemma_order_check(const TestIntegrand& g, int d, int lemma_case,
                                const std::vector<double>& eps, bool bound_only = false,
                                double slope_tol = 0.1);

/// Every (case, d) pair with two integrands per case (alpha = 1/2, 3/2, 5/2),
/// plus bound-only case-3 rows for alpha = 3 and for a left-supported g.
std::vector<LemmaOrderRow> lemma_order_table();

}  // namespace tfgp
