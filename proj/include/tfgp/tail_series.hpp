#pragma once

#include <cstddef>
#include <vector>

namespace tfgp {

/// Asymptotic expansion y^p * sum_k c_k (scale*y)^(-3k/2) for y -> +infinity.
///
/// The leading power p is a half-integer, stored as `2p`. Arithmetic
/// (products, sums, derivatives) works on the normalized form (scale == 1);
/// `normalized()` converts. An exact series (monomials, constants and their
/// products) has all coefficients past `size()` equal to zero; an inexact one
/// is only known up to `size()` terms, and sums/products are truncated to the
/// range both operands determine.
class TailSeries {
 public:
  static constexpr double step = 1.5;

  TailSeries() = default;
  TailSeries(int leading_power_x2, std::vector<double> coeffs, double scale = 1.0,
             bool exact = false);

  int leading_power_x2() const { return lead_x2_; }
  double leading_power() const { return 0.5 * lead_x2_; }
  double scale() const { return scale_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  bool exact() const { return exact_; }
  /// Exponent of y carried by term k (normalized form).
  double exponent(std::size_t k) const { return leading_power() - step * static_cast<double>(k); }

  /// Partial sum over the first `n_terms` terms; requires y > 0.
  double evaluate(double y, std::size_t n_terms) const;
  double evaluate(double y) const { return evaluate(y, coeffs_.size()); }
  /// |term k| at y, with k = n_terms (the first omitted term), 0 if absent.
  double term_magnitude(double y, std::size_t k) const;

  TailSeries normalized() const;
  TailSeries truncated(std::size_t n_terms) const;
  TailSeries scaled(double factor) const;
  /// Multiplies by y^(power_x2/2).
  TailSeries times_power(int power_x2) const;
  TailSeries derivative() const;

  friend TailSeries operator*(const TailSeries& a, const TailSeries& b);
  friend TailSeries operator+(const TailSeries& a, const TailSeries& b);
  friend TailSeries operator-(const TailSeries& a, const TailSeries& b);

  /// Constant c as a series (leading power 0).
  static TailSeries constant(double c) { return TailSeries(0, {c}, 1.0, true); }
  /// Monomial c*y^(power_x2/2).
  static TailSeries monomial(double c, int power_x2) {
    return TailSeries(power_x2, {c}, 1.0, true);
  }

  /// Termwise integral over [lo, +infinity). Terms with exponent >= -1 must
  /// vanish; otherwise std::domain_error. `budget` (optional) receives the
  /// magnitude of the last retained nonzero term's integral.
  double integrate_from(double lo, double* budget = nullptr) const;

 private:
  int lead_x2_ = 0;
  std::vector<double> coeffs_;
  double scale_ = 1.0;
  bool exact_ = false;
};

}  // namespace tfgp
