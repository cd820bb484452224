#include "tfgp/tail_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tfgp {

TailSeries::TailSeries(int leading_power_x2, std::vector<double> coeffs, double scale,
                       bool exact)
    : lead_x2_(leading_power_x2), coeffs_(std::move(coeffs)), scale_(scale), exact_(exact) {
  if (!(scale_ > 0)) throw std::invalid_argument("TailSeries: scale must be positive");
}

double TailSeries::evaluate(double y, std::size_t n_terms) const {
  if (!(y > 0)) throw std::domain_error("TailSeries: evaluation requires y > 0");
  const double s = std::pow(scale_ * y, -step);
  n_terms = std::min(n_terms, coeffs_.size());
  // Horner in s.
  double sum = 0.0;
  for (std::size_t k = n_terms; k-- > 0;) sum = sum * s + coeffs_[k];
  return std::pow(y, leading_power()) * sum;
}

double TailSeries::term_magnitude(double y, std::size_t k) const {
  if (k >= coeffs_.size()) return 0.0;
  return std::abs(coeffs_[k]) * std::pow(y, leading_power()) *
         std::pow(scale_ * y, -step * static_cast<double>(k));
}

TailSeries TailSeries::normalized() const {
  if (scale_ == 1.0) return *this;
  std::vector<double> c(coeffs_.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = coeffs_[k] * std::pow(scale_, -step * static_cast<double>(k));
  }
  return TailSeries(lead_x2_, std::move(c), 1.0, exact_);
}

TailSeries TailSeries::truncated(std::size_t n_terms) const {
  std::vector<double> c(coeffs_.begin(),
                        coeffs_.begin() + static_cast<long>(std::min(n_terms, coeffs_.size())));
  return TailSeries(lead_x2_, std::move(c), scale_, exact_ && n_terms >= coeffs_.size());
}

TailSeries TailSeries::scaled(double factor) const {
  TailSeries out = *this;
  for (double& c : out.coeffs_) c *= factor;
  return out;
}

TailSeries TailSeries::times_power(int power_x2) const {
  TailSeries out = normalized();
  out.lead_x2_ += power_x2;
  return out;
}

TailSeries TailSeries::derivative() const {
  TailSeries n = normalized();
  for (std::size_t k = 0; k < n.coeffs_.size(); ++k) n.coeffs_[k] *= n.exponent(k);
  n.lead_x2_ -= 2;
  return n;
}

TailSeries operator*(const TailSeries& a_in, const TailSeries& b_in) {
  const TailSeries a = a_in.normalized();
  const TailSeries b = b_in.normalized();
  if (a.size() == 0 || b.size() == 0) return TailSeries(a.lead_x2_ + b.lead_x2_, {});
  std::size_t n;
  if (a.exact_ && b.exact_) {
    n = a.size() + b.size() - 1;
  } else if (a.exact_) {
    n = b.size();
  } else if (b.exact_) {
    n = a.size();
  } else {
    n = std::min(a.size(), b.size());
  }
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j <= k && j < a.size(); ++j) {
      if (k - j < b.size()) c[k] += a.coeffs_[j] * b.coeffs_[k - j];
    }
  }
  return TailSeries(a.lead_x2_ + b.lead_x2_, std::move(c), 1.0, a.exact_ && b.exact_);
}

TailSeries operator+(const TailSeries& a_in, const TailSeries& b_in) {
  TailSeries a = a_in.normalized();
  TailSeries b = b_in.normalized();
  if (b.lead_x2_ > a.lead_x2_) std::swap(a, b);
  // Leading powers must sit on the same 3/2 lattice.
  const int diff = a.lead_x2_ - b.lead_x2_;
  if (diff % 3 != 0) {
    throw std::invalid_argument("TailSeries: leading powers are not on a common 3/2 lattice");
  }
  const std::size_t shift = static_cast<std::size_t>(diff / 3);
  // Keep the range of exponents both series determine.
  std::size_t n;
  if (a.exact_ && b.exact_) {
    n = std::max(a.size(), b.size() + shift);
  } else if (a.exact_) {
    n = b.size() + shift;
  } else if (b.exact_) {
    n = a.size();
  } else {
    n = std::min(a.size(), b.size() + shift);
  }
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (k < a.size()) c[k] += a.coeffs_[k];
    if (k >= shift && k - shift < b.size()) c[k] += b.coeffs_[k - shift];
  }
  return TailSeries(a.lead_x2_, std::move(c), 1.0, a.exact_ && b.exact_);
}

TailSeries operator-(const TailSeries& a, const TailSeries& b) { return a + b.scaled(-1.0); }

double TailSeries::integrate_from(double lo, double* budget) const {
  if (!(lo > 0)) throw std::domain_error("TailSeries: integration needs lo > 0");
  const TailSeries n = normalized();
  double scale = 0.0;
  for (double c : n.coeffs_) scale = std::max(scale, std::abs(c));
  double sum = 0.0;
  double last = 0.0;
  for (std::size_t k = 0; k < n.size(); ++k) {
    const double c = n.coeffs_[k];
    const double p = n.exponent(k);
    if (p >= -1.0) {
      if (std::abs(c) > 1e-12 * std::max(scale, 1.0)) {
        throw std::domain_error("TailSeries: non-integrable term with exponent " +
                                std::to_string(p));
      }
      continue;
    }
    const double term = -c * std::pow(lo, p + 1) / (p + 1);
    sum += term;
    if (c != 0.0) last = std::abs(term);
  }
  if (budget) *budget = last;
  return sum;
}

}  // namespace tfgp
