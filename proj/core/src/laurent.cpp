#include "nlft/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlft/errors.hpp"

namespace nlft {

namespace {

bool negligible(const cdouble& c, double floor_abs) {
  return std::abs(c) <= floor_abs;
}

}  // namespace

LaurentPoly::LaurentPoly(int lo, std::vector<cdouble> coeffs)
    : lo_(lo), coeffs_(std::move(coeffs)) {
  normalize();
}

LaurentPoly LaurentPoly::constant(cdouble c) { return LaurentPoly(0, {c}); }

LaurentPoly LaurentPoly::monomial(cdouble c, int k) {
  return LaurentPoly(k, {c});
}

void LaurentPoly::normalize() {
  // Strip exact zeros at both ends; an all-zero vector collapses to empty.
  std::size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first] == cdouble(0.0, 0.0)) {
    ++first;
  }
  if (first == coeffs_.size()) {
    coeffs_.clear();
    lo_ = 0;
    return;
  }
  std::size_t last = coeffs_.size();
  while (last > first && coeffs_[last - 1] == cdouble(0.0, 0.0)) {
    --last;
  }
  if (first > 0 || last < coeffs_.size()) {
    coeffs_ = std::vector<cdouble>(coeffs_.begin() + static_cast<long>(first),
                                   coeffs_.begin() + static_cast<long>(last));
    lo_ += static_cast<int>(first);
  }
  if (band_width() > kMaxBand) {
    throw BandTooWide("Laurent band exceeds " + std::to_string(kMaxBand));
  }
}

int LaurentPoly::lo() const {
  if (is_zero()) {
    throw std::logic_error("lo() of the zero polynomial");
  }
  return lo_;
}

int LaurentPoly::hi() const {
  if (is_zero()) {
    throw std::logic_error("hi() of the zero polynomial");
  }
  return lo_ + static_cast<int>(coeffs_.size()) - 1;
}

cdouble LaurentPoly::coeff(int k) const {
  if (is_zero() || k < lo_ || k > hi()) {
    return {0.0, 0.0};
  }
  return coeffs_[static_cast<std::size_t>(k - lo_)];
}

double LaurentPoly::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) {
    m = std::max(m, std::abs(c));
  }
  return m;
}

double LaurentPoly::norm_sq() const {
  double s = 0.0;
  for (const auto& c : coeffs_) {
    s += std::norm(c);
  }
  return s;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& c : out.coeffs_) {
    c = -c;
  }
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  if (rhs.is_zero()) {
    return *this;
  }
  if (is_zero()) {
    *this = rhs;
    return *this;
  }
  const int new_lo = std::min(lo_, rhs.lo_);
  const int new_hi = std::max(hi(), rhs.hi());
  std::vector<cdouble> out(static_cast<std::size_t>(new_hi - new_lo + 1),
                           cdouble(0.0, 0.0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[static_cast<std::size_t>(lo_ - new_lo) + i] += coeffs_[i];
  }
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
    out[static_cast<std::size_t>(rhs.lo_ - new_lo) + i] += rhs.coeffs_[i];
  }
  lo_ = new_lo;
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
  *this += -rhs;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) {
    return {};
  }
  std::vector<cdouble> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1,
                           cdouble(0.0, 0.0));
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
    }
  }
  return LaurentPoly(lhs.lo_ + rhs.lo_, std::move(out));
}

LaurentPoly operator*(cdouble s, LaurentPoly p) {
  if (s == cdouble(0.0, 0.0)) {
    return {};
  }
  for (auto& c : p.coeffs_) {
    c *= s;
  }
  return p;
}

LaurentPoly LaurentPoly::star() const {
  if (is_zero()) {
    return {};
  }
  std::vector<cdouble> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i] = std::conj(coeffs_[coeffs_.size() - 1 - i]);
  }
  return LaurentPoly(-hi(), std::move(out));
}

LaurentPoly LaurentPoly::shifted(int m) const {
  if (is_zero()) {
    return {};
  }
  LaurentPoly out = *this;
  out.lo_ += m;
  if (out.band_width() > kMaxBand) {
    throw BandTooWide("shift exceeds band cap");
  }
  return out;
}

LaurentPoly LaurentPoly::conj_coeffs() const {
  LaurentPoly out = *this;
  for (auto& c : out.coeffs_) {
    c = std::conj(c);
  }
  return out;
}

LaurentPoly LaurentPoly::reflect_arg() const {
  if (is_zero()) {
    return {};
  }
  std::vector<cdouble> out(coeffs_.rbegin(), coeffs_.rend());
  return LaurentPoly(-hi(), std::move(out));
}

cdouble LaurentPoly::eval(cdouble z) const {
  if (is_zero()) {
    return {0.0, 0.0};
  }
  if (lo_ < 0 && z == cdouble(0.0, 0.0)) {
    throw PoleOnGrid("evaluating negative powers at z = 0");
  }
  // Horner in z over the band, then multiply by z^{lo}.
  cdouble acc(0.0, 0.0);
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * z + coeffs_[i];
  }
  if (lo_ != 0) {
    acc *= std::pow(z, cdouble(static_cast<double>(lo_), 0.0));
  }
  return acc;
}

LaurentPoly LaurentPoly::trimmed(double rel_tol) const {
  if (is_zero()) {
    return {};
  }
  const double floor_abs = rel_tol * max_abs();
  std::size_t first = 0;
  std::size_t last = coeffs_.size();
  while (first < last && negligible(coeffs_[first], floor_abs)) {
    ++first;
  }
  while (last > first && negligible(coeffs_[last - 1], floor_abs)) {
    --last;
  }
  if (first == last) {
    return {};
  }
  return LaurentPoly(
      lo_ + static_cast<int>(first),
      std::vector<cdouble>(coeffs_.begin() + static_cast<long>(first),
                           coeffs_.begin() + static_cast<long>(last)));
}

}  // namespace nlft
