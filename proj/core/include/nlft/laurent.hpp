#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nlft {

using cdouble = std::complex<double>;

// Trailing/leading coefficients whose magnitude falls below this multiple of
// the largest coefficient are dropped when a polynomial is normalized.
inline constexpr double kTrimRelTol = 1e-12;

// Hard cap on band width; operations that would exceed it throw BandTooWide.
inline constexpr int kMaxBand = 1 << 20;

// A Laurent polynomial sum_{k=lo}^{hi} c_k z^k with complex coefficients.
// The zero polynomial is represented by an empty coefficient vector.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(int lo, std::vector<cdouble> coeffs);

  static LaurentPoly constant(cdouble c);
  static LaurentPoly monomial(cdouble c, int k);

  bool is_zero() const { return coeffs_.empty(); }
  int lo() const;    // lowest exponent; throws on the zero polynomial
  int hi() const;    // highest exponent; throws on the zero polynomial
  int band_width() const { return is_zero() ? 0 : hi() - lo() + 1; }

  // Coefficient of z^k (zero outside the stored band).
  cdouble coeff(int k) const;
  const std::vector<cdouble>& coeffs() const { return coeffs_; }

  // Largest coefficient magnitude (0 for the zero polynomial).
  double max_abs() const;
  // Sum of |c_k|^2, i.e. the squared L^2(T) norm of the boundary function.
  double norm_sq() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  friend LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend LaurentPoly operator-(LaurentPoly lhs, const LaurentPoly& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs);
  friend LaurentPoly operator*(cdouble s, LaurentPoly p);
  friend LaurentPoly operator*(LaurentPoly p, cdouble s) { return s * p; }

  // c*(z) = conj(c(1/conj(z))): conjugate coefficients, negate exponents.
  LaurentPoly star() const;
  // c(z) * z^m.
  LaurentPoly shifted(int m) const;
  // Coefficient-wise conjugation sum conj(c_k) z^k.
  LaurentPoly conj_coeffs() const;
  // Argument reflection c(1/z): negate exponents, keep coefficients.
  LaurentPoly reflect_arg() const;

  // Evaluate at a point; z must be nonzero when negative powers are present.
  cdouble eval(cdouble z) const;

  // Drop leading/trailing coefficients below rel_tol * max_abs().
  LaurentPoly trimmed(double rel_tol = kTrimRelTol) const;

 private:
  void normalize();

  int lo_ = 0;
  std::vector<cdouble> coeffs_;  // coeffs_[i] multiplies z^{lo_ + i}
};

}  // namespace nlft
