#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "nlft/laurent.hpp"

namespace nlft {

// Chordal (Riemann-sphere) distance between two finite points.
double chordal_distance(cdouble x, cdouble y);
// Chordal distance from a finite point to the unit circle.
double chordal_distance_to_circle(cdouble x);

// Roots closer than this (chordal) are considered coincident.
inline constexpr double kRootCoincidenceTol = 1e-9;
// Points within this chordal distance of T are classified as lying on it.
inline constexpr double kCircleTol = 1e-9;
// Evaluation nodes must stay this far from poles.
inline constexpr double kPoleClearance = 1e-8;

// Dense polynomial in z with complex coefficients, ascending order.
// The zero polynomial has an empty coefficient vector and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cdouble> coeffs);

  static Poly constant(cdouble c);
  static Poly monomial(cdouble c, int k);
  static Poly from_roots(const std::vector<cdouble>& roots,
                         cdouble leading = {1.0, 0.0});

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  cdouble coeff(int k) const;
  const std::vector<cdouble>& coeffs() const { return c_; }
  cdouble leading() const;
  double max_abs() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(cdouble s, Poly p);

  cdouble eval(cdouble z) const;
  Poly derivative() const;

  // Reversed-conjugate polynomial z^deg * conj(p(1/conj(z))).
  Poly conj_reversed() const;
  // Plain coefficient reversal z^deg * p(1/z).
  Poly reversed() const;
  // Coefficient-wise conjugation.
  Poly conj_coeffs() const;

  // Synthetic division by (z - root); the remainder is discarded.
  Poly deflated(cdouble root) const;

  // All roots (with multiplicity), found via the companion matrix followed by
  // one Newton polish step. Throws DegenerateLeadingCoefficient when the
  // polynomial trims to zero and RootClassificationAmbiguous never (that is
  // the caller's concern).
  std::vector<cdouble> roots() const;

  // Drop leading coefficients below rel_tol * max_abs().
  Poly trimmed(double rel_tol = kTrimRelTol) const;

  LaurentPoly to_laurent(int lo = 0) const;

 private:
  void strip_exact_zeros();
  std::vector<cdouble> c_;
};

// Mean of log|p| over the unit circle, computed exactly from the roots
// (Jensen): log|leading| + sum over roots outside the closed disc of log|r|.
// Roots within snap_tol of T contribute zero; for self-reflective data (real
// boundary modulus) genuine circle roots have even order and sit exactly on
// T, so the snap removes only the root-finder's splitting error.
double mean_log_modulus(const Poly& p, double snap_tol = 1e-6);
double mean_log_modulus(const LaurentPoly& p, double snap_tol = 1e-6);

// A reduced ratio of polynomials. The denominator is kept monic and common
// roots (within the coincidence tolerance) are cancelled on construction.
class RationalFn {
 public:
  RationalFn();  // zero function 0/1
  RationalFn(Poly num, Poly den);

  static RationalFn constant(cdouble c);
  static RationalFn from_laurent(const LaurentPoly& p);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const {
    return num_.degree() <= 0 && den_.degree() == 0;
  }

  cdouble eval(cdouble z) const;
  // Limit at infinity; throws ValueOutOfRange when the function has a pole
  // there (numerator degree exceeding denominator degree).
  cdouble at_infinity() const;

  RationalFn operator-() const;
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(cdouble s, const RationalFn& p);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);

  // conj(f(1/conj(z))).
  RationalFn star() const;
  // f(1/z), no conjugation.
  RationalFn subst_inv() const;
  // Coefficient-wise conjugation of numerator and denominator.
  RationalFn conj_coeffs() const;

  std::vector<cdouble> zeros() const { return num_.roots(); }
  std::vector<cdouble> poles() const;

  // When the denominator is a pure monomial the function is a Laurent
  // polynomial; returns it, or nullopt otherwise.
  std::optional<LaurentPoly> as_laurent(double rel_tol = kTrimRelTol) const;

 private:
  void reduce();
  Poly num_, den_;
};

// A root grouped with its multiplicity and region relative to T.
enum class CircleRegion { kInside, kOnCircle, kOutside };
struct RootCluster {
  cdouble location;  // cluster mean; projected onto T for circle clusters
  int order = 0;
  CircleRegion region = CircleRegion::kInside;
};

// Groups coincident roots (within cluster_tol, chordal) and classifies each
// cluster against the unit circle. Clusters whose distance to T falls in the
// ambiguous gap [kCircleTol, ambiguous_tol) raise RootClassificationAmbiguous
// with the supplied context string. A cluster straddling T is projected onto
// it; uneven straddles are also flagged ambiguous.
std::vector<RootCluster> classify_roots(const std::vector<cdouble>& roots,
                                        double cluster_tol,
                                        double ambiguous_tol,
                                        const char* context);

}  // namespace nlft
