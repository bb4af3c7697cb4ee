#pragma once

#include <cstddef>
#include <vector>

#include "nlft/pair.hpp"
#include "nlft/rational.hpp"

namespace nlft {

// Diagonal and subdiagonal of the Hessenberg matrix of multiplication by z
// in the orthonormal-polynomial basis attached to a half-line sequence.
struct HessenbergBand {
  std::vector<cdouble> diag;    // J_{ii}, each of modulus < 1
  std::vector<double> subdiag;  // J_{i+1,i}, strictly positive
};

// A probability-type measure on the unit circle, stored as nonnegative
// density samples w(z_j) on the standard grid; total_mass is the grid
// quadrature (the mean), equal to 1 for densities from finite sequences.
struct MeasureDensity {
  std::vector<double> values;
  double total_mass = 0.0;
};

// Herglotz function m(z) = (1 - r(z)) / (1 + r(z)) with r = b/a*, evaluated
// at a point of the open disc. Re m >= 0 there; m(0) = 1 whenever r(0) = 0
// (sequences supported on indices >= 1). Throws NotInH when b/a* is not
// analytic in the disc and ValueOutOfRange for |z| >= 1.
cdouble herglotz_m(const SU11Pair& p, cdouble z);

// Density w = 1/((a* + b)(a + b*)) = 1/|a + conj(b)|^2 on the circle for the
// transform of a finite sequence supported on indices >= 1; the grid is
// sized to resolve the peaks of 1/|phi_N|^2.
MeasureDensity measure_density_finite(const CoefficientSequence& F);

// Orthonormal polynomials phi_0..phi_N for the measure above, via
// phi_n = z^n (a_n + b_n*) with (a_n, b_n) the transform of F restricted to
// [1, n]. phi_n has exact degree n and positive leading coefficient
// prod_{k<=n} (1 - |F_k|^2)^{-1/2}.
std::vector<Poly> orthogonal_polys(const CoefficientSequence& F, int N);

// Closed-form band of the multiplication-by-z matrix:
//   subdiag[i] = (1 - |F_{i+1}|^2)^{1/2},
//   diag[0]    = -conj(F_1),
//   diag[i]    = -F_i conj(F_{i+1})   (i >= 1),
// with F read as zero beyond its window. Entries 0..N on both bands.
HessenbergBand hessenberg_entries(const CoefficientSequence& F, int N);

// Modified Gram-Schmidt on the monomials z^0..z^N under the grid inner
// product <f, g> = mean f conj(g) w: orthonormal polynomials with positive
// leading coefficients, plus the full matrix of f -> z f in that basis
// (matrix[j][k] = <z phi_k, phi_j>; Hessenberg up to quadrature error, with
// orthonormal columns on the leading N x N block). Throws RankDeficient when
// a norm collapses (measure numerically supported on too few points).
struct GramSchmidtResult {
  std::vector<Poly> polys;
  std::vector<std::vector<cdouble>> matrix;  // (N+1) x (N+1), row-major
};
GramSchmidtResult gram_schmidt_oracle(const MeasureDensity& w, int N);

// Both sides of the prediction identity: lhs is the least-squares minimum of
// int |1 - f|^2 w over polynomials f of degree <= degree_cut with f(0) = 0,
// rhs = exp(int log w). For finite sequences both tend to
// prod (1 - |F_n|^2) as the degree cut grows.
struct SzegoResult {
  double lhs = 0.0;
  double rhs = 0.0;
};
SzegoResult szego_check(const CoefficientSequence& F, int degree_cut);

// Positive-definiteness probe of the moment sequence Q_n = int z^n dmu for
// |n| <= K: random real quadratic forms sum Q_{n-m} g_n g_m must be
// nonnegative (within rounding) and |Q_n| <= Q_0.
struct BochnerReport {
  double min_quadratic_form = 0.0;
  double max_offcenter_moment = 0.0;  // max |Q_n|, n != 0
  double q0 = 0.0;
  int trials = 0;
  bool pass = false;
};
BochnerReport bochner_check(const MeasureDensity& mu, int K, int trials,
                            unsigned long long seed = 0);

}  // namespace nlft
