#pragma once

#include <cstddef>
#include <vector>

#include "nlft/opuc.hpp"
#include "nlft/pair.hpp"

namespace nlft {

// A bounded selfadjoint tridiagonal matrix with positive subdiagonal,
// stored by its two bands. Entries beyond the stored bands continue with
// the free values (diagonal 0, subdiagonal 1), which is exact for matrices
// built from finitely supported sequences.
struct JacobiMatrix {
  std::vector<double> diag;     // J_{n,n}
  std::vector<double> offdiag;  // J_{n+1,n} > 0
};

// Closed-form dictionary from a real sequence on indices >= 1:
//   diag[0]    = -2 F_1,
//   diag[n]    = F_{2n-1}(1 - F_{2n}) - F_{2n+1}(1 + F_{2n})   (n >= 1),
//   offdiag[0] = sqrt(2) (1 - F_1^2)^{1/2} (1 - F_2)^{1/2},
//   offdiag[n] = (1 + F_{2n})^{1/2} (1 - F_{2n+1}^2)^{1/2} (1 - F_{2n+2})^{1/2},
// with F read as zero beyond its window; both bands carry entries 0..N.
// The realness of the transform's coefficients is asserted, not assumed.
JacobiMatrix jacobi_from_F(const CoefficientSequence& F, int N);

// Push-forward of a conjugation-symmetric circle density under y = z + 1/z:
// nodes y_j = 2 cos(2 pi j / M) for j = 0..M/2, quadrature masses that
// reproduce every circle-side polynomial moment exactly, and the pointwise
// density dmu/dy = w(theta_j) / (2 pi sin theta_j) at the interior nodes
// (the entries for y = +-2 are set to 0; their mass sits in `weights`).
struct RealLineDensity {
  std::vector<double> y;
  std::vector<double> weights;
  std::vector<double> density;
};
RealLineDensity joukowski_pushforward(const MeasureDensity& wprime);

// Modified Gram-Schmidt on the monomials y^0..y^N under the quadrature of
// `density`: returns the tridiagonal matrix of f -> y f in the orthonormal
// basis (diag entries 0..N, offdiag entries 0..N-1, positive). Throws
// RankDeficient when the quadrature cannot separate the monomials.
JacobiMatrix moment_gram_schmidt_oracle(const RealLineDensity& density, int N);

// Both sides of the spectral-function identity at a disc point w:
//   lhs = e_0-corner of (J - y)^{-1} at y = w + 1/w, truncation size doubled
//         until the corner settles below 1e-9;
//   rhs = 1/(w - 1/w) * (1 - b(w)/a*(w)) / (1 + b(w)/a*(w)).
// The two sides agree without further scaling: the conventional 1/pi in
// m(y) = (1/pi) <(J - y)^{-1} e_0, e_0> is cancelled by the calibration
// constant pi, fixed once by the zero-sequence case at w = 0.2 and applied
// everywhere (`calibration` reports it). Requires |w| <= 0.9 and
// dist(w + 1/w, [-2, 2]) >= 0.5; throws SpectrumTooClose otherwise.
struct MCheckResult {
  cdouble lhs;
  cdouble rhs;
  double calibration = 0.0;
  int matrix_size = 0;
};
MCheckResult jacobi_m_check(const JacobiMatrix& J, const SU11Pair& p,
                            cdouble w);

}  // namespace nlft
