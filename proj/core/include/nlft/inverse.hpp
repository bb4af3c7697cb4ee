#pragma once

#include <vector>

#include "nlft/pair.hpp"
#include "nlft/rational.hpp"

namespace nlft {

// An analytic function on D bounded by one in modulus, represented either
// exactly as a rational function or by truncated Taylor coefficients at the
// origin. Each division by z in the iteration below costs the Taylor
// representation one reliable order; `reliable` tracks how many leading
// coefficients are still trustworthy.
struct SchurFunction {
  enum class Repr { kRational, kTaylor };
  Repr repr = Repr::kRational;
  RationalFn rational;           // when repr == kRational
  std::vector<cdouble> taylor;   // c_0.. when repr == kTaylor
  int reliable = 0;              // trustworthy leading orders (Taylor)

  cdouble value_at_zero() const;
};

// Validating constructors. The rational form is checked for modulus <= 1 on
// a circle sweep and |r(0)| < 1; ValueOutOfRange otherwise.
SchurFunction make_schur_rational(const RationalFn& r);
SchurFunction make_schur_taylor(std::vector<cdouble> coeffs);

// Inverts the transform of a finite sequence by peeling one layer per step
// at the left edge of b's band: F = b_edge / conj(a_0), then multiplication
// by the inverse single-layer pair. `residual_tol` loosens the termination
// threshold for inputs that are only approximately in the image (e.g. the
// output of an iterative factorization).
CoefficientSequence layer_strip_finite(const SU11Pair& p,
                                       double residual_tol = 0.0);

struct SchurResult {
  CoefficientSequence coefficients;   // indices 0..steps-1
  SchurFunction final_fn;             // the remainder after `steps` steps
  // Ledger of the remaining modulus integral int |log(1 - |r_k|^2)|,
  // indices 0..steps (rational representation only; empty for Taylor).
  std::vector<double> energy_ledger;
};

// F_k = r_k(0); r_{k+1} = (1/z)(r_k - F_k)/(1 - conj(F_k) r_k). Rational
// inputs step exactly; the ledger entries then drop by |log(1 - |F_k|^2)|
// per step. Taylor inputs lose one reliable order per step and throw
// TruncationExhausted when they run out.
SchurResult schur_algorithm(const SchurFunction& r, int steps);

// r = b / a*, the analytic quotient on D. Laurent and rational pairs yield
// the rational representation; grid pairs yield a Taylor representation via
// the nonnegative-mode projection (negative modes above 1e-8 mean the pair
// is not of half-line type and raise NotInH).
SchurFunction reflection_quotient(const SU11Pair& p);

// Which factor of the pole-sorted triple factorization the half-line Schur
// inversion is applied to. kMinRight takes the minimal-energy right factor
// (the factor whose b carries only exterior poles); kMaxRight moves the
// circle-pole middle factor to the right as well.
enum class FactorPolicy { kMinRight, kMaxRight };

// Full-line inversion through Riemann-Hilbert factorization: split the pair
// per the policy, invert the right factor by Schur iteration, the left one
// through the reflection symmetry, and concatenate. `steps` bounds the
// number of recovered coefficients on each side of the cut.
CoefficientSequence invert_full_line(const SU11Pair& p, int steps,
                                     FactorPolicy policy =
                                         FactorPolicy::kMinRight);

}  // namespace nlft
