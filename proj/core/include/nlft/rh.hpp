#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nlft/pair.hpp"
#include "nlft/rational.hpp"

namespace nlft {

// Data attached to one circle pole of a factored pair: the pole order n of
// the pair itself, the orders inherited by the analytic-outside (plus) and
// analytic-inside (minus) factors, and the leading weights. `mu` is the
// leading coefficient of 1/(a a*) at the pole (positive); for poles carried
// by both factors (n_plus + n_minus == n + 1) `mu_plus`/`mu_minus` are the
// factor weights, constrained by mu_plus * mu_minus == mu.
struct PoleParameters {
  cdouble z;            // location on the unit circle
  int n = 0;            // pole order of the pair's b (and a)
  int n_plus = 0;       // order carried by the right factor
  int n_minus = 0;      // order carried by the left factor
  bool shared = false;  // true when n_plus + n_minus == n + 1
  double mu = 0.0;
  double mu_plus = 0.0;   // meaningful for shared poles only
  double mu_minus = 0.0;  // meaningful for shared poles only
};

// A factorization p = left * middle * right (or p = left * right when
// `middle` is disengaged). The right factor's b carries singularities
// outside the closed disc only, the left factor's strictly inside, and the
// middle's on the circle.
struct RHFactorization {
  SU11Pair left;
  SU11Pair right;
  std::optional<SU11Pair> middle;
  std::vector<PoleParameters> pole_params;
  // Sup-norm update sizes per iteration (contraction solver only).
  std::vector<double> iteration_residuals;
};

// Raw solution of the projection fixed point
//   A = 1 + P_{D*}((b*/a*) B),   B = P_D((b/a) A)
// over the finite span of partial fractions the two equations preserve.
// A is analytic outside the disc with A(inf) = 1, B analytic inside;
// s = A A* - B B* is verified to be a positive constant. The normalized
// right factor is (A, B)/sqrt(s).
struct DirectSolve {
  RationalFn A;
  RationalFn B;
  double s = 1.0;
};
DirectSolve rh_direct_fixed_point(const SU11Pair& p);

// Splits a bounded pair (sup |a| finite on T) into left * right by iterating
// the projection fixed point on a circle grid until updates fall below
// tol * (1 - kappa), kappa = sqrt(1 - 1/sup|a|^2). Laurent input is split
// exactly in Laurent arithmetic; rational input must be free of circle
// poles. Both returned factors are Laurent pairs. Throws NotBounded when
// the contraction constant reaches one and TruncationInsufficient when the
// mode window or the iteration budget is exhausted.
RHFactorization rh_contraction_bounded(const SU11Pair& p, double tol = 1e-10);

// Pole-sorted triple factorization p = left * middle * right of a rational
// pair: right absorbs the part of b with poles outside the closed disc,
// left the part with poles inside, middle what remains (circle poles and
// constant dressing). Laurent pairs reduce to the half-line split at index
// zero with an identity middle. The factors solve the projection fixed
// point; a factor whose side of b carries no poles is the identity pair.
RHFactorization triple_factorization_rational(const SU11Pair& p);

// Reads off the circle-pole data of the pair reconstructed from `f`:
// locations and orders from the reduced product, per-factor orders from the
// factor denominators (the middle, when engaged, counts toward the left),
// and the weights mu / mu_plus / mu_minus by contour differentiation.
std::vector<PoleParameters> classify_poles(const RHFactorization& f);

// Factorizes a rational pair whose b has circle poles only, splitting each
// pole per the supplied parameters. The poles are pushed off the circle by
// a vanishing radial offset (weights balanced so both factor limits exist),
// each offset level is split by the fixed point, and the factor coordinates
// are Richardson-extrapolated to offset zero with the poles pinned back on
// the circle. Supplied weights of zero are filled in from the pair; nonzero
// ones are cross-checked. Throws ExtrapolationDiverged when the level
// sequence fails its Cauchy or reconstruction checks.
RHFactorization shared_pole_factorization(
    const SU11Pair& p, const std::vector<PoleParameters>& params);

// Coefficient recovery by orthogonal projection: starting from
// (A, B) = a(inf) * (a, b) on a circle grid, each step reads
//   F_n = c_n(B / a*) / c_0(A* / a*)
// and updates (A, B) <- (A - F_n conj(B) z^n, B - F_n conj(A) z^n), driving
// (A, B) toward (1, 0). Records the relative deviation of each step's norm
// shrinkage from sqrt(1 - |F_n|^2).
struct ProjectionResult {
  CoefficientSequence sequence;
  std::vector<double> step_norm_deviations;
};
ProjectionResult projection_recursion(const SU11Pair& p, int N);

// log a(inf), delegating to the pair.
double energy(const SU11Pair& p);

}  // namespace nlft
