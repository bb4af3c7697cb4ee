#pragma once

#include <vector>

#include "nlft/grid.hpp"
#include "nlft/pair.hpp"
#include "nlft/rational.hpp"

namespace nlft {

// The unique Laurent polynomial a with a a* = 1 + b b*, zero-free on the
// closed exterior disc and positive at infinity. The band of a is
// [-n, 0] where n is the pole order of 1 + b b* at the origin.
LaurentPoly a_from_b_laurent(const LaurentPoly& b);

// Rational counterpart; poles of b on T are permitted. The zeros and poles
// of a inside D match those of g = 1 + b b* with equal order, poles of g on
// T contribute half their (necessarily even) order, and a has no zeros or
// poles elsewhere; a(infinity) > 0.
RationalFn a_from_b_rational(const RationalFn& b);

// Samples of the exterior-disc outer function with prescribed log-modulus
// on T, normalized positive at infinity: the phase is minus the conjugate
// function of the input, so the result has no positive-index coefficients.
CircleGrid outer_from_modulus(const std::vector<double>& logmod);

// Verification helper: max over an offset grid (nodes between the usual
// roots of unity, skipping points too close to poles) of
// |a a* / (1 + b b*) - 1| for a Laurent- or rational-representation pair.
double spectral_residual(const SU11Pair& p, std::size_t M);

}  // namespace nlft
