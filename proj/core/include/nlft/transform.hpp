#pragma once

#include "nlft/pair.hpp"

namespace nlft {

// Forward transform: the ordered product of transfer matrices over
// increasing index. The result is a Laurent-representation pair.
SU11Pair nlft_finite(const CoefficientSequence& F);

// Lemma-1 style symmetry actions on pairs and on sequences. Each pair-side
// action equals the transform of the correspondingly transformed sequence:
//   shift:      G_n = F_{n+1}       -> (a, b z^{-1})
//   modulate:   G_n = c F_n, |c|=1  -> (a, c b)
//   reflect:    G_n = F_{-n}        -> (a*(z^{-1}), b(z^{-1}))
//   conjugate:  G_n = conj(F_n)     -> (a*(z^{-1}), b*(z^{-1}))
enum class Symmetry { kShift, kModulate, kReflect, kConjugate };

SU11Pair apply_symmetry(const SU11Pair& p, Symmetry which,
                        cdouble c = {1.0, 0.0});
CoefficientSequence apply_symmetry(const CoefficientSequence& F,
                                   Symmetry which, cdouble c = {1.0, 0.0});

// The degree-n term of the multilinear expansion: the sum over increasing
// index tuples i_1 < ... < i_n of the half-row products of the off-diagonal
// layers (0, F_{i_k} z^{i_k}). Even n populates the a-slot, odd n the b-slot.
SU11Pair multilinear_term(const CoefficientSequence& F, int n);

struct ExpansionResult {
  SU11Pair pair;         // scaled partial sum of multilinear terms
  double max_deviation;  // max grid deviation from nlft_finite
};
// prod_n (1-|F_n|^2)^{-1/2} * sum_{n <= n_terms} multilinear_term(F, n).
ExpansionResult expansion_partial_sum(const CoefficientSequence& F,
                                      int n_terms);

struct PlancherelResult {
  double lhs;  // grid quadrature of log|a|
  double rhs;  // -(1/2) sum log(1 - |F_n|^2)
};
PlancherelResult plancherel_check(const CoefficientSequence& F);

struct SumRuleResult {
  cdouble k1_lhs, k1_rhs;  // 2 int z^{-1} log|a|  vs  sum conj(F_n) F_{n+1}
  cdouble k2_lhs, k2_rhs;  // 4 int z^{-2} log|a|  vs  the quadratic rule
};
SumRuleResult sum_rules(const CoefficientSequence& F);

struct TruncatedResult {
  SU11Pair pair;      // transform of the window restriction
  double tail_bound;  // 8 * sqrt(tail energy / 2), a certified over-estimate
};
// Restricts F to [-N, N]; the bound certifies the distance to the full
// transform from the discarded tail energy.
TruncatedResult nlft_truncated(const CoefficientSequence& F, int N);

// Grid size used by the quadrature checks for a sequence of this band width.
std::size_t quadrature_grid_size(int band_width);

}  // namespace nlft
