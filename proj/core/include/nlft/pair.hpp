#pragma once

#include <variant>
#include <vector>

#include "nlft/grid.hpp"
#include "nlft/laurent.hpp"
#include "nlft/rational.hpp"

namespace nlft {

// Sequence entries must stay strictly inside the unit disc by this margin.
inline constexpr double kModulusMargin = 1e-14;

// A compactly supported sequence of disc-valued coefficients, indexed by
// integers starting at start(). Entries with |F| >= 1 - margin are rejected.
class CoefficientSequence {
 public:
  CoefficientSequence() = default;
  CoefficientSequence(int start, std::vector<cdouble> values);

  bool empty() const { return values_.empty(); }
  int start() const { return start_; }
  int size() const { return static_cast<int>(values_.size()); }
  // Index of the first/last nonzero entry; requires a nonzero sequence.
  int support_lo() const;
  int support_hi() const;

  cdouble at(int n) const;  // zero outside the stored window
  const std::vector<cdouble>& values() const { return values_; }

  // Entries with indices in [lo, hi], as a new sequence starting at lo.
  CoefficientSequence restricted(int lo, int hi) const;

 private:
  int start_ = 0;
  std::vector<cdouble> values_;
};

struct LaurentPair {
  LaurentPoly a = LaurentPoly::constant({1.0, 0.0});
  LaurentPoly b;
};

struct RationalPair {
  RationalFn a = RationalFn::constant({1.0, 0.0});
  RationalFn b;
};

struct GridPair {
  CircleGrid a, b;
};

// A pair (a, b) of functions on T with aa* - bb* = 1, the first row of an
// SU(1,1)-valued transfer function, in one of three representations.
class SU11Pair {
 public:
  enum class Repr { kLaurent, kRational, kGrid };

  SU11Pair();  // the identity pair (1, 0)
  static SU11Pair laurent(LaurentPoly a, LaurentPoly b);
  static SU11Pair rational(RationalFn a, RationalFn b);
  static SU11Pair grid(CircleGrid a, CircleGrid b);

  Repr repr() const;
  bool is_laurent() const { return repr() == Repr::kLaurent; }
  bool is_rational() const { return repr() == Repr::kRational; }
  bool is_grid() const { return repr() == Repr::kGrid; }

  const LaurentPair& as_laurent() const;    // RepresentationMismatch if not
  const RationalPair& as_rational() const;  // RepresentationMismatch if not
  const GridPair& as_grid() const;          // RepresentationMismatch if not

  // Laurent pairs lifted to the rational representation exactly.
  RationalPair to_rational() const;
  // Boundary samples on the M-point grid (grid pairs must already match M).
  GridPair sampled(std::size_t M) const;

  // a evaluated at infinity; requires a Laurent/rational representation and
  // a finite there (Laurent bands must not contain positive powers).
  cdouble a_at_infinity() const;
  // log a(infinity), the energy of the pair.
  double energy() const;

 private:
  std::variant<LaurentPair, RationalPair, GridPair> v_;
};

// The half-row product (a, b)(c, d) = (ac + bd*, ad + bc*). Representations
// must match (grids additionally in size).
SU11Pair pair_product(const SU11Pair& p, const SU11Pair& q);
LaurentPair pair_product(const LaurentPair& p, const LaurentPair& q);
RationalPair pair_product(const RationalPair& p, const RationalPair& q);
GridPair pair_product(const GridPair& p, const GridPair& q);

// The inverse pair (a*, -b).
SU11Pair pair_inverse(const SU11Pair& p);
LaurentPair pair_inverse(const LaurentPair& p);
RationalPair pair_inverse(const RationalPair& p);
GridPair pair_inverse(const GridPair& p);

// Single-layer pair (1-|F|^2)^{-1/2} (1, F z^n); |F| >= 1 - margin throws
// ModulusAtLeastOne.
LaurentPair transfer_matrix(cdouble F, int n);

// Operator norm |a(z)| + |b(z)| of the transfer matrix at a circle point.
double operator_norm_at(const SU11Pair& p, cdouble z);

// max_j | |a|^2 - |b|^2 - 1 | over the M-point grid.
double unimodularity_defect(const SU11Pair& p, std::size_t M);

// mean |log|a| - log|a'|| + mean |b/|a| - b'/|a'||^2 over the M-point grid.
double h_distance(const SU11Pair& p, const SU11Pair& q, std::size_t M);

}  // namespace nlft
