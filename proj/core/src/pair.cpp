#include "nlft/pair.hpp"

#include <cmath>

#include "nlft/errors.hpp"

namespace nlft {

CoefficientSequence::CoefficientSequence(int start, std::vector<cdouble> values)
    : start_(start), values_(std::move(values)) {
  for (const auto& F : values_) {
    if (!(std::abs(F) < 1.0 - kModulusMargin)) {
      throw ModulusAtLeastOne("sequence entry with |F| = " +
                              std::to_string(std::abs(F)));
    }
  }
}

int CoefficientSequence::support_lo() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != cdouble(0.0, 0.0)) {
      return start_ + static_cast<int>(i);
    }
  }
  throw ValueOutOfRange("support of the zero sequence");
}

int CoefficientSequence::support_hi() const {
  for (std::size_t i = values_.size(); i-- > 0;) {
    if (values_[i] != cdouble(0.0, 0.0)) {
      return start_ + static_cast<int>(i);
    }
  }
  throw ValueOutOfRange("support of the zero sequence");
}

cdouble CoefficientSequence::at(int n) const {
  const int i = n - start_;
  if (i < 0 || i >= size()) {
    return {0.0, 0.0};
  }
  return values_[static_cast<std::size_t>(i)];
}

CoefficientSequence CoefficientSequence::restricted(int lo, int hi) const {
  std::vector<cdouble> vals;
  for (int n = lo; n <= hi; ++n) {
    vals.push_back(at(n));
  }
  return CoefficientSequence(lo, std::move(vals));
}

SU11Pair::SU11Pair() : v_(LaurentPair{}) {}

SU11Pair SU11Pair::laurent(LaurentPoly a, LaurentPoly b) {
  SU11Pair p;
  p.v_ = LaurentPair{std::move(a), std::move(b)};
  return p;
}

SU11Pair SU11Pair::rational(RationalFn a, RationalFn b) {
  SU11Pair p;
  p.v_ = RationalPair{std::move(a), std::move(b)};
  return p;
}

SU11Pair SU11Pair::grid(CircleGrid a, CircleGrid b) {
  if (a.size() != b.size()) {
    throw RepresentationMismatch("pair components on different grids");
  }
  SU11Pair p;
  p.v_ = GridPair{std::move(a), std::move(b)};
  return p;
}

SU11Pair::Repr SU11Pair::repr() const {
  if (std::holds_alternative<LaurentPair>(v_)) {
    return Repr::kLaurent;
  }
  if (std::holds_alternative<RationalPair>(v_)) {
    return Repr::kRational;
  }
  return Repr::kGrid;
}

const LaurentPair& SU11Pair::as_laurent() const {
  if (!is_laurent()) {
    throw RepresentationMismatch("pair is not in the Laurent representation");
  }
  return std::get<LaurentPair>(v_);
}

const RationalPair& SU11Pair::as_rational() const {
  if (!is_rational()) {
    throw RepresentationMismatch("pair is not in the rational representation");
  }
  return std::get<RationalPair>(v_);
}

const GridPair& SU11Pair::as_grid() const {
  if (!is_grid()) {
    throw RepresentationMismatch("pair is not in the grid representation");
  }
  return std::get<GridPair>(v_);
}

RationalPair SU11Pair::to_rational() const {
  if (is_rational()) {
    return as_rational();
  }
  if (is_laurent()) {
    const auto& lp = as_laurent();
    return RationalPair{RationalFn::from_laurent(lp.a),
                        RationalFn::from_laurent(lp.b)};
  }
  throw RepresentationMismatch("grid pairs cannot be lifted to rational form");
}

GridPair SU11Pair::sampled(std::size_t M) const {
  switch (repr()) {
    case Repr::kLaurent: {
      const auto& lp = as_laurent();
      return GridPair{sample(lp.a, M), sample(lp.b, M)};
    }
    case Repr::kRational: {
      const auto& rp = as_rational();
      return GridPair{sample(rp.a, M), sample(rp.b, M)};
    }
    case Repr::kGrid: {
      const auto& gp = as_grid();
      if (gp.a.size() != M) {
        throw RepresentationMismatch("grid pair has size " +
                                     std::to_string(gp.a.size()) +
                                     ", requested " + std::to_string(M));
      }
      return gp;
    }
  }
  throw RepresentationMismatch("unknown representation");
}

cdouble SU11Pair::a_at_infinity() const {
  switch (repr()) {
    case Repr::kLaurent: {
      const auto& lp = as_laurent();
      if (lp.a.is_zero()) {
        return {0.0, 0.0};
      }
      if (lp.a.hi() > 0) {
        throw ValueOutOfRange("a has positive powers; no value at infinity");
      }
      return lp.a.coeff(0);
    }
    case Repr::kRational:
      return as_rational().a.at_infinity();
    case Repr::kGrid:
      throw RepresentationMismatch("grid pairs have no value at infinity");
  }
  throw RepresentationMismatch("unknown representation");
}

double SU11Pair::energy() const {
  const cdouble v = a_at_infinity();
  const double m = std::abs(v);
  if (m <= 0.0) {
    throw ValueOutOfRange("energy of a pair with a(infinity) = 0");
  }
  return std::log(m);
}

LaurentPair pair_product(const LaurentPair& p, const LaurentPair& q) {
  return LaurentPair{p.a * q.a + p.b * q.b.star(),
                     p.a * q.b + p.b * q.a.star()};
}

RationalPair pair_product(const RationalPair& p, const RationalPair& q) {
  return RationalPair{p.a * q.a + p.b * q.b.star(),
                      p.a * q.b + p.b * q.a.star()};
}

GridPair pair_product(const GridPair& p, const GridPair& q) {
  return GridPair{p.a * q.a + p.b * star_samples(q.b),
                  p.a * q.b + p.b * star_samples(q.a)};
}

SU11Pair pair_product(const SU11Pair& p, const SU11Pair& q) {
  if (p.repr() != q.repr()) {
    throw RepresentationMismatch("pair product across representations");
  }
  switch (p.repr()) {
    case SU11Pair::Repr::kLaurent: {
      LaurentPair r = pair_product(p.as_laurent(), q.as_laurent());
      return SU11Pair::laurent(std::move(r.a), std::move(r.b));
    }
    case SU11Pair::Repr::kRational: {
      RationalPair r = pair_product(p.as_rational(), q.as_rational());
      return SU11Pair::rational(std::move(r.a), std::move(r.b));
    }
    case SU11Pair::Repr::kGrid: {
      if (p.as_grid().a.size() != q.as_grid().a.size()) {
        throw RepresentationMismatch("pair product across grid sizes");
      }
      GridPair r = pair_product(p.as_grid(), q.as_grid());
      return SU11Pair::grid(std::move(r.a), std::move(r.b));
    }
  }
  throw RepresentationMismatch("unknown representation");
}

LaurentPair pair_inverse(const LaurentPair& p) {
  return LaurentPair{p.a.star(), -p.b};
}

RationalPair pair_inverse(const RationalPair& p) {
  return RationalPair{p.a.star(), -p.b};
}

GridPair pair_inverse(const GridPair& p) {
  return GridPair{star_samples(p.a), cdouble(-1.0, 0.0) * p.b};
}

SU11Pair pair_inverse(const SU11Pair& p) {
  switch (p.repr()) {
    case SU11Pair::Repr::kLaurent: {
      LaurentPair r = pair_inverse(p.as_laurent());
      return SU11Pair::laurent(std::move(r.a), std::move(r.b));
    }
    case SU11Pair::Repr::kRational: {
      RationalPair r = pair_inverse(p.as_rational());
      return SU11Pair::rational(std::move(r.a), std::move(r.b));
    }
    case SU11Pair::Repr::kGrid: {
      GridPair r = pair_inverse(p.as_grid());
      return SU11Pair::grid(std::move(r.a), std::move(r.b));
    }
  }
  throw RepresentationMismatch("unknown representation");
}

LaurentPair transfer_matrix(cdouble F, int n) {
  const double m = std::abs(F);
  if (!(m < 1.0 - kModulusMargin)) {
    throw ModulusAtLeastOne("transfer matrix with |F| = " + std::to_string(m));
  }
  const double c = 1.0 / std::sqrt(1.0 - m * m);
  return LaurentPair{LaurentPoly::constant({c, 0.0}),
                     LaurentPoly::monomial(c * F, n)};
}

double operator_norm_at(const SU11Pair& p, cdouble z) {
  cdouble av, bv;
  switch (p.repr()) {
    case SU11Pair::Repr::kLaurent: {
      const auto& lp = p.as_laurent();
      av = lp.a.eval(z);
      bv = lp.b.eval(z);
      break;
    }
    case SU11Pair::Repr::kRational: {
      const auto& rp = p.as_rational();
      av = rp.a.eval(z);
      bv = rp.b.eval(z);
      break;
    }
    case SU11Pair::Repr::kGrid:
      throw RepresentationMismatch("pointwise evaluation of a grid pair");
  }
  return std::abs(av) + std::abs(bv);
}

double unimodularity_defect(const SU11Pair& p, std::size_t M) {
  const GridPair g = p.sampled(M);
  double worst = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    const double d =
        std::abs(std::norm(g.a[j]) - std::norm(g.b[j]) - 1.0);
    worst = std::max(worst, d);
  }
  return worst;
}

double h_distance(const SU11Pair& p, const SU11Pair& q, std::size_t M) {
  const GridPair gp = p.sampled(M);
  const GridPair gq = q.sampled(M);
  double log_term = 0.0;
  double ratio_term = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    const double ap = std::abs(gp.a[j]);
    const double aq = std::abs(gq.a[j]);
    if (ap <= 0.0 || aq <= 0.0) {
      throw NonFiniteSamples("vanishing |a| sample in h_distance");
    }
    log_term += std::abs(std::log(ap) - std::log(aq));
    ratio_term += std::norm(gp.b[j] / ap - gq.b[j] / aq);
  }
  const double inv = 1.0 / static_cast<double>(M);
  return log_term * inv + ratio_term * inv;
}

}  // namespace nlft
