#include "nlft/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "nlft/errors.hpp"
#include "nlft/grid.hpp"
#include "nlft/laurent.hpp"
#include "nlft/rh.hpp"
#include "nlft/transform.hpp"

namespace nlft {

namespace {

constexpr double kPeelMargin = 1e-13;

// Largest modulus over a dense circle sweep; poles make this blow up.
double circle_sup(const RationalFn& r, std::size_t M) {
  double sup = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    const cdouble w = CircleGrid::node(j, M);
    const cdouble den = r.den().eval(w);
    const cdouble num = r.num().eval(w);
    if (std::abs(den) < 1e-14 * std::max(1.0, r.den().max_abs())) {
      return std::numeric_limits<double>::infinity();
    }
    sup = std::max(sup, std::abs(num / den));
  }
  return sup;
}

// Removes zero entries at both ends of a recovered coefficient window.
CoefficientSequence strip_zero_edges(int start,
                                     const std::vector<cdouble>& values,
                                     double tol) {
  std::size_t lo = 0;
  std::size_t hi = values.size();
  while (lo < hi && std::abs(values[lo]) <= tol) ++lo;
  while (hi > lo && std::abs(values[hi - 1]) <= tol) --hi;
  if (lo == hi) return CoefficientSequence();
  return CoefficientSequence(
      start + static_cast<int>(lo),
      std::vector<cdouble>(values.begin() + static_cast<std::ptrdiff_t>(lo),
                           values.begin() + static_cast<std::ptrdiff_t>(hi)));
}

cdouble eval_origin(const RationalFn& r) {
  const cdouble d = r.den().eval({0.0, 0.0});
  if (std::abs(d) < 1e-300) throw DenominatorVanishes("origin");
  return r.num().eval({0.0, 0.0}) / d;
}

// Remaining modulus integral -mean log(1 - |r|^2) of a rational function,
// computed through root bookkeeping rather than quadrature.
double rational_energy(const Poly& num, const Poly& den) {
  if (num.max_abs() == 0.0) return 0.0;
  const LaurentPoly n0 = num.to_laurent(0);
  const LaurentPoly d0 = den.to_laurent(0);
  const LaurentPoly q = d0 * d0.star() - n0 * n0.star();
  return 2.0 * mean_log_modulus(den) - mean_log_modulus(q);
}

}  // namespace

cdouble SchurFunction::value_at_zero() const {
  if (repr == Repr::kRational) return eval_origin(rational);
  return taylor.empty() ? cdouble{0.0, 0.0} : taylor.front();
}

SchurFunction make_schur_rational(const RationalFn& r) {
  const double sup = circle_sup(r, 1024);
  if (!(sup <= 1.0 + 1e-9)) {
    throw ValueOutOfRange("make_schur_rational: boundary modulus " +
                          std::to_string(sup) + " exceeds one");
  }
  const cdouble r0 = eval_origin(r);
  if (!(std::abs(r0) < 1.0)) {
    throw ValueOutOfRange("make_schur_rational: |r(0)| = " +
                          std::to_string(std::abs(r0)) + " not below one");
  }
  SchurFunction f;
  f.repr = SchurFunction::Repr::kRational;
  f.rational = r;
  return f;
}

SchurFunction make_schur_taylor(std::vector<cdouble> coeffs) {
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (!std::isfinite(coeffs[j].real()) || !std::isfinite(coeffs[j].imag())) {
      throw NonFiniteSamples("make_schur_taylor: coefficient " +
                             std::to_string(j));
    }
  }
  SchurFunction f;
  f.repr = SchurFunction::Repr::kTaylor;
  f.reliable = static_cast<int>(coeffs.size());
  f.taylor = std::move(coeffs);
  return f;
}

CoefficientSequence layer_strip_finite(const SU11Pair& p,
                                       double residual_tol) {
  if (!p.is_laurent()) {
    throw RepresentationMismatch(
        "layer_strip_finite expects a Laurent pair");
  }
  LaurentPair cur = p.as_laurent();
  cur.a = cur.a.trimmed();
  cur.b = cur.b.trimmed();
  if (cur.b.is_zero()) return CoefficientSequence();
  if (cur.a.is_zero() || cur.a.hi() > 0) {
    throw NotInImage("layer_strip_finite: a must be a polynomial in 1/z");
  }
  const cdouble a0 = cur.a.coeff(0);
  if (!(a0.real() > 0.0) || std::abs(a0.imag()) > 1e-6 * std::abs(a0)) {
    throw NotInImage("layer_strip_finite: a(infinity) must be positive");
  }
  const int band = std::max(cur.a.band_width(), cur.b.band_width());
  const std::size_t M =
      next_pow2(std::max<std::size_t>(1024, 4 * static_cast<std::size_t>(band)));
  const double defect =
      unimodularity_defect(SU11Pair::laurent(cur.a, cur.b), M);
  const double gate = std::max(1e-6, 10.0 * residual_tol);
  if (defect > gate) {
    throw NotInImage("layer_strip_finite: |a|^2 - |b|^2 - 1 deviates by " +
                     std::to_string(defect));
  }

  const int max_steps = cur.b.band_width() + 8;
  int start = cur.b.lo();
  int next_index = start;
  bool have_start = false;
  std::vector<cdouble> values;
  for (int step = 0; step < max_steps; ++step) {
    if (cur.b.is_zero() || cur.b.max_abs() <= residual_tol) break;
    const int n = cur.b.lo();
    const cdouble c = cur.b.coeff(n);
    if (std::abs(c) <= residual_tol) {
      // Sub-tolerance noise at the band edge is debris from an approximate
      // factor, not a layer; drop the coefficient instead of peeling it.
      cur.b = (cur.b - LaurentPoly::monomial(c, n)).trimmed();
      continue;
    }
    if (!have_start) {
      start = n;
      next_index = n;
      have_start = true;
    }
    while (next_index < n) {
      values.push_back({0.0, 0.0});
      ++next_index;
    }
    const cdouble F = c / std::conj(cur.a.coeff(0));
    if (std::abs(F) >= 1.0 - kPeelMargin) {
      throw PeelDivergence("layer_strip_finite: coefficient at index " +
                           std::to_string(n) + " reaches the disc boundary");
    }
    cur = pair_product(pair_inverse(transfer_matrix(F, n)), cur);
    cur.a = cur.a.trimmed();
    cur.b = cur.b.trimmed();
    values.push_back(F);
    ++next_index;
  }
  if (!cur.b.is_zero() && cur.b.max_abs() > residual_tol) {
    throw PeelDivergence(
        "layer_strip_finite: band did not shrink within the step budget");
  }
  return strip_zero_edges(start, values, 0.0);
}

SchurResult schur_algorithm(const SchurFunction& r, int steps) {
  if (steps < 0) throw ValueOutOfRange("schur_algorithm: negative step count");
  SchurResult result;
  std::vector<cdouble> F;
  F.reserve(static_cast<std::size_t>(steps));

  if (r.repr == SchurFunction::Repr::kRational) {
    Poly num = r.rational.num();
    Poly den = r.rational.den();
    result.energy_ledger.push_back(rational_energy(num, den));
    for (int k = 0; k < steps; ++k) {
      const cdouble d0 = den.eval({0.0, 0.0});
      if (std::abs(d0) < 1e-300) {
        throw DenominatorVanishes("schur_algorithm step " + std::to_string(k));
      }
      const cdouble Fk = num.eval({0.0, 0.0}) / d0;
      if (std::abs(Fk) >= 1.0 - kPeelMargin) {
        throw ModulusReachedOne("schur_algorithm: coefficient " +
                                std::to_string(k) +
                                " reaches the disc boundary");
      }
      // Exact rational step: the constant term of num - F*den vanishes
      // identically and is dropped, dividing by z without cancellation.
      const Poly t = num - Poly::constant(Fk) * den;
      const std::vector<cdouble>& tc = t.coeffs();
      Poly next_num = tc.size() <= 1
                          ? Poly::constant({0.0, 0.0})
                          : Poly(std::vector<cdouble>(tc.begin() + 1,
                                                      tc.end()));
      Poly next_den = den - Poly::constant(std::conj(Fk)) * num;
      num = next_num.trimmed(1e-13);
      den = next_den.trimmed(1e-13);
      F.push_back(Fk);
      result.energy_ledger.push_back(rational_energy(num, den));
    }
    result.final_fn.repr = SchurFunction::Repr::kRational;
    result.final_fn.rational = RationalFn(num, den);
  } else {
    std::vector<cdouble> c = r.taylor;
    int reliable = r.reliable;
    for (int k = 0; k < steps; ++k) {
      if (reliable < 1 || c.empty()) {
        throw TruncationExhausted(
            "schur_algorithm: Taylor data exhausted after " +
            std::to_string(k) + " of " + std::to_string(steps) + " steps");
      }
      const cdouble Fk = c.front();
      if (std::abs(Fk) >= 1.0 - kPeelMargin) {
        throw ModulusReachedOne("schur_algorithm: coefficient " +
                                std::to_string(k) +
                                " reaches the disc boundary");
      }
      // w = (r - F) / (1 - conj(F) r) by series division, then shift by one
      // order for the division by z.
      const std::size_t K = c.size();
      std::vector<cdouble> u(K), v(K), w(K);
      for (std::size_t j = 0; j < K; ++j) {
        u[j] = c[j];
        v[j] = -std::conj(Fk) * c[j];
      }
      u[0] -= Fk;
      v[0] += 1.0;
      const cdouble v0 = v[0];
      for (std::size_t j = 0; j < K; ++j) {
        cdouble acc = u[j];
        for (std::size_t i = 0; i < j; ++i) acc -= w[i] * v[j - i];
        w[j] = acc / v0;
      }
      c.assign(w.begin() + 1, w.end());
      --reliable;
      F.push_back(Fk);
    }
    result.final_fn.repr = SchurFunction::Repr::kTaylor;
    result.final_fn.taylor = std::move(c);
    result.final_fn.reliable = reliable;
  }

  result.coefficients =
      F.empty() ? CoefficientSequence() : CoefficientSequence(0, std::move(F));
  return result;
}

SchurFunction reflection_quotient(const SU11Pair& p) {
  if (p.is_grid()) {
    const GridPair& gp = p.as_grid();
    const std::size_t M = gp.a.size();
    std::vector<cdouble> quotient(M);
    for (std::size_t j = 0; j < M; ++j) {
      const cdouble aw = gp.a[j];
      if (std::abs(aw) < 1e-9) {
        throw NonFiniteSamples("reflection_quotient: |a| vanishes at node " +
                               std::to_string(j));
      }
      quotient[j] = gp.b[j] / std::conj(aw);
    }
    const std::vector<cdouble> modes =
        fourier_coefficients(CircleGrid(std::move(quotient)));
    double worst_negative = 0.0;
    for (std::size_t k = M / 2; k < M; ++k) {
      worst_negative = std::max(worst_negative, std::abs(modes[k]));
    }
    if (worst_negative > 1e-8) {
      throw NotInH("reflection_quotient: negative modes of b/a* reach " +
                   std::to_string(worst_negative));
    }
    return make_schur_taylor(
        std::vector<cdouble>(modes.begin(), modes.begin() + M / 2));
  }

  const RationalPair rp = p.to_rational();
  const RationalFn r = rp.b / rp.a.star();
  for (const cdouble& w : r.poles()) {
    if (std::abs(w) < 1.0 - 1e-9) {
      throw NotInH("reflection_quotient: b/a* has a pole inside the disc");
    }
  }
  return make_schur_rational(r);
}

namespace {

// Decodes the coefficients of a half-line pair supported on nonnegative
// indices, up to `count` of them, via the reflection quotient.
std::vector<cdouble> decode_nonnegative(const SU11Pair& p, int count) {
  if (p.is_rational() && p.as_rational().b.is_zero()) return {};
  if (p.is_laurent() && p.as_laurent().b.is_zero()) return {};
  const SchurFunction r = reflection_quotient(p);
  const SchurResult s = schur_algorithm(r, count);
  std::vector<cdouble> out(static_cast<std::size_t>(count), cdouble{0.0, 0.0});
  const CoefficientSequence& seq = s.coefficients;
  for (int n = seq.start(); n < seq.start() + seq.size(); ++n) {
    if (n >= 0 && n < count) out[static_cast<std::size_t>(n)] = seq.at(n);
  }
  return out;
}

}  // namespace

CoefficientSequence invert_full_line(const SU11Pair& p, int steps,
                                     FactorPolicy policy) {
  if (steps <= 0) return CoefficientSequence();

  if (p.is_laurent()) {
    if (p.as_laurent().b.is_zero()) return CoefficientSequence();
    const RHFactorization split = rh_contraction_bounded(p, 1e-11);
    const CoefficientSequence right =
        layer_strip_finite(split.right, 1e-8);
    const SU11Pair reflected_left =
        apply_symmetry(split.left, Symmetry::kReflect);
    const CoefficientSequence mirrored =
        layer_strip_finite(reflected_left, 1e-8);

    const int lo = -steps;
    const int hi = steps - 1;
    std::vector<cdouble> merged(static_cast<std::size_t>(hi - lo + 1),
                                cdouble{0.0, 0.0});
    for (int n = right.start(); n < right.start() + right.size(); ++n) {
      if (n >= 0 && n <= hi) merged[static_cast<std::size_t>(n - lo)] = right.at(n);
    }
    for (int m = mirrored.start(); m < mirrored.start() + mirrored.size();
         ++m) {
      const int n = -m;  // reflected pair carries F at mirrored indices
      if (n >= lo && n <= -1) merged[static_cast<std::size_t>(n - lo)] = mirrored.at(m);
    }
    return strip_zero_edges(lo, merged, 1e-11);
  }

  if (!p.is_rational()) {
    throw RepresentationMismatch(
        "invert_full_line expects a Laurent or rational pair");
  }
  if (p.as_rational().b.is_zero()) return CoefficientSequence();

  const RHFactorization triple = triple_factorization_rational(p);
  SU11Pair right_factor = triple.right;
  SU11Pair left_factor = triple.left;
  if (triple.middle.has_value()) {
    if (policy == FactorPolicy::kMaxRight) {
      right_factor = pair_product(*triple.middle, right_factor);
    } else {
      left_factor = pair_product(left_factor, *triple.middle);
    }
  }

  const std::vector<cdouble> right_values =
      decode_nonnegative(right_factor, steps);
  const std::vector<cdouble> mirrored_values = decode_nonnegative(
      apply_symmetry(left_factor, Symmetry::kReflect), steps + 1);

  // The right factor owns indices >= 0 and the reflected left factor indices
  // <= 0; both claiming index zero means the split was inconsistent.
  const cdouble right_at_zero =
      right_values.empty() ? cdouble{0.0, 0.0} : right_values.front();
  const cdouble left_at_zero =
      mirrored_values.empty() ? cdouble{0.0, 0.0} : mirrored_values.front();
  if (std::abs(right_at_zero) > 1e-11 && std::abs(left_at_zero) > 1e-11) {
    throw OrderMismatch(
        "invert_full_line: both factors carry a coefficient at index zero");
  }

  const int lo = -steps;
  const int hi = steps - 1;
  std::vector<cdouble> merged(static_cast<std::size_t>(hi - lo + 1),
                              cdouble{0.0, 0.0});
  for (std::size_t j = 0; j < right_values.size(); ++j) {
    const int n = static_cast<int>(j);
    if (n <= hi) merged[static_cast<std::size_t>(n - lo)] = right_values[j];
  }
  for (std::size_t j = 0; j < mirrored_values.size(); ++j) {
    const int n = -static_cast<int>(j);
    if (n < lo) continue;
    if (n == 0 && std::abs(right_at_zero) > 1e-11) continue;
    if (std::abs(mirrored_values[j]) > 1e-11) {
      merged[static_cast<std::size_t>(n - lo)] = mirrored_values[j];
    }
  }
  return strip_zero_edges(lo, merged, 1e-11);
}

}  // namespace nlft
