#include "nlft/transform.hpp"

#include <algorithm>
#include <cmath>

#include "nlft/errors.hpp"

namespace nlft {

SU11Pair nlft_finite(const CoefficientSequence& F) {
  LaurentPair acc;
  for (int n = F.start(); n < F.start() + F.size(); ++n) {
    const cdouble Fn = F.at(n);
    if (Fn == cdouble(0.0, 0.0)) {
      continue;
    }
    acc = pair_product(acc, transfer_matrix(Fn, n));
  }
  return SU11Pair::laurent(acc.a.trimmed(), acc.b.trimmed());
}

SU11Pair apply_symmetry(const SU11Pair& p, Symmetry which, cdouble c) {
  if (which == Symmetry::kModulate &&
      std::abs(std::abs(c) - 1.0) > 1e-12) {
    throw NonUnimodularModulation("modulation by |c| = " +
                                  std::to_string(std::abs(c)));
  }
  if (p.is_rational()) {
    const RationalPair& rp = p.as_rational();
    switch (which) {
      case Symmetry::kShift:
        return SU11Pair::rational(
            rp.a, rp.b * RationalFn(Poly::constant(1.0),
                                    Poly::monomial(1.0, 1)));
      case Symmetry::kModulate:
        return SU11Pair::rational(rp.a, c * rp.b);
      case Symmetry::kReflect:
        // a*(z^{-1}) = a with conjugated coefficients; b(z^{-1}).
        return SU11Pair::rational(rp.a.conj_coeffs(), rp.b.subst_inv());
      case Symmetry::kConjugate:
        return SU11Pair::rational(rp.a.conj_coeffs(), rp.b.conj_coeffs());
    }
    throw ValueOutOfRange("unknown symmetry");
  }
  const LaurentPair& lp = p.as_laurent();
  switch (which) {
    case Symmetry::kShift:
      return SU11Pair::laurent(lp.a, lp.b.shifted(-1));
    case Symmetry::kModulate:
      return SU11Pair::laurent(lp.a, c * lp.b);
    case Symmetry::kReflect:
      // a*(z^{-1}) conjugates coefficients in place; b(z^{-1}) reflects.
      return SU11Pair::laurent(lp.a.conj_coeffs(), lp.b.reflect_arg());
    case Symmetry::kConjugate:
      return SU11Pair::laurent(lp.a.conj_coeffs(), lp.b.conj_coeffs());
  }
  throw ValueOutOfRange("unknown symmetry");
}

CoefficientSequence apply_symmetry(const CoefficientSequence& F,
                                   Symmetry which, cdouble c) {
  switch (which) {
    case Symmetry::kShift:
      return CoefficientSequence(F.start() - 1, F.values());
    case Symmetry::kModulate: {
      if (std::abs(std::abs(c) - 1.0) > 1e-12) {
        throw NonUnimodularModulation("modulation by |c| = " +
                                      std::to_string(std::abs(c)));
      }
      std::vector<cdouble> vals = F.values();
      for (auto& v : vals) {
        v *= c;
      }
      return CoefficientSequence(F.start(), std::move(vals));
    }
    case Symmetry::kReflect: {
      std::vector<cdouble> vals(F.values().rbegin(), F.values().rend());
      const int hi = F.start() + F.size() - 1;
      return CoefficientSequence(-hi, std::move(vals));
    }
    case Symmetry::kConjugate: {
      std::vector<cdouble> vals = F.values();
      for (auto& v : vals) {
        v = std::conj(v);
      }
      return CoefficientSequence(F.start(), std::move(vals));
    }
  }
  throw ValueOutOfRange("unknown symmetry");
}

SU11Pair multilinear_term(const CoefficientSequence& F, int n) {
  if (n < 0) {
    throw ValueOutOfRange("negative expansion order");
  }
  // terms[j] accumulates the ordered sum over j-tuples; updating j in
  // descending order keeps the previous outer iteration's j-1 slot intact.
  std::vector<LaurentPair> terms(static_cast<std::size_t>(n) + 1);
  terms[0] = LaurentPair{};  // (1, 0)
  for (std::size_t j = 1; j < terms.size(); ++j) {
    terms[j] = LaurentPair{LaurentPoly(), LaurentPoly()};
  }
  for (int i = F.start(); i < F.start() + F.size(); ++i) {
    const cdouble Fi = F.at(i);
    if (Fi == cdouble(0.0, 0.0)) {
      continue;
    }
    const LaurentPoly d = LaurentPoly::monomial(Fi, i);
    const LaurentPoly dstar = d.star();
    for (std::size_t j = terms.size() - 1; j >= 1; --j) {
      // (A, B)(0, d) = (B d*, A d)
      terms[j].a += terms[j - 1].b * dstar;
      terms[j].b += terms[j - 1].a * d;
    }
  }
  return SU11Pair::laurent(terms.back().a, terms.back().b);
}

std::size_t quadrature_grid_size(int band_width) {
  const std::size_t want =
      std::max<std::size_t>(4096, 8 * static_cast<std::size_t>(
                                          std::max(band_width, 0)));
  return next_pow2(want);
}

namespace {

double layer_scale(const CoefficientSequence& F) {
  double prod = 1.0;
  for (const auto& v : F.values()) {
    prod *= 1.0 / std::sqrt(1.0 - std::norm(v));
  }
  return prod;
}

CircleGrid log_abs_samples(const LaurentPoly& a, std::size_t M) {
  const CircleGrid ga = sample(a, M);
  CircleGrid out(M);
  for (std::size_t j = 0; j < M; ++j) {
    out[j] = {std::log(std::abs(ga[j])), 0.0};
  }
  return out;
}

// Trapezoid sums of log|a| are spectrally accurate, but the rate is set by
// the distance of the roots of a to the unit circle; a root at distance d
// leaves an aliasing error of order exp(-M d). Double the grid until the
// mean and the first two moments settle, so near-circle roots cannot push
// the quadrature above the advertised tolerances.
CircleGrid refined_log_abs(const LaurentPoly& a, std::size_t base) {
  constexpr std::size_t kMaxM = std::size_t{1} << 20;
  CircleGrid cur = log_abs_samples(a, base);
  for (std::size_t M = base; 2 * M <= kMaxM; M *= 2) {
    CircleGrid next = log_abs_samples(a, 2 * M);
    const double gap =
        std::max({std::abs(circle_mean(cur) - circle_mean(next)),
                  std::abs(fourier_coefficient(cur, 1) -
                           fourier_coefficient(next, 1)),
                  std::abs(fourier_coefficient(cur, 2) -
                           fourier_coefficient(next, 2))});
    cur = std::move(next);
    if (gap < 1e-12) {
      break;
    }
  }
  return cur;
}

}  // namespace

ExpansionResult expansion_partial_sum(const CoefficientSequence& F,
                                      int n_terms) {
  LaurentPoly sum_a, sum_b;
  for (int n = 0; n <= n_terms; ++n) {
    const SU11Pair term = multilinear_term(F, n);
    const LaurentPair& t = term.as_laurent();
    sum_a += t.a;
    sum_b += t.b;
  }
  const double scale = layer_scale(F);
  SU11Pair partial = SU11Pair::laurent(cdouble(scale, 0.0) * sum_a,
                                       cdouble(scale, 0.0) * sum_b);

  const SU11Pair exact = nlft_finite(F);
  const LaurentPair& pe = exact.as_laurent();
  const LaurentPair& pp = partial.as_laurent();
  const int band = std::max({pe.a.band_width(), pe.b.band_width(),
                             pp.a.band_width(), pp.b.band_width()});
  const std::size_t M = next_pow2(
      std::max<std::size_t>(1024, 4 * static_cast<std::size_t>(band)));
  const GridPair ge = exact.sampled(M);
  const GridPair gp = partial.sampled(M);
  double dev = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    dev = std::max(dev, std::abs(ge.a[j] - gp.a[j]));
    dev = std::max(dev, std::abs(ge.b[j] - gp.b[j]));
  }
  return ExpansionResult{std::move(partial), dev};
}

PlancherelResult plancherel_check(const CoefficientSequence& F) {
  const SU11Pair p = nlft_finite(F);
  const LaurentPair& lp = p.as_laurent();
  const int band = std::max(lp.a.band_width(), lp.b.band_width());
  const CircleGrid log_abs = refined_log_abs(lp.a, quadrature_grid_size(band));
  const double lhs = circle_mean(log_abs).real();
  double rhs = 0.0;
  for (const auto& v : F.values()) {
    rhs -= 0.5 * std::log(1.0 - std::norm(v));
  }
  return PlancherelResult{lhs, rhs};
}

SumRuleResult sum_rules(const CoefficientSequence& F) {
  const SU11Pair p = nlft_finite(F);
  const LaurentPair& lp = p.as_laurent();
  const int band = std::max(lp.a.band_width(), lp.b.band_width());
  const CircleGrid log_abs = refined_log_abs(lp.a, quadrature_grid_size(band));
  SumRuleResult out;
  out.k1_lhs = 2.0 * fourier_coefficient(log_abs, 1);
  out.k2_lhs = 4.0 * fourier_coefficient(log_abs, 2);
  out.k1_rhs = {0.0, 0.0};
  out.k2_rhs = {0.0, 0.0};
  const int lo = F.start();
  const int hi = F.start() + F.size() - 1;
  for (int n = lo - 2; n <= hi; ++n) {
    const cdouble f0 = F.at(n);
    const cdouble f1 = F.at(n + 1);
    const cdouble f2 = F.at(n + 2);
    out.k1_rhs += std::conj(f0) * f1;
    const cdouble prod = std::conj(f0) * f1;
    out.k2_rhs += -prod * prod +
                  2.0 * std::conj(f0) * (1.0 - std::norm(f1)) * f2;
  }
  return out;
}

TruncatedResult nlft_truncated(const CoefficientSequence& F, int N) {
  const CoefficientSequence inside = F.restricted(-N, N);
  double tail_energy = 0.0;
  for (int n = F.start(); n < F.start() + F.size(); ++n) {
    if (n >= -N && n <= N) {
      continue;
    }
    tail_energy += std::abs(std::log(1.0 - std::norm(F.at(n))));
  }
  const double eps = 0.5 * tail_energy;
  return TruncatedResult{nlft_finite(inside), 8.0 * std::sqrt(eps)};
}

}  // namespace nlft
