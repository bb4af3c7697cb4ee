#include "nlft/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "nlft/errors.hpp"

namespace nlft {

namespace {

// Normalization scalar: gamma^2 = g(w) / (a1(w) a1*(w)) at a probe w on T
// kept clear of the singularities in `avoid`. Prefers w = 1, then w = i,
// then sweeps intermediate angles.
cdouble normalization_probe(const std::vector<cdouble>& avoid) {
  const double clearance = 1e-6;
  std::vector<cdouble> candidates = {{1.0, 0.0}, {0.0, 1.0}};
  for (int k = 1; k < 16; ++k) {
    const double theta = 0.39269908169872414 * k;  // pi/8 steps
    candidates.emplace_back(std::cos(theta), std::sin(theta));
  }
  for (const cdouble& w : candidates) {
    bool clear = true;
    for (const cdouble& s : avoid) {
      if (std::abs(w - s) < clearance) {
        clear = false;
        break;
      }
    }
    if (clear) {
      return w;
    }
  }
  throw RootClassificationAmbiguous(
      "no probe point on T clear of singularities");
}

}  // namespace

LaurentPoly a_from_b_laurent(const LaurentPoly& b) {
  if (b.is_zero()) {
    return LaurentPoly::constant({1.0, 0.0});
  }
  // P = 1 + b b* is self-reflective (P = P*), real and >= 1 on T. Rounding
  // can strip the two band edges asymmetrically, so take the wider side.
  const LaurentPoly P =
      (LaurentPoly::constant({1.0, 0.0}) + b * b.star()).trimmed();
  const int n = std::max(-P.lo(), P.hi());
  if (n == 0) {
    // P is constant: a is the positive square root.
    const double val = P.coeff(0).real();
    return LaurentPoly::constant({std::sqrt(val), 0.0});
  }

  // Roots of z^n P come in reflected pairs r, 1/conj(r); collect the inner
  // representatives. P >= 1 on T, so circle clusters indicate breakdown.
  std::vector<cdouble> coeffs(2 * n + 1);
  for (int k = 0; k <= 2 * n; ++k) {
    coeffs[k] = P.coeff(k - n);
  }
  const Poly numerator{std::move(coeffs)};
  const std::vector<RootCluster> clusters = classify_roots(
      numerator.roots(), 1e-6, kPoleClearance, "a_from_b_laurent roots");
  std::vector<cdouble> inner;
  for (const RootCluster& c : clusters) {
    if (c.region == CircleRegion::kOnCircle) {
      throw RootClassificationAmbiguous(
          "root of 1 + b b* on T; the input is not strictly admissible");
    }
    if (c.region == CircleRegion::kInside) {
      inner.insert(inner.end(), c.order, c.location);
    }
  }
  if (static_cast<int>(inner.size()) != n) {
    throw RootClassificationAmbiguous(
        "reflected root pairing of 1 + b b* broke: " +
        std::to_string(inner.size()) + " inner roots for pole order " +
        std::to_string(n));
  }

  // a1 = prod (1 - r_j z^{-1}), zero-free outside the closed disc.
  LaurentPoly a1 = LaurentPoly::constant({1.0, 0.0});
  for (const cdouble& r : inner) {
    a1 = a1 * (LaurentPoly::constant({1.0, 0.0}) +
               LaurentPoly::monomial(-r, -1));
  }
  // Positive scale matching |a|^2 = P at a point of T (w = 1 always works:
  // a1 has no zeros on T).
  const cdouble w{1.0, 0.0};
  const double Pw = P.eval(w).real();
  const double a1w = std::norm(a1.eval(w));
  if (!(Pw > 0.0) || !(a1w > 0.0)) {
    throw RootClassificationAmbiguous("degenerate normalization sample");
  }
  const double gamma = std::sqrt(Pw / a1w);
  return (cdouble{gamma, 0.0} * a1).trimmed();
}

RationalFn a_from_b_rational(const RationalFn& b) {
  if (b.is_zero()) {
    return RationalFn::constant({1.0, 0.0});
  }
  const RationalFn g =
      RationalFn::constant({1.0, 0.0}) + b * b.star();

  // Zeros of a in D: zeros of g in D, same order. g >= 1 on T, so genuine
  // circle clusters among the zeros are impossible.
  std::vector<cdouble> zeros;
  if (!g.num().is_zero() && g.num().degree() > 0) {
    for (const RootCluster& c : classify_roots(
             g.zeros(), 1e-6, kPoleClearance, "a_from_b_rational zeros")) {
      if (c.region == CircleRegion::kOnCircle) {
        throw RootClassificationAmbiguous(
            "zero of 1 + b b* on T; input is not strictly admissible");
      }
      if (c.region == CircleRegion::kInside) {
        zeros.insert(zeros.end(), c.order, c.location);
      }
    }
  }

  // Poles of a: poles of g in D at full order, poles of g on T at half
  // order (they must be even; odd order signals inconsistent input).
  std::vector<cdouble> poles;
  if (g.den().degree() > 0) {
    for (const RootCluster& c : classify_roots(
             g.poles(), 1e-6, kPoleClearance, "a_from_b_rational poles")) {
      if (c.region == CircleRegion::kInside) {
        poles.insert(poles.end(), c.order, c.location);
      } else if (c.region == CircleRegion::kOnCircle) {
        if (c.order % 2 != 0) {
          throw OddPoleOrderOnT("pole of 1 + b b* on T has odd order " +
                                std::to_string(c.order));
        }
        poles.insert(poles.end(), c.order / 2, c.location);
      }
    }
  }

  // a = gamma * prod(z - zero) / prod(z - pole) forces a(infinity) = gamma;
  // sphere counting for the self-reflective g makes the degrees balance.
  if (zeros.size() != poles.size()) {
    throw RootClassificationAmbiguous(
        "zero/pole bookkeeping of 1 + b b* does not balance: " +
        std::to_string(zeros.size()) + " vs " + std::to_string(poles.size()));
  }

  const Poly num1 = Poly::from_roots(zeros);
  const Poly den1 = Poly::from_roots(poles);
  const RationalFn a1{num1, den1};

  // gamma^2 = g / (a1 a1*); the ratio is a constant, so any clear probe
  // point of T works. Reduction usually collapses it outright.
  const RationalFn ratio = g / (a1 * a1.star());
  double gamma_sq = 0.0;
  if (ratio.is_constant()) {
    gamma_sq = ratio.eval({1.0, 0.0}).real();
  } else {
    std::vector<cdouble> avoid = ratio.poles();
    const std::vector<cdouble> rz = ratio.zeros();
    avoid.insert(avoid.end(), rz.begin(), rz.end());
    gamma_sq = ratio.eval(normalization_probe(avoid)).real();
  }
  if (!(gamma_sq > 0.0) || !std::isfinite(gamma_sq)) {
    throw RootClassificationAmbiguous(
        "normalization of a is not positive: gamma^2 = " +
        std::to_string(gamma_sq));
  }
  return RationalFn{cdouble{std::sqrt(gamma_sq), 0.0} * num1, den1};
}

CircleGrid outer_from_modulus(const std::vector<double>& logmod) {
  std::vector<cdouble> samples(logmod.size());
  for (std::size_t j = 0; j < logmod.size(); ++j) {
    if (!std::isfinite(logmod[j])) {
      throw NonFiniteSamples("log-modulus sample " + std::to_string(j));
    }
    samples[j] = cdouble{logmod[j], 0.0};
  }
  const CircleGrid completion =
      dstar_log_completion(CircleGrid{std::move(samples)});
  CircleGrid out{completion.size()};
  for (std::size_t j = 0; j < completion.size(); ++j) {
    out[j] = std::exp(completion[j]);
  }
  return out;
}

double spectral_residual(const SU11Pair& p, std::size_t M) {
  if (p.is_grid()) {
    throw RepresentationMismatch(
        "spectral residual needs a coefficient representation");
  }
  const bool rational = p.is_rational();
  std::vector<cdouble> pole_locations;
  if (rational) {
    pole_locations = p.as_rational().a.poles();
    const std::vector<cdouble> bp = p.as_rational().b.poles();
    pole_locations.insert(pole_locations.end(), bp.begin(), bp.end());
  }

  double worst = 0.0;
  std::size_t used = 0;
  for (std::size_t j = 0; j < M; ++j) {
    const double theta =
        2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) /
        static_cast<double>(M);
    const cdouble w{std::cos(theta), std::sin(theta)};
    bool clear = true;
    for (const cdouble& s : pole_locations) {
      if (std::abs(w - s) < 1e-4) {
        clear = false;
        break;
      }
    }
    if (!clear) {
      continue;
    }
    cdouble aw, bw;
    if (rational) {
      aw = p.as_rational().a.eval(w);
      bw = p.as_rational().b.eval(w);
    } else {
      aw = p.as_laurent().a.eval(w);
      bw = p.as_laurent().b.eval(w);
    }
    // On T both a a* and b b* reduce to squared moduli.
    const double denom = 1.0 + std::norm(bw);
    worst = std::max(worst, std::abs(std::norm(aw) - denom) / denom);
    ++used;
  }
  if (used < M / 2) {
    throw PoleOnGrid("offset residual grid mostly swallowed by poles");
  }
  return worst;
}

}  // namespace nlft
