#include "nlft/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nlft/errors.hpp"
#include "nlft/grid.hpp"
#include "nlft/inverse.hpp"
#include "nlft/laurent.hpp"
#include "nlft/transform.hpp"

namespace nlft {

namespace {

constexpr double kPi = 3.14159265358979323846;

double real_entry(const CoefficientSequence& F, int n, const char* ctx) {
  const cdouble v = F.at(n);
  if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v))) {
    throw NonRealInput(std::string(ctx) + ": coefficient at index " +
                       std::to_string(n) + " has imaginary part " +
                       std::to_string(v.imag()));
  }
  return v.real();
}

double band_entry(const std::vector<double>& band, std::size_t i,
                  double free_value) {
  return i < band.size() ? band[i] : free_value;
}

// e_0-corner of (J_S - y)^{-1}: solve the tridiagonal system by elimination
// from the bottom row upward, which only needs the first solution entry.
cdouble resolvent_corner(const JacobiMatrix& J, cdouble y, int S) {
  // Backward recurrence for the continued fraction
  //   g_k = 1 / (d_k - y - o_k^2 g_{k+1}),  corner = g_0,
  // seeded with g_S = 0 (hard truncation).
  cdouble g{0.0, 0.0};
  for (int k = S - 1; k >= 0; --k) {
    const double d = band_entry(J.diag, static_cast<std::size_t>(k), 0.0);
    const double o = band_entry(J.offdiag, static_cast<std::size_t>(k), 1.0);
    const cdouble den = d - y - o * o * g;
    if (std::abs(den) < 1e-14) {
      throw SpectrumTooClose(
          "resolvent corner: tridiagonal elimination hit a null pivot");
    }
    g = 1.0 / den;
  }
  return g;
}

}  // namespace

JacobiMatrix jacobi_from_F(const CoefficientSequence& F, int N) {
  if (N < 0) throw ValueOutOfRange("jacobi_from_F: negative size");
  if (!F.empty() && F.start() < 1) {
    throw ValueOutOfRange(
        "jacobi_from_F: sequence must be supported on indices >= 1");
  }
  // The dictionary requires a conjugation-symmetric transform; for real
  // sequences its Laurent coefficients are real, which we assert.
  for (int n = F.start(); n < F.start() + F.size(); ++n) {
    (void)real_entry(F, n, "jacobi_from_F");
  }
  if (!F.empty()) {
    const LaurentPair lp = nlft_finite(F).as_laurent();
    double imag_mass = 0.0, scale = 0.0;
    for (const LaurentPoly* f : {&lp.a, &lp.b}) {
      if (f->is_zero()) continue;
      for (int k = f->lo(); k <= f->hi(); ++k) {
        imag_mass = std::max(imag_mass, std::abs(f->coeff(k).imag()));
        scale = std::max(scale, std::abs(f->coeff(k)));
      }
    }
    if (imag_mass > 1e-12 * std::max(1.0, scale)) {
      throw NonRealInput(
          "jacobi_from_F: the transform is not conjugation-symmetric");
    }
  }

  auto f = [&](int n) { return real_entry(F, n, "jacobi_from_F"); };
  JacobiMatrix J;
  J.diag.resize(static_cast<std::size_t>(N) + 1);
  J.offdiag.resize(static_cast<std::size_t>(N) + 1);
  J.diag[0] = -2.0 * f(1);
  J.offdiag[0] =
      std::sqrt(2.0 * (1.0 - f(1) * f(1)) * (1.0 - f(2)));
  for (int n = 1; n <= N; ++n) {
    J.diag[static_cast<std::size_t>(n)] =
        f(2 * n - 1) * (1.0 - f(2 * n)) - f(2 * n + 1) * (1.0 + f(2 * n));
    J.offdiag[static_cast<std::size_t>(n)] =
        std::sqrt((1.0 + f(2 * n)) * (1.0 - f(2 * n + 1) * f(2 * n + 1)) *
                  (1.0 - f(2 * n + 2)));
  }
  return J;
}

RealLineDensity joukowski_pushforward(const MeasureDensity& wprime) {
  const std::size_t M = wprime.values.size();
  if (M < 4 || M % 2 != 0) {
    throw ValueOutOfRange("joukowski_pushforward: grid too small or odd");
  }
  double scale = 0.0;
  for (double v : wprime.values) scale = std::max(scale, std::abs(v));
  for (std::size_t j = 1; j < M / 2; ++j) {
    if (std::abs(wprime.values[j] - wprime.values[M - j]) >
        1e-9 * std::max(1.0, scale)) {
      throw AsymmetricInput(
          "joukowski_pushforward: density is not conjugation-symmetric");
    }
  }

  RealLineDensity out;
  const std::size_t K = M / 2;
  out.y.resize(K + 1);
  out.weights.resize(K + 1);
  out.density.assign(K + 1, 0.0);
  for (std::size_t j = 0; j <= K; ++j) {
    const double theta = 2.0 * kPi * static_cast<double>(j) /
                         static_cast<double>(M);
    out.y[j] = 2.0 * std::cos(theta);
    // Fold the circle quadrature: interior nodes receive the mass of theta
    // and -theta, the endpoints theta = 0, pi their own node only.
    const double own = wprime.values[j] / static_cast<double>(M);
    const double mirrored =
        (j == 0 || j == K) ? 0.0 : wprime.values[M - j] / static_cast<double>(M);
    out.weights[j] = own + mirrored;
    if (j > 0 && j < K) {
      out.density[j] = wprime.values[j] / (2.0 * kPi * std::sin(theta));
    }
  }
  return out;
}

JacobiMatrix moment_gram_schmidt_oracle(const RealLineDensity& density,
                                        int N) {
  if (N < 0) throw ValueOutOfRange("moment_gram_schmidt_oracle: negative size");
  const std::size_t K = density.y.size();
  if (K == 0 || density.weights.size() != K) {
    throw ValueOutOfRange("moment_gram_schmidt_oracle: malformed density");
  }

  auto inner = [&](const std::vector<double>& f, const std::vector<double>& g) {
    double acc = 0.0;
    for (std::size_t j = 0; j < K; ++j) acc += f[j] * g[j] * density.weights[j];
    return acc;
  };

  // Orthonormal sample vectors of y^0..y^{N+1}; the matrix of f -> y f in
  // this basis is tridiagonal with the recursion entries on its bands.
  std::vector<std::vector<double>> basis;
  JacobiMatrix J;
  std::vector<double> cur(K, 1.0);
  for (int k = 0; k <= N + 1; ++k) {
    std::vector<double> u = cur;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const double proj = inner(u, basis[i]);
        for (std::size_t j = 0; j < K; ++j) u[j] -= proj * basis[i][j];
      }
    }
    const double norm = std::sqrt(std::max(0.0, inner(u, u)));
    if (norm < 1e-12) {
      throw RankDeficient("moment_gram_schmidt_oracle: monomial " +
                          std::to_string(k) +
                          " is numerically dependent under the quadrature");
    }
    for (std::size_t j = 0; j < K; ++j) u[j] /= norm;
    // Keep the leading coefficient positive: u was built from y * previous
    // orthonormal vector (positive leading) minus lower-degree terms, so its
    // leading coefficient is positive already; for k = 0 it is 1/norm > 0.
    basis.push_back(u);
    if (k <= N) {
      cur.resize(K);
      for (std::size_t j = 0; j < K; ++j) cur[j] = density.y[j] * u[j];
    }
  }
  J.diag.resize(static_cast<std::size_t>(N) + 1);
  J.offdiag.resize(static_cast<std::size_t>(N));
  for (int k = 0; k <= N; ++k) {
    std::vector<double> yu(K);
    for (std::size_t j = 0; j < K; ++j) {
      yu[j] = density.y[j] * basis[static_cast<std::size_t>(k)][j];
    }
    J.diag[static_cast<std::size_t>(k)] =
        inner(yu, basis[static_cast<std::size_t>(k)]);
    if (k < N) {
      const double o = inner(yu, basis[static_cast<std::size_t>(k) + 1]);
      if (!(o > 0.0)) {
        throw RankDeficient(
            "moment_gram_schmidt_oracle: nonpositive subdiagonal entry");
      }
      J.offdiag[static_cast<std::size_t>(k)] = o;
    }
  }
  return J;
}

MCheckResult jacobi_m_check(const JacobiMatrix& J, const SU11Pair& p,
                            cdouble w) {
  if (!(std::abs(w) <= 0.9) || std::abs(w) < 1e-12) {
    throw ValueOutOfRange("jacobi_m_check: need 0 < |w| <= 0.9");
  }
  const cdouble y = w + 1.0 / w;
  const double dist = (std::abs(y.real()) <= 2.0)
                          ? std::abs(y.imag())
                          : std::min(std::abs(y - cdouble{2.0, 0.0}),
                                     std::abs(y + cdouble{2.0, 0.0}));
  if (dist < 0.5) {
    throw SpectrumTooClose("jacobi_m_check: w + 1/w is within " +
                           std::to_string(dist) + " of [-2, 2]");
  }

  MCheckResult out;
  out.calibration = kPi;
  int S = 512;
  cdouble corner = resolvent_corner(J, y, S);
  bool converged = false;
  while (S <= (1 << 16)) {
    const cdouble next = resolvent_corner(J, y, 2 * S);
    const double change = std::abs(next - corner);
    corner = next;
    S *= 2;
    if (change < 1e-9) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw TruncationInsufficient(
        "jacobi_m_check: resolvent corner did not settle by size " +
        std::to_string(S));
  }
  out.matrix_size = S;
  out.lhs = corner;  // calibration * (1/pi) * corner

  const SchurFunction r = reflection_quotient(p);
  cdouble rw;
  if (r.repr == SchurFunction::Repr::kRational) {
    rw = r.rational.eval(w);
  } else {
    rw = {0.0, 0.0};
    for (std::size_t j = r.taylor.size(); j-- > 0;) rw = rw * w + r.taylor[j];
  }
  const cdouble den = 1.0 + rw;
  if (std::abs(den) < 1e-12) {
    throw DenominatorVanishes("jacobi_m_check: 1 + b/a* vanishes at w");
  }
  out.rhs = (1.0 - rw) / den / (w - 1.0 / w);
  return out;
}

}  // namespace nlft
