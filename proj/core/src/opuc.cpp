#include "nlft/opuc.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <random>
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

void require_halfline(const CoefficientSequence& F, const char* ctx) {
  if (!F.empty() && F.start() < 1) {
    throw ValueOutOfRange(std::string(ctx) +
                          ": sequence must be supported on indices >= 1");
  }
}

int window_top(const CoefficientSequence& F) {
  return F.empty() ? 0 : F.start() + F.size() - 1;
}

// Grid fine enough to resolve 1/|phi_N|^2 peaks near the circle.
std::size_t measure_grid_size(int window) {
  const std::size_t w = static_cast<std::size_t>(std::max(window, 1));
  return next_pow2(std::max<std::size_t>(8192, 16 * w * w));
}

// Evaluate a Schur-type quotient at a disc point.
cdouble schur_value(const SchurFunction& r, cdouble z) {
  if (r.repr == SchurFunction::Repr::kRational) return r.rational.eval(z);
  cdouble acc{0.0, 0.0};
  for (std::size_t j = r.taylor.size(); j-- > 0;) {
    acc = acc * z + r.taylor[j];
  }
  return acc;
}

// Degree-n polynomial from a Laurent band [0, n].
Poly poly_from_band(const LaurentPoly& f, int degree, const char* ctx) {
  if (f.is_zero() || f.lo() < 0 || f.hi() > degree) {
    throw ValueOutOfRange(std::string(ctx) +
                          ": coefficients escape the expected band");
  }
  std::vector<cdouble> c(static_cast<std::size_t>(degree) + 1, cdouble{0.0, 0.0});
  for (int k = f.lo(); k <= f.hi(); ++k) {
    c[static_cast<std::size_t>(k)] = f.coeff(k);
  }
  return Poly(std::move(c));
}

}  // namespace

cdouble herglotz_m(const SU11Pair& p, cdouble z) {
  if (!(std::abs(z) < 1.0)) {
    throw ValueOutOfRange("herglotz_m: the point must lie in the open disc");
  }
  const SchurFunction r = reflection_quotient(p);
  const cdouble rz = schur_value(r, z);
  const cdouble den = 1.0 + rz;
  if (std::abs(den) < 1e-12) {
    throw DenominatorVanishes("herglotz_m: 1 + b/a* vanishes at the point");
  }
  return (1.0 - rz) / den;
}

MeasureDensity measure_density_finite(const CoefficientSequence& F) {
  require_halfline(F, "measure_density_finite");
  const std::size_t M = measure_grid_size(window_top(F));
  const SU11Pair p = nlft_finite(F);
  const GridPair g = p.sampled(M);

  MeasureDensity out;
  out.values.resize(M);
  double mass = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    // (a* + b)(a + b*) = |a + conj(b)|^2 on the circle.
    const double q = std::norm(g.a[j] + std::conj(g.b[j]));
    if (q < 1e-14) {
      throw DenominatorVanishes(
          "measure_density_finite: |a + conj(b)| collapses at node " +
          std::to_string(j));
    }
    out.values[j] = 1.0 / q;
    mass += out.values[j];
  }
  out.total_mass = mass / static_cast<double>(M);
  return out;
}

std::vector<Poly> orthogonal_polys(const CoefficientSequence& F, int N) {
  require_halfline(F, "orthogonal_polys");
  if (N < 0) throw ValueOutOfRange("orthogonal_polys: negative degree");
  std::vector<Poly> out;
  out.reserve(static_cast<std::size_t>(N) + 1);

  LaurentPair cur;  // identity; running transform of F restricted to [1, n]
  out.push_back(Poly::constant({1.0, 0.0}));
  for (int n = 1; n <= N; ++n) {
    const LaurentPair layer = transfer_matrix(F.at(n), n);
    cur = pair_product(cur, layer);
    const LaurentPoly phi = (cur.a + cur.b.star()).shifted(n);
    out.push_back(poly_from_band(phi.trimmed(), n, "orthogonal_polys"));
  }
  return out;
}

HessenbergBand hessenberg_entries(const CoefficientSequence& F, int N) {
  require_halfline(F, "hessenberg_entries");
  if (N < 0) throw ValueOutOfRange("hessenberg_entries: negative size");
  HessenbergBand band;
  band.diag.resize(static_cast<std::size_t>(N) + 1);
  band.subdiag.resize(static_cast<std::size_t>(N) + 1);
  band.diag[0] = -std::conj(F.at(1));
  for (int i = 1; i <= N; ++i) {
    band.diag[static_cast<std::size_t>(i)] = -F.at(i) * std::conj(F.at(i + 1));
  }
  for (int i = 0; i <= N; ++i) {
    band.subdiag[static_cast<std::size_t>(i)] =
        std::sqrt(std::max(0.0, 1.0 - std::norm(F.at(i + 1))));
  }
  return band;
}

GramSchmidtResult gram_schmidt_oracle(const MeasureDensity& w, int N) {
  if (N < 0) throw ValueOutOfRange("gram_schmidt_oracle: negative degree");
  const std::size_t M = w.values.size();
  if (M == 0) throw ValueOutOfRange("gram_schmidt_oracle: empty density");

  // Sample tables: monomial powers z^k on the grid.
  std::vector<std::vector<cdouble>> power(
      static_cast<std::size_t>(N) + 2,
      std::vector<cdouble>(M, cdouble{1.0, 0.0}));
  for (std::size_t k = 1; k < power.size(); ++k) {
    for (std::size_t j = 0; j < M; ++j) {
      power[k][j] = power[k - 1][j] * CircleGrid::node(j, M);
    }
  }

  auto inner = [&](const std::vector<cdouble>& f,
                   const std::vector<cdouble>& g) {
    cdouble acc{0.0, 0.0};
    for (std::size_t j = 0; j < M; ++j) {
      acc += f[j] * std::conj(g[j]) * w.values[j];
    }
    return acc / static_cast<double>(M);
  };

  GramSchmidtResult out;
  std::vector<std::vector<cdouble>> samples;   // orthonormal sample vectors
  std::vector<std::vector<cdouble>> coeffs;    // their coefficient vectors
  for (int k = 0; k <= N; ++k) {
    std::vector<cdouble> u = power[static_cast<std::size_t>(k)];
    std::vector<cdouble> c(static_cast<std::size_t>(k) + 1, cdouble{0.0, 0.0});
    c[static_cast<std::size_t>(k)] = {1.0, 0.0};
    // Modified Gram-Schmidt, run twice for orthogonality at roundoff level.
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < k; ++i) {
        const cdouble proj = inner(u, samples[static_cast<std::size_t>(i)]);
        for (std::size_t j = 0; j < M; ++j) {
          u[j] -= proj * samples[static_cast<std::size_t>(i)][j];
        }
        const std::vector<cdouble>& ci = coeffs[static_cast<std::size_t>(i)];
        for (std::size_t t = 0; t < ci.size(); ++t) c[t] -= proj * ci[t];
      }
    }
    const double norm = std::sqrt(std::abs(inner(u, u).real()));
    if (norm < 1e-10) {
      throw RankDeficient(
          "gram_schmidt_oracle: monomial " + std::to_string(k) +
          " is numerically dependent under the measure");
    }
    // Normalize and rotate the leading coefficient positive.
    cdouble scale{1.0 / norm, 0.0};
    const cdouble lead = c[static_cast<std::size_t>(k)] * scale;
    scale *= std::conj(lead) / std::abs(lead);
    for (std::size_t j = 0; j < M; ++j) u[j] *= scale;
    for (std::size_t t = 0; t < c.size(); ++t) c[t] *= scale;
    samples.push_back(std::move(u));
    coeffs.push_back(c);
    out.polys.push_back(Poly(std::move(c)));
  }

  out.matrix.assign(static_cast<std::size_t>(N) + 1,
                    std::vector<cdouble>(static_cast<std::size_t>(N) + 1,
                                         cdouble{0.0, 0.0}));
  std::vector<cdouble> shifted(M);
  for (int k = 0; k <= N; ++k) {
    for (std::size_t j = 0; j < M; ++j) {
      shifted[j] = CircleGrid::node(j, M) * samples[static_cast<std::size_t>(k)][j];
    }
    for (int i = 0; i <= N; ++i) {
      out.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          inner(shifted, samples[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

SzegoResult szego_check(const CoefficientSequence& F, int degree_cut) {
  require_halfline(F, "szego_check");
  if (degree_cut < 1) throw ValueOutOfRange("szego_check: degree cut < 1");
  const MeasureDensity w = measure_density_finite(F);
  const std::size_t M = w.values.size();

  // Moments of the density via the FFT, for the Toeplitz normal equations.
  CircleGrid wg(M);
  for (std::size_t j = 0; j < M; ++j) wg[j] = {w.values[j], 0.0};
  const std::vector<cdouble> modes = fourier_coefficients(wg);
  auto moment = [&](int n) {  // int z^n w = conj-symmetric
    const int M_int = static_cast<int>(M);
    const std::size_t bin =
        static_cast<std::size_t>(((-n) % M_int + M_int) % M_int);
    return modes[bin];
  };

  // Least squares over f = sum_{1<=j<=D} c_j z^j of ||1 - f||_w^2:
  // G c = t with G_{jk} = <z^k, z^j> = Q_{k-j}, t_j = <1, z^j> = Q_{-j}.
  const int D = degree_cut;
  Eigen::MatrixXcd G(D, D);
  Eigen::VectorXcd t(D);
  for (int j = 1; j <= D; ++j) {
    t(j - 1) = moment(-j);
    for (int k = 1; k <= D; ++k) G(j - 1, k - 1) = moment(k - j);
  }
  const Eigen::VectorXcd c = G.ldlt().solve(t);

  // Residual evaluated directly on the grid.
  double lhs = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    const cdouble z = CircleGrid::node(j, M);
    cdouble f{0.0, 0.0};
    for (int k = D; k >= 1; --k) f = (f + c(k - 1)) * z;
    lhs += std::norm(1.0 - f) * w.values[j];
  }
  lhs /= static_cast<double>(M);

  double logint = 0.0;
  for (std::size_t j = 0; j < M; ++j) logint += std::log(w.values[j]);
  const double rhs = std::exp(logint / static_cast<double>(M));
  return {lhs, rhs};
}

BochnerReport bochner_check(const MeasureDensity& mu, int K, int trials,
                            unsigned long long seed) {
  if (K < 0 || trials < 0) {
    throw ValueOutOfRange("bochner_check: negative size");
  }
  const std::size_t M = mu.values.size();
  if (M == 0) throw ValueOutOfRange("bochner_check: empty density");
  CircleGrid wg(M);
  for (std::size_t j = 0; j < M; ++j) wg[j] = {mu.values[j], 0.0};
  const std::vector<cdouble> modes = fourier_coefficients(wg);
  auto Q = [&](int n) {
    const int M_int = static_cast<int>(M);
    const std::size_t bin =
        static_cast<std::size_t>(((-n) % M_int + M_int) % M_int);
    return modes[bin];
  };

  BochnerReport report;
  report.trials = trials;
  report.q0 = Q(0).real();
  for (int n = 1; n <= K; ++n) {
    report.max_offcenter_moment =
        std::max(report.max_offcenter_moment, std::abs(Q(n)));
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double min_form = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> gamma(static_cast<std::size_t>(K) + 1);
    for (double& g : gamma) g = unif(rng);
    cdouble form{0.0, 0.0};
    for (int n = 0; n <= K; ++n) {
      for (int m = 0; m <= K; ++m) {
        form += Q(n - m) * gamma[static_cast<std::size_t>(n)] *
                gamma[static_cast<std::size_t>(m)];
      }
    }
    min_form = std::min(min_form, form.real());
  }
  if (trials == 0) min_form = 0.0;
  report.min_quadratic_form = min_form;
  report.pass = min_form >= -1e-10 &&
                report.max_offcenter_moment <= report.q0 * (1.0 + 1e-12);
  return report;
}

}  // namespace nlft
