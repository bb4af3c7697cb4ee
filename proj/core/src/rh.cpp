#include "nlft/rh.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nlft/errors.hpp"
#include "nlft/factorize.hpp"
#include "nlft/grid.hpp"
#include "nlft/inverse.hpp"
#include "nlft/laurent.hpp"
#include "nlft/transform.hpp"

namespace nlft {

namespace {

constexpr double kClusterTol = 1e-6;
constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// small rational-function utilities

// Exact long division num = q * den + r with deg r < deg den.
std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DenominatorVanishes("poly_divmod");
  const int dd = den.degree();
  if (num.degree() < dd) return {Poly(), num};
  std::vector<cdouble> r = num.coeffs();
  std::vector<cdouble> q(static_cast<std::size_t>(num.degree() - dd + 1),
                         cdouble{0.0, 0.0});
  const cdouble lead = den.coeff(dd);
  for (int k = num.degree(); k >= dd; --k) {
    const cdouble f = r[static_cast<std::size_t>(k)] / lead;
    q[static_cast<std::size_t>(k - dd)] = f;
    for (int j = 0; j <= dd; ++j) {
      r[static_cast<std::size_t>(k - dd + j)] -= f * den.coeff(j);
    }
    r[static_cast<std::size_t>(k)] = {0.0, 0.0};
  }
  r.resize(static_cast<std::size_t>(std::max(dd, 0)));
  return {Poly(std::move(q)), Poly(std::move(r))};
}

// Radius for a circular contour around `center` staying well clear of the
// other singularities. Points within 1e-5 of the center are treated as
// members of the center's own cluster.
double safe_radius(cdouble center, const std::vector<cdouble>& others) {
  double dist = 0.8;
  for (const cdouble& u : others) {
    const double d = std::abs(u - center);
    if (d > 1e-5) dist = std::min(dist, d);
  }
  return std::max(1e-5, std::min(0.2, dist / 4.0));
}

// Coefficient of (z - center)^k in the Laurent expansion of g around
// `center` (k < 0 reads the principal part), by trapezoid quadrature on a
// circle of radius rho. Exact up to the geometric tail of the expansion.
cdouble contour_coeff(const RationalFn& g, cdouble center, double rho, int k,
                      std::size_t nodes = 256) {
  cdouble acc{0.0, 0.0};
  for (std::size_t j = 0; j < nodes; ++j) {
    const double t = 2.0 * kPi * static_cast<double>(j) /
                     static_cast<double>(nodes);
    const cdouble w = center + std::polar(rho, t);
    acc += g.eval(w) * std::polar(1.0, -static_cast<double>(k) * t);
  }
  acc /= static_cast<double>(nodes);
  return acc * std::pow(cdouble{rho, 0.0}, -k);
}

std::vector<cdouble> pole_locations(const RationalFn& f) {
  if (f.is_zero() || f.den().degree() <= 0) return {};
  return f.poles();
}

// Pole clusters of f lying on the unit circle.
std::vector<RootCluster> circle_pole_clusters(const RationalFn& f,
                                              const char* ctx) {
  std::vector<RootCluster> out;
  if (f.is_zero() || f.den().degree() <= 0) return out;
  for (const RootCluster& cl :
       classify_roots(f.poles(), kClusterTol, kPoleClearance, ctx)) {
    if (cl.region == CircleRegion::kOnCircle) out.push_back(cl);
  }
  return out;
}

// Order of f's pole cluster at z (0 when f is analytic there).
int cluster_order_at(const RationalFn& f, cdouble z, const char* ctx) {
  if (f.is_zero() || f.den().degree() <= 0) return 0;
  for (const RootCluster& cl :
       classify_roots(f.poles(), kClusterTol, kPoleClearance, ctx)) {
    if (std::abs(cl.location - z) <= 1e-4) return cl.order;
  }
  return 0;
}

double sign_pow(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Leading weight of 1/(a a*) at a circle pole of order n: the pole kills
// 1/(a a*) to order 2n there, and the weight is the first surviving Taylor
// coefficient rotated back to a positive real.
double leading_weight(const RationalFn& a, cdouble zj, int n,
                      const std::vector<cdouble>& avoid, const char* ctx) {
  const RationalFn prod = a * a.star();
  const RationalFn G(prod.den(), prod.num());
  std::vector<cdouble> sing = pole_locations(G);
  sing.insert(sing.end(), avoid.begin(), avoid.end());
  const double rho = safe_radius(zj, sing);
  const cdouble c = contour_coeff(G, zj, rho, 2 * n);
  const cdouble mu = sign_pow(n) * c * std::pow(zj, 2 * n);
  if (std::abs(mu.imag()) > 1e-6 * (1.0 + std::abs(mu))) {
    throw OrderMismatch(std::string(ctx) +
                        ": circle-pole weight has a nonreal leading term");
  }
  if (!(mu.real() > 0.0)) {
    throw ValueOutOfRange(std::string(ctx) +
                          ": circle-pole weight must be positive, got " +
                          std::to_string(mu.real()));
  }
  return mu.real();
}

// ---------------------------------------------------------------------------
// the finite partial-fraction space preserved by the projection fixed point

struct FixedPointBasis {
  // Pole clusters of b/a outside the closed disc; the analytic-inside
  // component B lives on {1} + their principal parts + {z^j, j <= m_inf}.
  std::vector<RootCluster> bpoles;
  int m_inf = 0;  // polynomial growth order of b/a at infinity

  int pole_dim() const {
    int d = 0;
    for (const RootCluster& cl : bpoles) d += cl.order;
    return d;
  }
  int b_dim() const { return 1 + pole_dim() + m_inf; }
  int a_dim() const { return pole_dim() + m_inf; }
};

FixedPointBasis make_basis(const RationalFn& phi) {
  FixedPointBasis basis;
  if (!phi.is_zero() && phi.den().degree() > 0) {
    for (const RootCluster& cl : classify_roots(
             phi.poles(), kClusterTol, kPoleClearance, "projection basis")) {
      if (cl.region == CircleRegion::kOnCircle) {
        throw PoleClassificationAmbiguous(
            "projection basis: b/a keeps a circle pole after reduction");
      }
      if (cl.region == CircleRegion::kOutside) basis.bpoles.push_back(cl);
    }
  }
  basis.m_inf =
      std::max(0, phi.num().degree() - phi.den().degree());
  return basis;
}

Poly pole_power(cdouble v, int order) {
  return Poly::from_roots(std::vector<cdouble>(static_cast<std::size_t>(order), v));
}

// B-side coordinates of the analytic-inside projection of g: polynomial
// part (exact division) plus principal parts at the outside pole clusters.
// Poles of g inside the disc are dropped, which is the projection itself.
Eigen::VectorXcd b_coords(const RationalFn& g, const FixedPointBasis& basis) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.b_dim());
  const auto division = poly_divmod(g.num(), g.den());
  const Poly q = division.first.trimmed(1e-12);
  if (q.degree() > basis.m_inf) {
    throw OrderMismatch(
        "projection: unexpected polynomial growth of the inside component");
  }
  v(0) = q.coeff(0);
  for (int j = 1; j <= basis.m_inf; ++j) {
    v(1 + basis.pole_dim() + (j - 1)) = q.coeff(j);
  }
  const std::vector<cdouble> sing = pole_locations(g);
  int idx = 1;
  for (const RootCluster& cl : basis.bpoles) {
    const double rho = safe_radius(cl.location, sing);
    for (int t = 1; t <= cl.order; ++t) {
      v(idx++) = contour_coeff(g, cl.location, rho, -t);
    }
  }
  return v;
}

// A-side coordinates of the analytic-outside, vanishing-at-infinity
// projection of g: principal parts at the reflected clusters 1/conj(w) and
// at the origin (the image of the growth at infinity).
Eigen::VectorXcd a_coords(const RationalFn& g, const FixedPointBasis& basis) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.a_dim());
  const std::vector<cdouble> sing = pole_locations(g);
  int idx = 0;
  for (const RootCluster& cl : basis.bpoles) {
    const cdouble q = 1.0 / std::conj(cl.location);
    const double rho = safe_radius(q, sing);
    for (int t = 1; t <= cl.order; ++t) {
      v(idx++) = contour_coeff(g, q, rho, -t);
    }
  }
  if (basis.m_inf > 0) {
    const double rho = safe_radius({0.0, 0.0}, sing);
    for (int t = 1; t <= basis.m_inf; ++t) {
      v(idx++) = contour_coeff(g, {0.0, 0.0}, rho, -t);
    }
  }
  return v;
}

RationalFn assemble_b(const Eigen::VectorXcd& beta,
                      const FixedPointBasis& basis) {
  RationalFn f = RationalFn::constant(beta(0));
  int idx = 1;
  for (const RootCluster& cl : basis.bpoles) {
    for (int t = 1; t <= cl.order; ++t) {
      f = f + RationalFn(Poly::constant(beta(idx++)),
                         pole_power(cl.location, t));
    }
  }
  for (int j = 1; j <= basis.m_inf; ++j) {
    f = f + RationalFn(Poly::monomial(beta(idx++), j),
                       Poly::constant({1.0, 0.0}));
  }
  return f;
}

RationalFn assemble_a(const Eigen::VectorXcd& alpha,
                      const FixedPointBasis& basis) {
  RationalFn f = RationalFn::constant({1.0, 0.0});
  int idx = 0;
  for (const RootCluster& cl : basis.bpoles) {
    const cdouble q = 1.0 / std::conj(cl.location);
    for (int t = 1; t <= cl.order; ++t) {
      f = f + RationalFn(Poly::constant(alpha(idx++)), pole_power(q, t));
    }
  }
  for (int t = 1; t <= basis.m_inf; ++t) {
    f = f + RationalFn(Poly::constant(alpha(idx++)),
                       Poly::monomial({1.0, 0.0}, t));
  }
  return f;
}

// The s-th B-basis function (same enumeration as the coordinates).
RationalFn b_basis_fn(int s, const FixedPointBasis& basis) {
  if (s == 0) return RationalFn::constant({1.0, 0.0});
  int idx = 1;
  for (const RootCluster& cl : basis.bpoles) {
    for (int t = 1; t <= cl.order; ++t) {
      if (idx == s) {
        return RationalFn(Poly::constant({1.0, 0.0}),
                          pole_power(cl.location, t));
      }
      ++idx;
    }
  }
  const int j = s - idx + 1;
  return RationalFn(Poly::monomial({1.0, 0.0}, j), Poly::constant({1.0, 0.0}));
}

// The t-th A-basis function beyond the fixed constant 1.
RationalFn a_basis_fn(int s, const FixedPointBasis& basis) {
  int idx = 0;
  for (const RootCluster& cl : basis.bpoles) {
    const cdouble q = 1.0 / std::conj(cl.location);
    for (int t = 1; t <= cl.order; ++t) {
      if (idx == s) {
        return RationalFn(Poly::constant({1.0, 0.0}), pole_power(q, t));
      }
      ++idx;
    }
  }
  const int j = s - idx + 1;
  return RationalFn(Poly::constant({1.0, 0.0}), Poly::monomial({1.0, 0.0}, j));
}

// Mean and maximum deviation of A A* - B B* over clean circle probes.
double verify_constant_s(const RationalFn& A, const RationalFn& B) {
  const RationalFn S = A * A.star() - B * B.star();
  const std::size_t nodes = 64;
  std::vector<cdouble> vals;
  const double den_scale = std::max(1.0, S.den().max_abs());
  for (std::size_t j = 0; j < nodes; ++j) {
    const double t = 2.0 * kPi * (static_cast<double>(j) + 0.5) /
                     static_cast<double>(nodes);
    const cdouble w = std::polar(1.0, t);
    if (std::abs(S.den().eval(w)) < 1e-8 * den_scale) continue;
    vals.push_back(S.num().eval(w) / S.den().eval(w));
  }
  if (vals.size() < nodes / 2) {
    throw PoleOnGrid("projection split: too few clean probes for A A* - B B*");
  }
  cdouble mean{0.0, 0.0};
  for (const cdouble& v : vals) mean += v;
  mean /= static_cast<double>(vals.size());
  double dev = 0.0;
  for (const cdouble& v : vals) dev = std::max(dev, std::abs(v - mean));
  if (dev > 1e-6 * std::max(1.0, std::abs(mean))) {
    throw OrderMismatch(
        "projection split: A A* - B B* is not constant (deviation " +
        std::to_string(dev) + "); the pair does not split over this basis");
  }
  if (std::abs(mean.imag()) > 1e-8 * std::max(1.0, std::abs(mean))) {
    throw OrderMismatch("projection split: A A* - B B* has a nonreal mean");
  }
  if (!(mean.real() > 0.0)) {
    throw OrderMismatch("projection split: A A* - B B* is not positive");
  }
  return mean.real();
}

SU11Pair identity_rational() {
  return SU11Pair::rational(RationalFn::constant({1.0, 0.0}), RationalFn());
}

// Normalized right factor (A, B)/sqrt(s) with its a rebuilt canonically
// from b (outer-type, positive at infinity).
SU11Pair normalized_right(const DirectSolve& ds) {
  const double root_s = std::sqrt(ds.s);
  const RationalFn bplus = cdouble{1.0 / root_s, 0.0} * ds.B;
  if (bplus.is_zero()) return identity_rational();
  return SU11Pair::rational(a_from_b_rational(bplus), bplus);
}

bool needs_half_solve(const RationalPair& rp) {
  if (rp.b.is_zero()) return false;
  const FixedPointBasis basis = make_basis(rp.b / rp.a);
  return !basis.bpoles.empty() || basis.m_inf > 0;
}

// Worst relative disagreement of two pairs over clean circle probes.
double pair_probe_distance(const SU11Pair& x, const SU11Pair& y) {
  const RationalPair xr = x.to_rational();
  const RationalPair yr = y.to_rational();
  const std::size_t nodes = 128;
  auto den_small = [](const RationalFn& f, cdouble w) {
    return std::abs(f.den().eval(w)) <
           1e-7 * std::max(1.0, f.den().max_abs());
  };
  double worst = 0.0;
  std::size_t used = 0;
  for (std::size_t j = 0; j < nodes; ++j) {
    const double t = 2.0 * kPi * (static_cast<double>(j) + 0.5) /
                     static_cast<double>(nodes);
    const cdouble w = std::polar(1.0, t);
    if (den_small(xr.a, w) || den_small(xr.b, w) || den_small(yr.a, w) ||
        den_small(yr.b, w)) {
      continue;
    }
    const cdouble ax = xr.a.eval(w), ay = yr.a.eval(w);
    const cdouble bx = xr.b.eval(w), by = yr.b.eval(w);
    worst = std::max(worst, std::abs(ax - ay) / (1.0 + std::abs(ax)));
    worst = std::max(worst, std::abs(bx - by) / (1.0 + std::abs(bx)));
    ++used;
  }
  if (used < nodes / 2) {
    throw PoleOnGrid("pair comparison: too few clean probes");
  }
  return worst;
}

// Coefficient magnitudes of grid Fourier modes outside [lo, hi] relative to
// the largest mode; bins are read as signed exponents.
double mass_outside_band(const std::vector<cdouble>& modes, int lo, int hi) {
  const std::size_t M = modes.size();
  double peak = 0.0, outside = 0.0;
  for (std::size_t bin = 0; bin < M; ++bin) {
    const int k = (bin < M / 2) ? static_cast<int>(bin)
                                : static_cast<int>(bin) - static_cast<int>(M);
    const double m = std::abs(modes[bin]);
    peak = std::max(peak, m);
    if (k < lo || k > hi) outside = std::max(outside, m);
  }
  return (peak == 0.0) ? 0.0 : outside / peak;
}

}  // namespace

// ---------------------------------------------------------------------------

double energy(const SU11Pair& p) { return p.energy(); }

DirectSolve rh_direct_fixed_point(const SU11Pair& p) {
  const RationalPair rp = p.to_rational();
  DirectSolve out;
  out.A = RationalFn::constant({1.0, 0.0});
  out.B = RationalFn();
  out.s = 1.0;
  if (rp.b.is_zero()) return out;

  const RationalFn phi = rp.b / rp.a;
  const RationalFn phistar = phi.star();
  const FixedPointBasis basis = make_basis(phi);
  const int nb = basis.b_dim();
  const int na = basis.a_dim();

  const Eigen::VectorXcd tB = b_coords(phi, basis);
  Eigen::MatrixXcd MBA(nb, na), MAB(na, nb);
  for (int t = 0; t < na; ++t) {
    MBA.col(t) = b_coords(phi * a_basis_fn(t, basis), basis);
  }
  for (int s = 0; s < nb; ++s) {
    MAB.col(s) = a_coords(phistar * b_basis_fn(s, basis), basis);
  }

  const Eigen::MatrixXcd sys =
      Eigen::MatrixXcd::Identity(nb, nb) - MBA * MAB;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys);
  const Eigen::VectorXcd beta = lu.solve(tB);
  const double resid = (sys * beta - tB).cwiseAbs().maxCoeff();
  if (resid > 1e-8 * std::max(1.0, tB.cwiseAbs().maxCoeff())) {
    throw RankDeficient(
        "projection fixed point: linear system is numerically singular");
  }
  const Eigen::VectorXcd alpha = MAB * beta;

  out.B = assemble_b(beta, basis);
  out.A = assemble_a(alpha, basis);
  out.s = verify_constant_s(out.A, out.B);
  return out;
}

RHFactorization rh_contraction_bounded(const SU11Pair& p, double tol) {
  if (p.is_grid()) {
    throw RepresentationMismatch(
        "rh_contraction_bounded expects a Laurent or rational pair");
  }
  RHFactorization out;

  int band = 0;
  bool trivial = false;
  if (p.is_laurent()) {
    const LaurentPair& lp = p.as_laurent();
    trivial = lp.b.is_zero();
    band = std::max(lp.a.band_width(), lp.b.band_width());
  } else {
    const RationalPair& rp = p.as_rational();
    trivial = rp.b.is_zero();
    if (!circle_pole_clusters(rp.a, "rh_contraction_bounded").empty() ||
        !circle_pole_clusters(rp.b, "rh_contraction_bounded").empty()) {
      throw NotBounded("rh_contraction_bounded: the pair has circle poles");
    }
    band = rp.a.num().degree() + rp.a.den().degree() +
           rp.b.num().degree() + rp.b.den().degree() + 2;
  }
  if (trivial) {
    // A b-free bounded pair has |a| = 1 on T, so a is the constant a(inf).
    out.right = SU11Pair();  // identity
    out.left = p.is_laurent()
                   ? p
                   : SU11Pair::laurent(
                         LaurentPoly::constant(p.as_rational().a.at_infinity()),
                         LaurentPoly());
    return out;
  }

  const int W = 8 * band + 256;
  const std::size_t M =
      next_pow2(std::max<std::size_t>(4 * static_cast<std::size_t>(W), 1024));
  const GridPair g = p.sampled(M);

  double sup = 0.0;
  for (std::size_t j = 0; j < M; ++j) sup = std::max(sup, std::abs(g.a[j]));
  const double kappa = std::sqrt(std::max(0.0, 1.0 - 1.0 / (sup * sup)));
  if (!(kappa < 1.0 - 1e-6)) {
    throw NotBounded("rh_contraction_bounded: contraction constant " +
                     std::to_string(kappa) + " is too close to one");
  }

  const CircleGrid phi = g.b / g.a;
  const CircleGrid phistar = star_samples(phi);
  CircleGrid ones(M);
  for (std::size_t j = 0; j < M; ++j) ones[j] = {1.0, 0.0};

  CircleGrid A = ones;
  CircleGrid B(M);
  const double stop = tol * (1.0 - kappa);
  const std::size_t max_iter = 100000;
  std::size_t it = 0;
  for (; it < max_iter; ++it) {
    const CircleGrid Bn = project_nonnegative_modes(phi * A);
    const CircleGrid An = ones + project_negative_modes(phistar * B);
    double res = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
      res = std::max(res, std::abs(An[j] - A[j]));
      res = std::max(res, std::abs(Bn[j] - B[j]));
    }
    A = An;
    B = Bn;
    out.iteration_residuals.push_back(res);
    if (res < stop) break;
  }
  if (it == max_iter) {
    throw TruncationInsufficient(
        "rh_contraction_bounded: iteration budget exhausted");
  }

  // Normalization: A A* - B B* must already be a positive constant.
  double sbar = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    sbar += std::norm(A[j]) - std::norm(B[j]);
  }
  sbar /= static_cast<double>(M);
  double sdev = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    sdev = std::max(sdev, std::abs(std::norm(A[j]) - std::norm(B[j]) - sbar));
  }
  if (sdev > std::max(1e-6, 1e3 * tol) * std::max(1.0, std::abs(sbar))) {
    throw OrderMismatch(
        "rh_contraction_bounded: |A|^2 - |B|^2 failed to settle to a constant");
  }
  if (!(sbar > 0.0)) {
    throw OrderMismatch("rh_contraction_bounded: negative normalization");
  }
  const cdouble scale{1.0 / std::sqrt(sbar), 0.0};
  A = scale * A;
  B = scale * B;

  const std::vector<cdouble> amodes = fourier_coefficients(A);
  const std::vector<cdouble> bmodes = fourier_coefficients(B);
  if (mass_outside_band(amodes, -W, 0) > 1e-7 ||
      mass_outside_band(bmodes, 0, W) > 1e-7) {
    throw TruncationInsufficient(
        "rh_contraction_bounded: factor coefficients leak out of the window");
  }
  const LaurentPoly ar = band_coefficients(A, -W, 0).trimmed();
  const LaurentPoly br = band_coefficients(B, 0, W).trimmed();
  out.right = SU11Pair::laurent(ar, br);

  if (p.is_laurent()) {
    const LaurentPair lf =
        pair_product(p.as_laurent(), pair_inverse(LaurentPair{ar, br}));
    out.left = SU11Pair::laurent(lf.a.trimmed(), lf.b.trimmed());
  } else {
    const GridPair lf = pair_product(g, pair_inverse(out.right.sampled(M)));
    const std::vector<cdouble> lam = fourier_coefficients(lf.a);
    const std::vector<cdouble> lbm = fourier_coefficients(lf.b);
    if (mass_outside_band(lam, -W, 0) > 1e-7 ||
        mass_outside_band(lbm, -W, -1) > 1e-7) {
      throw TruncationInsufficient(
          "rh_contraction_bounded: left factor leaks out of the window");
    }
    out.left = SU11Pair::laurent(band_coefficients(lf.a, -W, 0).trimmed(),
                                 band_coefficients(lf.b, -W, -1).trimmed());
  }
  return out;
}

RHFactorization triple_factorization_rational(const SU11Pair& p) {
  if (p.is_grid()) {
    throw RepresentationMismatch(
        "triple_factorization_rational expects a Laurent or rational pair");
  }

  if (p.is_laurent()) {
    // Finite sequences split at index zero: strictly negative layers left,
    // the rest right, an identity middle.
    RHFactorization out;
    out.middle = SU11Pair();
    const CoefficientSequence F = layer_strip_finite(p);
    if (F.empty()) {
      out.left = SU11Pair();
      out.right = SU11Pair();
      return out;
    }
    const int lo = F.start();
    const int hi = F.start() + F.size() - 1;
    out.left = (lo <= -1) ? nlft_finite(F.restricted(lo, -1)) : SU11Pair();
    out.right = (hi >= 0) ? nlft_finite(F.restricted(0, hi)) : SU11Pair();
    return out;
  }

  const RationalPair& rp = p.as_rational();
  SU11Pair right = identity_rational();
  if (needs_half_solve(rp)) {
    right = normalized_right(rh_direct_fixed_point(p));
  }
  const SU11Pair X = pair_product(p, pair_inverse(right));

  SU11Pair left = identity_rational();
  const SU11Pair Xr = apply_symmetry(X, Symmetry::kReflect);
  if (needs_half_solve(Xr.as_rational())) {
    const SU11Pair mirrored = normalized_right(rh_direct_fixed_point(Xr));
    left = apply_symmetry(mirrored, Symmetry::kReflect);
  }

  SU11Pair middle = pair_product(pair_inverse(left), X);
  const RationalPair& mp = middle.as_rational();
  if (!mp.b.is_zero()) {
    if (mp.b.den().degree() > 0) {
      for (const RootCluster& cl :
           classify_roots(mp.b.poles(), kClusterTol, kPoleClearance,
                          "triple factorization middle")) {
        if (cl.region != CircleRegion::kOnCircle) {
          throw PoleClassificationAmbiguous(
              "triple factorization: middle factor keeps an off-circle pole");
        }
      }
    }
    middle = SU11Pair::rational(a_from_b_rational(mp.b), mp.b);
  } else {
    middle = identity_rational();
  }

  RHFactorization out;
  out.left = left;
  out.right = right;
  out.middle = middle;
  const SU11Pair recon =
      pair_product(out.left, pair_product(*out.middle, out.right));
  if (pair_probe_distance(recon, p) > 1e-5) {
    throw OrderMismatch(
        "triple factorization: factor product deviates from the pair");
  }
  out.pole_params = classify_poles(out);
  return out;
}

std::vector<PoleParameters> classify_poles(const RHFactorization& f) {
  if (f.left.is_grid() || f.right.is_grid() ||
      (f.middle.has_value() && f.middle->is_grid())) {
    throw RepresentationMismatch("classify_poles expects closed-form factors");
  }
  const SU11Pair recon =
      f.middle.has_value()
          ? pair_product(f.left, pair_product(*f.middle, f.right))
          : pair_product(f.left, f.right);
  const RationalPair rp = recon.to_rational();

  std::vector<PoleParameters> out;
  const std::vector<RootCluster> circle =
      circle_pole_clusters(rp.a, "classify_poles");
  if (circle.empty()) return out;

  // The middle, when engaged, counts toward the analytic-inside factor.
  RationalFn aminus = f.left.to_rational().a;
  if (f.middle.has_value()) {
    aminus = aminus * f.middle->to_rational().a;
  }
  const RationalFn aplus = f.right.to_rational().a;

  std::vector<cdouble> locations;
  locations.reserve(circle.size());
  for (const RootCluster& cl : circle) locations.push_back(cl.location);

  for (const RootCluster& cl : circle) {
    PoleParameters pp;
    pp.z = cl.location;
    pp.n = cl.order;
    if (cluster_order_at(rp.b, cl.location, "classify_poles") != pp.n) {
      throw OrderMismatch(
          "classify_poles: a and b disagree on a circle-pole order");
    }
    pp.n_minus = cluster_order_at(aminus, cl.location, "classify_poles");
    pp.n_plus = cluster_order_at(aplus, cl.location, "classify_poles");
    if (pp.n_plus + pp.n_minus == pp.n) {
      pp.shared = false;
    } else if (pp.n_plus + pp.n_minus == pp.n + 1 && pp.n_plus >= 1 &&
               pp.n_minus >= 1) {
      pp.shared = true;
    } else {
      throw OrderMismatch(
          "classify_poles: factor orders at a circle pole add up to neither n "
          "nor n + 1");
    }

    std::vector<cdouble> avoid;
    for (const cdouble& z : locations) {
      if (std::abs(z - cl.location) > 1e-5) avoid.push_back(z);
    }
    pp.mu = leading_weight(rp.a, pp.z, pp.n, avoid, "classify_poles");

    if (pp.shared) {
      // Evaluation-stable representations of the two scalar quotients that
      // vanish at the pole to orders 2 n_plus - 1 and 2 n_minus - 1.
      const RationalFn Aplus = aminus.star() / (aplus * rp.a.star());
      const RationalFn Aminus = aplus / (aminus.star() * rp.a);

      std::vector<cdouble> sing = pole_locations(Aplus);
      sing.insert(sing.end(), avoid.begin(), avoid.end());
      double rho = safe_radius(pp.z, sing);
      const cdouble cplus =
          contour_coeff(Aplus, pp.z, rho, 2 * pp.n_plus - 1);
      const cdouble muplus =
          sign_pow(pp.n_plus + 1) * cplus * std::pow(pp.z, 2 * pp.n_plus - 1);

      sing = pole_locations(Aminus);
      sing.insert(sing.end(), avoid.begin(), avoid.end());
      rho = safe_radius(pp.z, sing);
      const cdouble cminus =
          contour_coeff(Aminus, pp.z, rho, 2 * pp.n_minus - 1);
      const cdouble muminus =
          sign_pow(pp.n_minus) * cminus * std::pow(pp.z, 2 * pp.n_minus - 1);

      if (std::abs(muplus.imag()) > 1e-6 * (1.0 + std::abs(muplus)) ||
          std::abs(muminus.imag()) > 1e-6 * (1.0 + std::abs(muminus))) {
        throw OrderMismatch(
            "classify_poles: factor weight has a nonreal leading term");
      }
      if (!(muplus.real() > 0.0) || !(muminus.real() > 0.0)) {
        throw ValueOutOfRange("classify_poles: factor weights must be positive");
      }
      pp.mu_plus = muplus.real();
      pp.mu_minus = muminus.real();
      if (std::abs(pp.mu_plus * pp.mu_minus - pp.mu) > 1e-3 * pp.mu) {
        throw OrderMismatch(
            "classify_poles: factor weights are inconsistent with the pair "
            "weight");
      }
    }
    out.push_back(pp);
  }
  return out;
}

namespace {

struct OffsetLevel {
  Eigen::VectorXcd right;  // [beta..., s] in the canonical cluster layout
  Eigen::VectorXcd left;   // principal-part coefficients of the left b
};

// Richardson extrapolation to offset zero for levels at eps_k = eps_0 2^-k;
// returns the two deepest diagonal entries (for the Cauchy check).
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> extrapolate(
    std::vector<Eigen::VectorXcd> table) {
  const std::size_t K = table.size();
  Eigen::VectorXcd prev_diag = table[K - 2];
  for (std::size_t m = 1; m < K; ++m) {
    const double w = std::pow(2.0, static_cast<double>(m));
    for (std::size_t k = K - 1; k >= m; --k) {
      table[k] = (w * table[k] - table[k - 1]) / (w - 1.0);
      if (k == m) break;
    }
    if (m == K - 2) prev_diag = table[K - 2];
  }
  return {table[K - 1], prev_diag};
}

}  // namespace

RHFactorization shared_pole_factorization(
    const SU11Pair& p, const std::vector<PoleParameters>& params) {
  const RationalPair rp = p.to_rational();
  if (rp.b.is_zero()) {
    throw ValueOutOfRange("shared_pole_factorization: b vanishes identically");
  }
  if (rp.b.num().degree() > rp.b.den().degree()) {
    throw ValueOutOfRange(
        "shared_pole_factorization: b must stay bounded at infinity");
  }
  if (rp.b.den().degree() > 0) {
    for (const RootCluster& cl :
         classify_roots(rp.b.poles(), kClusterTol, kPoleClearance,
                        "shared_pole_factorization")) {
      if (cl.region != CircleRegion::kOnCircle) {
        throw ValueOutOfRange(
            "shared_pole_factorization: b must carry circle poles only");
      }
    }
  }
  const std::vector<RootCluster> clusters =
      circle_pole_clusters(rp.b, "shared_pole_factorization");
  if (clusters.size() != params.size()) {
    throw OrderMismatch(
        "shared_pole_factorization: parameter count does not match the "
        "number of circle poles");
  }

  std::vector<cdouble> locations;
  for (const RootCluster& cl : clusters) locations.push_back(cl.location);

  // Validate the supplied parameters against the pair, filling weights that
  // were left at zero.
  std::vector<PoleParameters> plan;
  for (const RootCluster& cl : clusters) {
    const PoleParameters* match = nullptr;
    for (const PoleParameters& q : params) {
      if (std::abs(q.z - cl.location) <= 1e-6) {
        match = &q;
        break;
      }
    }
    if (match == nullptr) {
      throw OrderMismatch(
          "shared_pole_factorization: no parameters supplied for a circle "
          "pole");
    }
    PoleParameters pp = *match;
    pp.z = cl.location;
    if (pp.n != cl.order) {
      throw OrderMismatch("shared_pole_factorization: pole order mismatch");
    }
    if (pp.shared) {
      if (pp.n_plus + pp.n_minus != pp.n + 1 || pp.n_plus < 1 ||
          pp.n_minus < 1) {
        throw OrderMismatch(
            "shared_pole_factorization: shared orders must satisfy "
            "n_plus + n_minus = n + 1 with both sides positive");
      }
    } else if (pp.n_plus + pp.n_minus != pp.n || pp.n_plus < 0 ||
               pp.n_minus < 0) {
      throw OrderMismatch(
          "shared_pole_factorization: split orders must satisfy "
          "n_plus + n_minus = n");
    }
    if (pp.mu < 0.0 || pp.mu_plus < 0.0 || pp.mu_minus < 0.0) {
      throw ValueOutOfRange(
          "shared_pole_factorization: weights must be nonnegative");
    }
    std::vector<cdouble> avoid;
    for (const cdouble& z : locations) {
      if (std::abs(z - cl.location) > 1e-5) avoid.push_back(z);
    }
    const double mu_c = leading_weight(rp.a, pp.z, pp.n, avoid,
                                       "shared_pole_factorization");
    if (pp.mu > 0.0 && std::abs(pp.mu - mu_c) > 1e-6 * mu_c) {
      throw OrderMismatch(
          "shared_pole_factorization: supplied weight disagrees with the "
          "pair");
    }
    pp.mu = mu_c;
    if (pp.shared) {
      if (pp.mu_plus > 0.0 && pp.mu_minus > 0.0) {
        if (std::abs(pp.mu_plus * pp.mu_minus - pp.mu) > 1e-3 * pp.mu) {
          throw OrderMismatch(
              "shared_pole_factorization: mu_plus * mu_minus must equal mu");
        }
      } else if (pp.mu_plus > 0.0) {
        pp.mu_minus = pp.mu / pp.mu_plus;
      } else if (pp.mu_minus > 0.0) {
        pp.mu_plus = pp.mu / pp.mu_minus;
      } else {
        pp.mu_plus = std::sqrt(pp.mu);
        pp.mu_minus = std::sqrt(pp.mu);
      }
    } else {
      pp.mu_plus = 0.0;
      pp.mu_minus = 0.0;
    }
    plan.push_back(pp);
  }

  const int total_plus = [&] {
    int s = 0;
    for (const PoleParameters& pp : plan) s += pp.n_plus;
    return s;
  }();
  const int total_minus = [&] {
    int s = 0;
    for (const PoleParameters& pp : plan) s += pp.n_minus;
    return s;
  }();

  // Offset levels.
  const int levels = 4;
  std::vector<Eigen::VectorXcd> right_table, left_table;
  for (int k = 0; k < levels; ++k) {
    const double eps = 1e-2 * std::pow(2.0, -k);

    std::vector<cdouble> zplus(plan.size()), zminus(plan.size());
    std::vector<cdouble> num_roots = rp.b.zeros();
    std::vector<cdouble> den_roots;
    for (std::size_t j = 0; j < plan.size(); ++j) {
      const PoleParameters& pp = plan[j];
      double eps_minus = eps, eps_plus = eps;
      if (pp.shared) {
        // Balance the factor weights: the reflected outside offset and the
        // inside offset must carry equal leading contributions.
        const double delta =
            std::pow(pp.mu_minus * std::pow(eps, 2 * pp.n_minus) / pp.mu_plus,
                     1.0 / (2.0 * pp.n_plus));
        if (!(delta > 0.0) || delta >= 0.5) {
          throw ExtrapolationDiverged(
              "shared_pole_factorization: weight balancing produced an "
              "unusable offset");
        }
        eps_plus = delta / (1.0 - delta);
        num_roots.push_back(pp.z);
      }
      zplus[j] = pp.z * (1.0 + eps_plus);
      zminus[j] = pp.z * (1.0 - eps_minus);
      for (int t = 0; t < pp.n_plus; ++t) den_roots.push_back(zplus[j]);
      for (int t = 0; t < pp.n_minus; ++t) den_roots.push_back(zminus[j]);
    }

    const RationalFn btilde(
        Poly::from_roots(num_roots, rp.b.num().leading()),
        Poly::from_roots(den_roots));
    const RationalFn atilde = a_from_b_rational(btilde);
    const SU11Pair ptilde = SU11Pair::rational(atilde, btilde);

    const DirectSolve ds = rh_direct_fixed_point(ptilde);
    const SU11Pair right_k = normalized_right(ds);
    const SU11Pair left_k = pair_product(ptilde, pair_inverse(right_k));
    if (pair_probe_distance(pair_product(left_k, right_k), ptilde) > 1e-8) {
      throw OrderMismatch(
          "shared_pole_factorization: offset-level split failed to "
          "reconstruct its pair");
    }

    // Right coordinates in the canonical layout [const | per-pole PPs | s].
    const RationalFn bplus_k =
        cdouble{1.0 / std::sqrt(ds.s), 0.0} * ds.B;
    Eigen::VectorXcd rc(1 + total_plus + 1);
    rc(0) = bplus_k.at_infinity();
    {
      const std::vector<cdouble> sing = pole_locations(bplus_k);
      int idx = 1;
      for (std::size_t j = 0; j < plan.size(); ++j) {
        const double rho = safe_radius(zplus[j], sing);
        for (int t = 1; t <= plan[j].n_plus; ++t) {
          rc(idx++) = contour_coeff(bplus_k, zplus[j], rho, -t);
        }
      }
      rc(1 + total_plus) = cdouble{ds.s, 0.0};
    }
    right_table.push_back(rc);

    // Left coordinates: principal parts of the left b at the inside points.
    const RationalFn bminus_k = left_k.as_rational().b;
    Eigen::VectorXcd lc(std::max(total_minus, 1));
    lc.setZero();
    if (total_minus > 0) {
      const std::vector<cdouble> sing = pole_locations(bminus_k);
      int idx = 0;
      for (std::size_t j = 0; j < plan.size(); ++j) {
        const double rho = safe_radius(zminus[j], sing);
        for (int t = 1; t <= plan[j].n_minus; ++t) {
          lc(idx++) = contour_coeff(bminus_k, zminus[j], rho, -t);
        }
      }
    }
    left_table.push_back(lc);
  }

  const auto right_ext = extrapolate(right_table);
  const auto left_ext = extrapolate(left_table);
  const double rgap =
      (right_ext.first - right_ext.second).cwiseAbs().maxCoeff();
  const double lgap = (left_ext.first - left_ext.second).cwiseAbs().maxCoeff();
  const double rscale =
      std::max(1.0, right_ext.first.cwiseAbs().maxCoeff());
  const double lscale = std::max(1.0, left_ext.first.cwiseAbs().maxCoeff());
  if (rgap > 1e-3 * rscale || lgap > 1e-3 * lscale) {
    throw ExtrapolationDiverged(
        "shared_pole_factorization: offset levels failed the Cauchy check");
  }

  // Assemble the limits with the poles pinned back on the circle.
  const Eigen::VectorXcd& rc = right_ext.first;
  const double s_lim = rc(1 + total_plus).real();
  if (!(s_lim > 0.0)) {
    throw ExtrapolationDiverged(
        "shared_pole_factorization: extrapolated normalization is not "
        "positive");
  }
  RationalFn bplus = RationalFn::constant(rc(0));
  {
    int idx = 1;
    for (const PoleParameters& pp : plan) {
      for (int t = 1; t <= pp.n_plus; ++t) {
        bplus = bplus + RationalFn(Poly::constant(rc(idx++)),
                                   pole_power(pp.z, t));
      }
    }
  }
  SU11Pair right = bplus.is_zero()
                       ? identity_rational()
                       : SU11Pair::rational(a_from_b_rational(bplus), bplus);

  SU11Pair left = identity_rational();
  if (total_minus > 0) {
    RationalFn bminus;
    int idx = 0;
    for (const PoleParameters& pp : plan) {
      for (int t = 1; t <= pp.n_minus; ++t) {
        bminus = bminus + RationalFn(Poly::constant(left_ext.first(idx++)),
                                     pole_power(pp.z, t));
      }
    }
    if (!bminus.is_zero()) {
      left = SU11Pair::rational(a_from_b_rational(bminus), bminus);
    }
  }

  RHFactorization out;
  out.left = left;
  out.right = right;
  out.middle = std::nullopt;
  out.pole_params = plan;

  if (pair_probe_distance(pair_product(left, right), p) > 1e-3) {
    throw ExtrapolationDiverged(
        "shared_pole_factorization: extrapolated factors fail to reconstruct "
        "the pair");
  }
  // Cross-check the realized orders and weights against the plan.
  const std::vector<PoleParameters> realized = classify_poles(out);
  if (realized.size() != plan.size()) {
    throw ExtrapolationDiverged(
        "shared_pole_factorization: extrapolated factors changed the pole "
        "count");
  }
  for (const PoleParameters& pp : plan) {
    const PoleParameters* got = nullptr;
    for (const PoleParameters& q : realized) {
      if (std::abs(q.z - pp.z) <= 1e-4) {
        got = &q;
        break;
      }
    }
    if (got == nullptr || got->n != pp.n || got->n_plus != pp.n_plus ||
        got->n_minus != pp.n_minus || got->shared != pp.shared) {
      throw ExtrapolationDiverged(
          "shared_pole_factorization: extrapolated factors realize the wrong "
          "orders");
    }
    if (pp.shared &&
        (std::abs(got->mu_plus - pp.mu_plus) > 1e-2 * pp.mu_plus ||
         std::abs(got->mu_minus - pp.mu_minus) > 1e-2 * pp.mu_minus)) {
      throw ExtrapolationDiverged(
          "shared_pole_factorization: extrapolated factors realize the wrong "
          "weights");
    }
  }
  return out;
}

ProjectionResult projection_recursion(const SU11Pair& p, int N) {
  ProjectionResult out;
  if (N <= 0) return out;
  if (p.is_grid()) {
    throw RepresentationMismatch(
        "projection_recursion expects a Laurent or rational pair");
  }

  int band = 0;
  int known_lo = 0, known_hi = -1;
  bool banded = false;
  if (p.is_laurent()) {
    const LaurentPair& lp = p.as_laurent();
    if (lp.b.is_zero()) return out;
    band = std::max(lp.a.band_width(), lp.b.band_width());
    known_lo = lp.b.lo();
    known_hi = lp.b.hi();
    banded = true;
  } else {
    const RationalPair& rp = p.as_rational();
    if (rp.b.is_zero()) return out;
    if (!circle_pole_clusters(rp.a, "projection_recursion").empty() ||
        !circle_pole_clusters(rp.b, "projection_recursion").empty()) {
      throw NotBounded("projection_recursion: the pair has circle poles");
    }
    band = rp.a.num().degree() + rp.a.den().degree() +
           rp.b.num().degree() + rp.b.den().degree() + 2;
  }

  const int W = std::max(8 * band + 256, 4 * N);
  const std::size_t M =
      next_pow2(std::max<std::size_t>(4 * static_cast<std::size_t>(W), 1024));
  const GridPair g = p.sampled(M);
  const cdouble a_inf = p.a_at_infinity();

  const CircleGrid astar = star_samples(g.a);
  const CircleGrid phi = g.b / g.a;
  CircleGrid A = a_inf * g.a;
  CircleGrid B = a_inf * g.b;

  if (!banded) {
    // Effective lowest significant mode of b/a*.
    const std::vector<cdouble> modes = fourier_coefficients(g.b / astar);
    double peak = 0.0;
    for (const cdouble& c : modes) peak = std::max(peak, std::abs(c));
    int lo = 0, hi = -1;
    bool found = false;
    for (int k = -static_cast<int>(M) / 2; k < static_cast<int>(M) / 2; ++k) {
      const std::size_t bin = static_cast<std::size_t>(
          (k % static_cast<int>(M) + static_cast<int>(M)) %
          static_cast<int>(M));
      if (std::abs(modes[bin]) > 1e-11 * peak) {
        if (!found) lo = k;
        hi = k;
        found = true;
      }
    }
    if (!found) return out;
    known_lo = lo;
    known_hi = hi;
  }
  const int n_lo = known_lo;
  const int n_hi = std::min(known_hi, n_lo + N - 1);

  auto pair_norm = [&](const CircleGrid& Ag, const CircleGrid& Bg) {
    double acc = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
      const cdouble cross = phi[j] * Ag[j] * std::conj(Bg[j]);
      acc += std::norm(Ag[j]) + std::norm(Bg[j]) - 2.0 * cross.real();
    }
    return std::sqrt(std::max(0.0, acc / static_cast<double>(M)));
  };

  std::vector<cdouble> values;
  for (int n = n_lo; n <= n_hi; ++n) {
    const cdouble denom = fourier_coefficient(star_samples(A) / astar, 0);
    if (std::abs(denom) < 1e-12) {
      throw TruncationInsufficient(
          "projection_recursion: normalizing coefficient collapsed");
    }
    const cdouble Fn = fourier_coefficient(B / astar, n) / denom;
    const double before = pair_norm(A, B);

    CircleGrid An(M), Bn(M);
    for (std::size_t j = 0; j < M; ++j) {
      const cdouble zn = std::pow(CircleGrid::node(j, M), n);
      An[j] = A[j] - Fn * std::conj(B[j]) * zn;
      Bn[j] = B[j] - Fn * std::conj(A[j]) * zn;
    }
    const double after = pair_norm(An, Bn);
    const double expected =
        std::sqrt(std::max(0.0, 1.0 - std::norm(Fn))) * before;
    out.step_norm_deviations.push_back(
        before > 0.0 ? std::abs(after - expected) / before : 0.0);

    A = An;
    B = Bn;
    values.push_back(Fn);
  }
  if (!values.empty()) {
    out.sequence = CoefficientSequence(n_lo, std::move(values));
  }
  return out;
}

}  // namespace nlft
