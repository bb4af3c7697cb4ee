#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"

#include "nlft/errors.hpp"
#include "nlft/grid.hpp"
#include "nlft/laurent.hpp"
#include "nlft/rational.hpp"

using nlft::cdouble;
using nlft::CircleGrid;
using nlft::LaurentPoly;
using nlft::Poly;
using nlft::RationalFn;

TEST_SUITE("laurent_core") {

TEST_CASE("star on monomials and affine polynomials") {
  const LaurentPoly z = LaurentPoly::monomial({1.0, 0.0}, 1);
  const LaurentPoly zs = z.star();
  CHECK(zs.lo() == -1);
  CHECK(zs.hi() == -1);
  CHECK(std::abs(zs.coeff(-1) - cdouble{1.0, 0.0}) < 1e-15);

  // star(1 + (1+i) z) = 1 + (1-i) z^{-1}
  const LaurentPoly p(0, {{1.0, 0.0}, {1.0, 1.0}});
  const LaurentPoly ps = p.star();
  CHECK(std::abs(ps.coeff(0) - cdouble{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(ps.coeff(-1) - cdouble{1.0, -1.0}) < 1e-15);
  CHECK(ps.hi() == 0);
}

TEST_CASE("star is an involution and conjugates circle samples") {
  const LaurentPoly p(-2, {{0.3, -0.4}, {1.0, 0.2}, {0.0, 0.0},
                           {-0.7, 0.1}, {0.2, 0.9}});
  const LaurentPoly back = p.star().star();
  CHECK((back - p).max_abs() < 1e-15);

  const std::size_t M = 64;
  const CircleGrid gp = sample(p, M);
  const CircleGrid gs = sample(p.star(), M);
  double worst = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    worst = std::max(worst, std::abs(gs[j] - std::conj(gp[j])));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("multiplication basics") {
  const LaurentPoly z = LaurentPoly::monomial({1.0, 0.0}, 1);
  const LaurentPoly zinv = LaurentPoly::monomial({1.0, 0.0}, -1);
  const LaurentPoly one = z * zinv;
  CHECK(one.lo() == 0);
  CHECK(one.hi() == 0);
  CHECK(std::abs(one.coeff(0) - cdouble{1.0, 0.0}) < 1e-15);

  const LaurentPoly a(0, {{1.0, 0.0}, {1.0, 0.0}});   // 1 + z
  const LaurentPoly b(0, {{1.0, 0.0}, {-1.0, 0.0}});  // 1 - z
  const LaurentPoly prod = a * b;                     // 1 - z^2
  CHECK(std::abs(prod.coeff(0) - cdouble{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(prod.coeff(1)) < 1e-15);
  CHECK(std::abs(prod.coeff(2) - cdouble{-1.0, 0.0}) < 1e-15);
}

TEST_CASE("p times star(p) has nonnegative real circle samples") {
  const LaurentPoly p(-1, {{0.4, 0.3}, {1.0, -0.2}, {-0.6, 0.5}});
  const std::size_t M = 64;
  const CircleGrid g = sample(p * p.star(), M);
  const CircleGrid gp = sample(p, M);
  double worst = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    worst = std::max(worst, std::abs(g[j] - std::norm(gp[j])));
    CHECK(g[j].real() >= -1e-12);
    CHECK(std::abs(g[j].imag()) < 1e-12);
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("sampling constants and monomials") {
  const CircleGrid ones = sample(LaurentPoly::constant({1.0, 0.0}), 4);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(std::abs(ones[j] - cdouble{1.0, 0.0}) < 1e-15);
  }
  const CircleGrid zg = sample(LaurentPoly::monomial({1.0, 0.0}, 1), 4);
  const cdouble want[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(std::abs(zg[j] - want[j]) < 1e-14);
  }
}

TEST_CASE("rational sampling matches direct evaluation; poles on nodes throw") {
  const RationalFn f(Poly({{0.3, 0.0}, {1.0, 0.0}}),
                     Poly({{-1.5, 0.0}, {1.0, 0.0}}));  // (z+0.3)/(z-1.5)
  const std::size_t M = 32;
  const CircleGrid g = sample(f, M);
  double worst = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    const cdouble z = CircleGrid::node(j, M);
    worst = std::max(worst, std::abs(g[j] - f.eval(z)));
  }
  CHECK(worst < 1e-12);

  // (z+1)/(z-1) has its pole exactly at the node z = 1.
  const RationalFn bad(Poly({{1.0, 0.0}, {1.0, 0.0}}),
                       Poly({{-1.0, 0.0}, {1.0, 0.0}}));
  CHECK_THROWS_AS((void)sample(bad, 16), nlft::PoleOnGrid);
}

TEST_CASE("coefficient recovery roundtrip") {
  const LaurentPoly p(-1, {{2.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});  // z + 2/z
  const LaurentPoly back = band_coefficients(sample(p, 16), -1, 1);
  CHECK((back - p).max_abs() < 1e-13);

  const CircleGrid zero(16);
  CHECK(band_coefficients(zero, -3, 3).is_zero());

  // random-ish band-8 polynomial, M = 64
  std::vector<cdouble> coeffs;
  for (int k = 0; k < 8; ++k) {
    coeffs.push_back({std::cos(1.7 * k + 0.3), std::sin(2.3 * k - 1.1)});
  }
  const LaurentPoly q(-3, coeffs);
  const LaurentPoly qb = band_coefficients(sample(q, 64), -3, 4);
  CHECK((qb - q).max_abs() < 1e-13);

  CHECK_THROWS_AS((void)band_coefficients(zero, 0, 16), nlft::BandTooWide);
}

TEST_CASE("roots of quadratics and Vieta") {
  const Poly p({{-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});  // z^2 - 1
  auto r = p.roots();
  REQUIRE(r.size() == 2);
  if (r[0].real() > r[1].real()) std::swap(r[0], r[1]);
  CHECK(std::abs(r[0] - cdouble{-1.0, 0.0}) < 1e-12);
  CHECK(std::abs(r[1] - cdouble{1.0, 0.0}) < 1e-12);

  const auto data = testutil::load_data("pairs_identities.json");
  const double inside = data["quadratic_roots"]["inside"].get<double>();
  const double outside = data["quadratic_roots"]["outside"].get<double>();
  const Poly q({{2.0, 0.0}, {9.0, 0.0}, {2.0, 0.0}});  // 2z^2 + 9z + 2
  auto qr = q.roots();
  REQUIRE(qr.size() == 2);
  if (std::abs(qr[0]) > std::abs(qr[1])) std::swap(qr[0], qr[1]);
  CHECK(std::abs(qr[0] - cdouble{inside, 0.0}) < 1e-12);
  CHECK(std::abs(qr[1] - cdouble{outside, 0.0}) < 1e-12);

  // Vieta: product of roots of monic p equals (-1)^deg times constant term.
  std::vector<cdouble> cs;
  for (int k = 0; k < 6; ++k) {
    cs.push_back({0.4 * std::cos(2.1 * k), 0.4 * std::sin(1.3 * k + 0.7)});
  }
  cs.push_back({1.0, 0.0});
  const Poly m(cs);
  cdouble prod{1.0, 0.0};
  for (cdouble root : m.roots()) prod *= root;
  const cdouble want = (m.degree() % 2 == 0 ? 1.0 : -1.0) * m.coeff(0);
  CHECK(std::abs(prod - want) < 1e-10);
}

TEST_CASE("root residuals stay small for moderate degrees") {
  std::vector<cdouble> cs;
  for (int k = 0; k <= 24; ++k) {
    cs.push_back({std::sin(3.1 * k + 0.2), std::cos(1.9 * k - 0.8)});
  }
  const Poly p(cs);
  const double lead = std::abs(p.leading());
  for (cdouble r : p.roots()) {
    CHECK(std::abs(p.eval(r)) / lead < 1e-8);
  }
}

TEST_CASE("grid quadrature matches the coefficient inner product") {
  const LaurentPoly p(-2, {{0.3, 0.1}, {1.0, 0.0}, {-0.2, 0.4}, {0.8, -0.3},
                           {0.05, 0.6}});
  const LaurentPoly q(-1, {{0.9, -0.4}, {0.2, 0.2}, {-0.5, 0.7}});
  const std::size_t M = 64;
  const cdouble quad =
      circle_mean(sample(p, M) * star_samples(sample(q, M)));
  cdouble exact{0.0, 0.0};
  for (int k = p.lo(); k <= p.hi(); ++k) {
    exact += p.coeff(k) * std::conj(q.coeff(k));
  }
  CHECK(std::abs(quad - exact) < 1e-12);
}

TEST_CASE("rational star and reduction") {
  const RationalFn f(Poly({{1.0, 0.0}, {1.0, 0.0}}),
                     Poly({{-2.0, 0.0}, {1.0, 0.0}}));  // (z+1)/(z-2)
  const cdouble z{0.3, 0.4};
  const cdouble direct = std::conj(f.eval(1.0 / std::conj(z)));
  CHECK(std::abs(f.star().eval(z) - direct) < 1e-13);

  // (z^2 - 1)/(z - 1) reduces to z + 1.
  const RationalFn g(Poly({{-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}),
                     Poly({{-1.0, 0.0}, {1.0, 0.0}}));
  CHECK(g.num().degree() == 1);
  CHECK(g.den().degree() == 0);
  CHECK(std::abs(g.eval({0.5, 0.5}) - cdouble{1.5, 0.5}) < 1e-12);
}

TEST_CASE("trimming keeps band edges significant") {
  const LaurentPoly p(-1, {{1e-15, 0.0}, {1.0, 0.0}, {1e-15, 0.0}});
  const LaurentPoly t = p.trimmed();
  CHECK(t.lo() == 0);
  CHECK(t.hi() == 0);
}

}  // TEST_SUITE
