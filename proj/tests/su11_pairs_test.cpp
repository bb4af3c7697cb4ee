#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"

#include "nlft/errors.hpp"
#include "nlft/io.hpp"
#include "nlft/pair.hpp"
#include "nlft/transform.hpp"

using nlft::cdouble;
using nlft::CircleGrid;
using nlft::CoefficientSequence;
using nlft::LaurentPair;
using nlft::LaurentPoly;
using nlft::Poly;
using nlft::RationalFn;
using nlft::SU11Pair;

namespace {

SU11Pair lift(const LaurentPair& p) {
  return SU11Pair::laurent(p.a, p.b);
}

}  // namespace

TEST_SUITE("su11_pairs") {

TEST_CASE("coefficient sequences validate and index correctly") {
  CHECK_THROWS_AS(CoefficientSequence(0, {{1.0, 0.0}}),
                  nlft::ModulusAtLeastOne);
  CHECK_THROWS_AS(CoefficientSequence(0, {{0.8, 0.8}}),
                  nlft::ModulusAtLeastOne);

  const CoefficientSequence F(-2, {{0.0, 0.0}, {0.3, 0.1}, {0.0, 0.0},
                                   {-0.2, 0.0}, {0.0, 0.0}});
  CHECK(F.start() == -2);
  CHECK(F.size() == 5);
  CHECK(F.support_lo() == -1);
  CHECK(F.support_hi() == 1);
  CHECK(std::abs(F.at(-1) - cdouble{0.3, 0.1}) < 1e-15);
  CHECK(std::abs(F.at(7)) == 0.0);
  CHECK(std::abs(F.at(-9)) == 0.0);

  const CoefficientSequence R = F.restricted(0, 1);
  CHECK(R.start() == 0);
  CHECK(R.size() == 2);
  CHECK(std::abs(R.at(1) - cdouble{-0.2, 0.0}) < 1e-15);
  CHECK(std::abs(R.at(-1)) == 0.0);

  CHECK(CoefficientSequence().empty());
}

TEST_CASE("single-layer pairs") {
  const LaurentPair id = nlft::transfer_matrix({0.0, 0.0}, 0);
  CHECK((id.a - LaurentPoly::constant({1.0, 0.0})).max_abs() < 1e-15);
  CHECK(id.b.is_zero());

  const auto data = testutil::load_data("pairs_identities.json");
  const auto& sh = data["single_half"];
  const LaurentPair half = nlft::transfer_matrix({0.5, 0.0}, 0);
  CHECK(std::abs(half.a.coeff(0) - cdouble{sh["a"].get<double>(), 0.0}) <
        1e-12);
  CHECK(std::abs(half.b.coeff(0) - cdouble{sh["b"].get<double>(), 0.0}) <
        1e-12);

  const LaurentPair shifted = nlft::transfer_matrix({0.0, 0.5}, 3);
  CHECK(shifted.b.lo() == 3);
  CHECK(shifted.b.hi() == 3);
  const double C = 2.0 / std::sqrt(3.0);
  CHECK(std::abs(shifted.b.coeff(3) - cdouble{0.0, 0.5 * C}) < 1e-12);
  CHECK(std::abs(shifted.a.coeff(0) - cdouble{C, 0.0}) < 1e-12);

  CHECK_THROWS_AS((void)nlft::transfer_matrix({1.0, 0.0}, 0),
                  nlft::ModulusAtLeastOne);
}

TEST_CASE("pair product has an identity and annihilates inverses") {
  const LaurentPair p = pair_product(nlft::transfer_matrix({0.3, 0.1}, 0),
                                     nlft::transfer_matrix({-0.2, 0.4}, 1));
  const SU11Pair sp = lift(p);

  const SU11Pair left = pair_product(SU11Pair(), sp);
  const SU11Pair right = pair_product(sp, SU11Pair());
  CHECK(testutil::pair_distance_at_probes(left, sp) < 1e-14);
  CHECK(testutil::pair_distance_at_probes(right, sp) < 1e-14);

  const SU11Pair unit = pair_product(sp, pair_inverse(sp));
  const LaurentPair& u = unit.as_laurent();
  CHECK((u.a - LaurentPoly::constant({1.0, 0.0})).max_abs() < 1e-12);
  CHECK(u.b.trimmed(1e-12).is_zero());
}

TEST_CASE("two-entry product matches the closed form") {
  const auto data = testutil::load_data("pairs_identities.json");
  const auto& te = data["two_entry"];
  const cdouble s = testutil::as_c(te["s"]);
  const cdouble t = testutil::as_c(te["t"]);
  const LaurentPair p = pair_product(nlft::transfer_matrix(s, 0),
                                     nlft::transfer_matrix(t, 1));

  CHECK(std::abs(p.a.coeff(-1) - testutil::as_c(te["a_coeff_zm1"])) < 1e-12);
  CHECK(std::abs(p.a.coeff(0) - testutil::as_c(te["a_coeff_z0"])) < 1e-12);
  CHECK(std::abs(p.b.coeff(0) - testutil::as_c(te["b_coeff_z0"])) < 1e-12);
  CHECK(std::abs(p.b.coeff(1) - testutil::as_c(te["b_coeff_z1"])) < 1e-12);
  CHECK(p.a.lo() == -1);
  CHECK(p.a.hi() == 0);
  CHECK(p.b.lo() == 0);
  CHECK(p.b.hi() == 1);
}

TEST_CASE("pair inverse matches the frozen values and is an involution") {
  const auto data = testutil::load_data("pairs_identities.json");
  const auto& sh = data["single_half"];
  const LaurentPair half = nlft::transfer_matrix({0.5, 0.0}, 0);
  const LaurentPair inv = pair_inverse(half);
  CHECK(std::abs(inv.a.coeff(0) - cdouble{sh["inv_a"].get<double>(), 0.0}) <
        1e-12);
  CHECK(std::abs(inv.b.coeff(0) - cdouble{sh["inv_b"].get<double>(), 0.0}) <
        1e-12);

  const LaurentPair p = pair_product(nlft::transfer_matrix({0.2, -0.5}, -1),
                                     nlft::transfer_matrix({0.1, 0.3}, 2));
  const LaurentPair back = pair_inverse(pair_inverse(p));
  CHECK((back.a - p.a).max_abs() < 1e-15);
  CHECK((back.b - p.b).max_abs() < 1e-15);
}

TEST_CASE("operator norm at circle points") {
  CHECK(std::abs(operator_norm_at(SU11Pair(), {1.0, 0.0}) - 1.0) < 1e-15);

  const auto data = testutil::load_data("pairs_identities.json");
  const auto& sh = data["single_half"];
  const SU11Pair half = lift(nlft::transfer_matrix({0.5, 0.0}, 0));
  CHECK(std::abs(operator_norm_at(half, {1.0, 0.0}) -
                 sh["op_norm_at_1"].get<double>()) < 1e-12);
  CHECK(std::abs(sh["op_norm_at_1"].get<double>() -
                 sh["op_norm_closed"].get<double>()) < 1e-12);

  const auto& na = data["norm_arccosh"];
  CHECK(std::abs(std::abs(na["abs_a"].get<double>()) +
                 na["abs_b"].get<double>() -
                 std::exp(std::acosh(na["abs_a"].get<double>()))) < 1e-12);
}

TEST_CASE("norm equals exp(arccosh|a|) across random transforms") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const CoefficientSequence F =
        nlft::random_sequence(-4, 9, 0.85, seed);
    const SU11Pair p = nlft::nlft_finite(F);
    const LaurentPair& lp = p.as_laurent();
    for (int j = 0; j < 32; ++j) {
      const cdouble z = CircleGrid::node(static_cast<std::size_t>(j), 32);
      const double absa = std::abs(lp.a.eval(z));
      const double norm = operator_norm_at(p, z);
      CHECK(std::abs(norm - std::exp(std::acosh(absa))) < 1e-12);
    }
  }
}

TEST_CASE("h distance vanishes on equal pairs and matches the frozen value") {
  const SU11Pair half = lift(nlft::transfer_matrix({0.5, 0.0}, 0));
  CHECK(nlft::h_distance(half, half, 256) < 1e-14);

  const auto data = testutil::load_data("pairs_identities.json");
  const auto& hd = data["h_distance_single"];
  const double d = nlft::h_distance(SU11Pair(), half, 256);
  CHECK(std::abs(d - hd["total"].get<double>()) < 1e-12);
  CHECK(std::abs(hd["log_term"].get<double>() +
                 hd["ratio_term"].get<double>() -
                 hd["total"].get<double>()) < 1e-15);
}

TEST_CASE("h distance satisfies the weak triangle inequality") {
  const std::size_t M = 512;
  std::vector<SU11Pair> ps;
  ps.push_back(SU11Pair());
  ps.push_back(lift(nlft::transfer_matrix({0.5, 0.0}, 0)));
  ps.push_back(lift(pair_product(nlft::transfer_matrix({0.3, -0.4}, -1),
                                 nlft::transfer_matrix({-0.1, 0.6}, 1))));
  ps.push_back(lift(nlft::nlft_finite(nlft::random_sequence(-3, 7, 0.7, 11))
                        .as_laurent()));
  for (const SU11Pair& p : ps) {
    for (const SU11Pair& q : ps) {
      for (const SU11Pair& r : ps) {
        const double pq = nlft::h_distance(p, q, M);
        const double qr = nlft::h_distance(q, r, M);
        const double pr = nlft::h_distance(p, r, M);
        CHECK(pr <= 4.0 * (pq + qr) + 1e-12);
      }
    }
  }
}

TEST_CASE("unimodularity defect is tiny for genuine transforms") {
  CHECK(nlft::unimodularity_defect(SU11Pair(), 64) < 1e-15);
  const CoefficientSequence F = nlft::random_sequence(-5, 11, 0.9, 5);
  const SU11Pair p = nlft::nlft_finite(F);
  CHECK(nlft::unimodularity_defect(p, 1024) < 1e-11);

  // Breaking the b-slot must show up in the defect.
  const LaurentPair& lp = p.as_laurent();
  const SU11Pair broken =
      SU11Pair::laurent(lp.a, lp.b + LaurentPoly::constant({0.1, 0.0}));
  CHECK(nlft::unimodularity_defect(broken, 1024) > 1e-3);
}

TEST_CASE("a stays bounded below by one outside the disc") {
  const CoefficientSequence F = nlft::random_sequence(-6, 13, 0.9, 17);
  const LaurentPair lp = nlft::nlft_finite(F).as_laurent();
  double worst = 2.0;
  for (int j = 0; j < 1024; ++j) {
    const double th = 2.0 * M_PI * j / 1024.0;
    const cdouble z = 1.1 * cdouble{std::cos(th), std::sin(th)};
    worst = std::min(worst, std::abs(lp.a.eval(z)));
  }
  CHECK(worst >= 1.0 - 1e-9);
  CHECK(std::abs(lp.a.eval({50.0, 0.0})) >= 1.0 - 1e-9);
}

TEST_CASE("norms of a pair and its inverse agree at the circle") {
  const CoefficientSequence F = nlft::random_sequence(-2, 6, 0.8, 23);
  const SU11Pair p = nlft::nlft_finite(F);
  const SU11Pair q = pair_inverse(p);
  for (int j = 0; j < 16; ++j) {
    const cdouble z = CircleGrid::node(static_cast<std::size_t>(j), 16);
    const double np = operator_norm_at(p, z);
    const double nq = operator_norm_at(q, z);
    CHECK(std::abs(np - nq) < 1e-12);
    CHECK(np * nq >= 1.0 - 1e-12);
  }
}

TEST_CASE("representation plumbing") {
  const SU11Pair id;
  CHECK(id.is_laurent());
  CHECK_THROWS_AS((void)id.as_rational(), nlft::RepresentationMismatch);
  CHECK_THROWS_AS((void)id.as_grid(), nlft::RepresentationMismatch);

  // Laurent pairs lift to rational form exactly.
  const LaurentPair lp = pair_product(nlft::transfer_matrix({0.4, 0.0}, -1),
                                      nlft::transfer_matrix({0.0, 0.3}, 2));
  const SU11Pair p = lift(lp);
  const nlft::RationalPair rp = p.to_rational();
  for (const cdouble z : {cdouble{0.7, 0.2}, cdouble{-1.4, 0.6}}) {
    CHECK(std::abs(rp.a.eval(z) - lp.a.eval(z)) < 1e-12);
    CHECK(std::abs(rp.b.eval(z) - lp.b.eval(z)) < 1e-12);
  }

  const nlft::GridPair gp = p.sampled(32);
  for (std::size_t j = 0; j < 32; ++j) {
    const cdouble z = CircleGrid::node(j, 32);
    CHECK(std::abs(gp.a[j] - lp.a.eval(z)) < 1e-12);
    CHECK(std::abs(gp.b[j] - lp.b.eval(z)) < 1e-12);
  }

  CHECK_THROWS_AS((void)SU11Pair::grid(CircleGrid(8), CircleGrid(8))
                      .a_at_infinity(),
                  nlft::RepresentationMismatch);
  CHECK_THROWS_AS(
      (void)SU11Pair::laurent(LaurentPoly(0, {{1.0, 0.0}, {0.5, 0.0}}),
                              LaurentPoly())
          .a_at_infinity(),
      nlft::ValueOutOfRange);
}

TEST_CASE("energy of the rational reference pair") {
  // (a, b) = (2z/(z-1), (z+1)/(z-1)): a(infinity) = 2, energy log 2.
  const RationalFn a(Poly({{0.0, 0.0}, {2.0, 0.0}}),
                     Poly({{-1.0, 0.0}, {1.0, 0.0}}));
  const RationalFn b(Poly({{1.0, 0.0}, {1.0, 0.0}}),
                     Poly({{-1.0, 0.0}, {1.0, 0.0}}));
  const SU11Pair p = SU11Pair::rational(a, b);
  CHECK(std::abs(p.a_at_infinity() - cdouble{2.0, 0.0}) < 1e-14);
  CHECK(std::abs(p.energy() - std::log(2.0)) < 1e-14);
  // The pair has a circle pole at z = 1, so check unimodularity pointwise
  // away from it instead of on a uniform grid.
  for (double th : {0.4, 1.1, 2.0, 2.9, 4.2, 5.5}) {
    const cdouble z{std::cos(th), std::sin(th)};
    const double d =
        std::norm(a.eval(z)) - std::norm(b.eval(z)) - 1.0;
    CHECK(std::abs(d) < 1e-12);
  }
}

}  // TEST_SUITE
