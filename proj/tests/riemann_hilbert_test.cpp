#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"

#include "nlft/errors.hpp"
#include "nlft/factorize.hpp"
#include "nlft/inverse.hpp"
#include "nlft/io.hpp"
#include "nlft/pair.hpp"
#include "nlft/rh.hpp"
#include "nlft/transform.hpp"

using nlft::cdouble;
using nlft::CoefficientSequence;
using nlft::LaurentPair;
using nlft::LaurentPoly;
using nlft::PoleParameters;
using nlft::Poly;
using nlft::RationalFn;
using nlft::RHFactorization;
using nlft::SU11Pair;

namespace {

SU11Pair reference_pair() {
  return SU11Pair::rational(
      RationalFn(Poly({{0.0, 0.0}, {2.0, 0.0}}),
                 Poly({{-1.0, 0.0}, {1.0, 0.0}})),
      RationalFn(Poly({{1.0, 0.0}, {1.0, 0.0}}),
                 Poly({{-1.0, 0.0}, {1.0, 0.0}})));
}

SU11Pair single_exterior_pole_pair() {
  const RationalFn b(Poly::constant({0.3, 0.0}), Poly({{-2.0, 0.0}, {1.0, 0.0}}));
  return SU11Pair::rational(nlft::a_from_b_rational(b), b);
}

SU11Pair pair_for(const RationalFn& b) {
  return SU11Pair::rational(nlft::a_from_b_rational(b), b);
}

double factor_product_gap(const RHFactorization& f, const SU11Pair& p) {
  SU11Pair prod = f.middle.has_value()
                      ? pair_product(f.left, pair_product(*f.middle, f.right))
                      : pair_product(f.left, f.right);
  return testutil::pair_distance_at_probes(prod, p);
}

double laurent_pair_gap(const SU11Pair& p, const SU11Pair& q) {
  const LaurentPair& lp = p.as_laurent();
  const LaurentPair& lq = q.as_laurent();
  return std::max((lp.a - lq.a).max_abs(), (lp.b - lq.b).max_abs());
}

}  // namespace

TEST_SUITE("riemann_hilbert") {

TEST_CASE("energy of reference pairs") {
  CHECK(std::abs(nlft::energy(SU11Pair())) < 1e-15);
  const auto data = testutil::load_data("factorization.json");
  CHECK(std::abs(nlft::energy(reference_pair()) -
                 data["rational_test_pair"]["energy"].get<double>()) < 1e-12);
  CHECK(std::abs(nlft::energy(single_exterior_pole_pair()) -
                 data["bounded_single_pole"]["energy"].get<double>()) < 1e-9);
}

TEST_CASE("direct fixed point on the circle-pole pair") {
  const auto data = testutil::load_data("factorization.json");
  const auto& rtp = data["rational_test_pair"];
  const SU11Pair p = reference_pair();
  const nlft::DirectSolve sol = nlft::rh_direct_fixed_point(p);

  // A = 1, B = 1/2, s = 3/4 for this datum.
  for (const cdouble z : {cdouble{0.4, 0.3}, cdouble{-1.6, 0.8},
                          cdouble{2.3, -0.4}}) {
    CHECK(std::abs(sol.A.eval(z) - cdouble{1.0, 0.0}) < 1e-10);
    CHECK(std::abs(sol.B.eval(z) - cdouble{0.5, 0.0}) < 1e-10);
  }
  CHECK(std::abs(sol.s - 0.75) < 1e-10);

  const double rs = 1.0 / std::sqrt(sol.s);
  const SU11Pair right =
      SU11Pair::rational(cdouble{rs, 0.0} * sol.A, cdouble{rs, 0.0} * sol.B);
  CHECK(std::abs(right.as_rational().a.eval({0.0, 0.0}) -
                 cdouble{rtp["right_a"].get<double>(), 0.0}) < 1e-10);
  CHECK(std::abs(right.as_rational().b.eval({0.0, 0.0}) -
                 cdouble{rtp["right_b"].get<double>(), 0.0}) < 1e-10);
  CHECK(std::abs(nlft::energy(right) - rtp["right_energy"].get<double>()) <
        1e-10);

  // The complementary factor p * right^{-1} matches its frozen closed form.
  const SU11Pair middle = pair_product(p, pair_inverse(right));
  const RationalFn want_a(
      Poly(testutil::as_cvec(rtp["middle_a_num"])),
      Poly(testutil::as_cvec(rtp["middle_den"])));
  const RationalFn want_b(
      Poly(testutil::as_cvec(rtp["middle_b_num"])),
      Poly(testutil::as_cvec(rtp["middle_den"])));
  const SU11Pair want = SU11Pair::rational(want_a, want_b);
  CHECK(testutil::pair_distance_at_probes(middle, want) < 1e-9);
  CHECK(std::abs(nlft::energy(middle) -
                 rtp["middle_energy"].get<double>()) < 1e-10);

  // Energies add along the factorization.
  CHECK(std::abs(nlft::energy(middle) + nlft::energy(right) -
                 nlft::energy(p)) < 1e-10);
}

TEST_CASE("contraction splitting of laurent pairs") {
  const RHFactorization triv = nlft::rh_contraction_bounded(SU11Pair());
  CHECK(factor_product_gap(triv, SU11Pair()) < 1e-12);

  const CoefficientSequence F = nlft::random_sequence(-4, 10, 0.8, 8);
  const SU11Pair p = nlft::nlft_finite(F);
  const RHFactorization f = nlft::rh_contraction_bounded(p, 1e-11);

  const SU11Pair left_want = nlft::nlft_finite(F.restricted(-4, -1));
  const SU11Pair right_want = nlft::nlft_finite(F.restricted(0, 5));
  CHECK(laurent_pair_gap(f.left, left_want) < 1e-9);
  CHECK(laurent_pair_gap(f.right, right_want) < 1e-9);
  CHECK(factor_product_gap(f, p) < 1e-9);
  CHECK(std::abs(nlft::energy(f.left) + nlft::energy(f.right) -
                 nlft::energy(p)) < 1e-8);
  CHECK_FALSE(f.middle.has_value());
  CHECK(!f.iteration_residuals.empty());
}

TEST_CASE("contraction splitting of a bounded rational pair") {
  const auto data = testutil::load_data("factorization.json");
  const auto& bsp = data["bounded_single_pole"];
  const SU11Pair p = single_exterior_pole_pair();
  const RHFactorization f = nlft::rh_contraction_bounded(p, 1e-11);

  CHECK(factor_product_gap(f, p) < 1e-8);
  CHECK(std::abs(nlft::energy(f.left) + nlft::energy(f.right) -
                 nlft::energy(p)) < 1e-8);

  // b's only pole lies outside the closed disc, so the left factor is
  // trivial: all of the energy sits on the right.
  CHECK(std::abs(nlft::energy(f.left)) < 1e-8);
  CHECK(std::abs(nlft::energy(f.right) - bsp["energy"].get<double>()) < 1e-8);

  // Observed contraction factor against kappa = sqrt(1 - 1/sup|a|^2).
  const double kappa = bsp["kappa"].get<double>();
  const auto& res = f.iteration_residuals;
  REQUIRE(res.size() >= 4);
  double ratio_acc = 0.0;
  int count = 0;
  for (std::size_t k = 1; k + 1 < res.size(); ++k) {
    if (res[k] <= 0 || res[k + 1] <= 0) break;
    ratio_acc += std::log(res[k + 1] / res[k]);
    ++count;
  }
  REQUIRE(count > 0);
  const double observed = std::exp(ratio_acc / count);
  CHECK(observed <= kappa * 1.1);
}

TEST_CASE("contraction solver rejects unbounded or grid input") {
  CHECK_THROWS_AS((void)nlft::rh_contraction_bounded(reference_pair()),
                  nlft::NotBounded);
  const nlft::GridPair g = SU11Pair().sampled(64);
  CHECK_THROWS_AS(
      (void)nlft::rh_contraction_bounded(SU11Pair::grid(g.a, g.b)),
      nlft::RepresentationMismatch);
}

TEST_CASE("triple factorization of laurent pairs splits at index zero") {
  const CoefficientSequence F = nlft::random_sequence(-3, 8, 0.8, 12);
  const SU11Pair p = nlft::nlft_finite(F);
  const RHFactorization f = nlft::triple_factorization_rational(p);
  REQUIRE(f.middle.has_value());
  CHECK(laurent_pair_gap(*f.middle, SU11Pair()) < 1e-14);
  CHECK(laurent_pair_gap(f.left, nlft::nlft_finite(F.restricted(-3, -1))) <
        1e-9);
  CHECK(laurent_pair_gap(f.right, nlft::nlft_finite(F.restricted(0, 4))) <
        1e-9);
}

TEST_CASE("triple factorization leaves circle poles in the middle") {
  const SU11Pair p = reference_pair();
  const RHFactorization f = nlft::triple_factorization_rational(p);
  REQUIRE(f.middle.has_value());

  // Both outer factors are trivial here; the pair is its own middle.
  CHECK(std::abs(nlft::energy(f.left)) < 1e-12);
  CHECK(std::abs(nlft::energy(f.right)) < 1e-12);
  CHECK(testutil::pair_distance_at_probes(*f.middle, p) < 1e-9);
  CHECK(factor_product_gap(f, p) < 1e-9);

  REQUIRE(f.pole_params.size() == 1);
  const PoleParameters& pp = f.pole_params[0];
  CHECK(std::abs(pp.z - cdouble{1.0, 0.0}) < 1e-8);
  CHECK(pp.n == 1);
  CHECK(pp.n_minus == 1);
  CHECK(pp.n_plus == 0);
  CHECK_FALSE(pp.shared);
  CHECK(std::abs(pp.mu - 0.25) < 1e-6);
}

TEST_CASE("triple factorization sorts inside, circle, and outside poles") {
  const RationalFn bl(Poly::constant({0.35, 0.0}), Poly({{-0.4, 0.0}, {1.0, 0.0}}));
  const RationalFn bm(Poly::constant({0.6, 0.0}), Poly({{-1.0, 0.0}, {1.0, 0.0}}));
  const RationalFn br(Poly::constant({0.5, 0.0}), Poly({{-2.5, 0.0}, {1.0, 0.0}}));
  const SU11Pair p = pair_product(
      pair_for(bl), pair_product(pair_for(bm), pair_for(br)));

  const RHFactorization f = nlft::triple_factorization_rational(p);
  REQUIRE(f.middle.has_value());
  CHECK(factor_product_gap(f, p) < 1e-5);

  const auto left_poles = f.left.as_rational().b.poles();
  REQUIRE(!left_poles.empty());
  for (const cdouble q : left_poles) CHECK(std::abs(q) < 1.0);

  const auto right_poles = f.right.as_rational().b.poles();
  REQUIRE(!right_poles.empty());
  for (const cdouble q : right_poles) CHECK(std::abs(q) > 1.0);

  const auto mid_poles = f.middle->as_rational().b.poles();
  REQUIRE(!mid_poles.empty());
  for (const cdouble q : mid_poles) {
    CHECK(std::abs(std::abs(q) - 1.0) < 1e-6);
  }

  REQUIRE(f.pole_params.size() == 1);
  CHECK(std::abs(f.pole_params[0].z - cdouble{1.0, 0.0}) < 1e-6);
  CHECK(f.pole_params[0].n == 1);
  CHECK(f.pole_params[0].mu > 0.0);

  const double esum = nlft::energy(f.left) + nlft::energy(*f.middle) +
                      nlft::energy(f.right);
  CHECK(std::abs(esum - nlft::energy(p)) < 1e-6);
}

TEST_CASE("shared pole factorization with a one-sided split") {
  const SU11Pair p = reference_pair();
  PoleParameters req;
  req.z = {1.0, 0.0};
  req.n = 1;
  req.n_plus = 0;
  req.n_minus = 1;
  req.shared = false;
  const RHFactorization f = nlft::shared_pole_factorization(p, {req});

  CHECK(factor_product_gap(f, p) < 1e-3);
  CHECK(std::abs(nlft::energy(f.right)) < 1e-3);
  REQUIRE(f.pole_params.size() == 1);
  CHECK(f.pole_params[0].n_minus == 1);
  CHECK(f.pole_params[0].n_plus == 0);
  CHECK_FALSE(f.pole_params[0].shared);
}

TEST_CASE("shared pole factorization with balanced weights") {
  const SU11Pair p = reference_pair();
  PoleParameters req;
  req.z = {1.0, 0.0};
  req.n = 1;
  req.n_plus = 1;
  req.n_minus = 1;
  req.shared = true;
  req.mu = 0.25;
  req.mu_plus = 0.5;
  req.mu_minus = 0.5;
  const RHFactorization f = nlft::shared_pole_factorization(p, {req});

  CHECK(factor_product_gap(f, p) < 1e-4);
  REQUIRE(f.pole_params.size() == 1);
  const PoleParameters& got = f.pole_params[0];
  CHECK(got.shared);
  CHECK(got.n_plus == 1);
  CHECK(got.n_minus == 1);
  CHECK(std::abs(got.z - cdouble{1.0, 0.0}) < 1e-4);
  CHECK(std::abs(got.mu_plus - 0.5) < 1e-2);
  CHECK(std::abs(got.mu_minus - 0.5) < 1e-2);
  CHECK(std::abs(got.mu_plus * got.mu_minus - got.mu) < 1e-3);

  // Both factors genuinely carry the circle pole.
  const auto lp = f.left.as_rational().b.poles();
  const auto rp = f.right.as_rational().b.poles();
  REQUIRE(lp.size() == 1);
  REQUIRE(rp.size() == 1);
  CHECK(std::abs(lp[0] - cdouble{1.0, 0.0}) < 1e-10);
  CHECK(std::abs(rp[0] - cdouble{1.0, 0.0}) < 1e-10);
}

TEST_CASE("distinct shared weights give distinct factorizations") {
  const SU11Pair p = reference_pair();
  auto make = [&](double mu_plus) {
    PoleParameters req;
    req.z = {1.0, 0.0};
    req.n = 1;
    req.n_plus = 1;
    req.n_minus = 1;
    req.shared = true;
    req.mu = 0.25;
    req.mu_plus = mu_plus;
    req.mu_minus = 0.25 / mu_plus;
    return nlft::shared_pole_factorization(p, {req});
  };
  const RHFactorization fa = make(0.7);
  const RHFactorization fb = make(0.3);
  CHECK(factor_product_gap(fa, p) < 1e-3);
  CHECK(factor_product_gap(fb, p) < 1e-3);
  CHECK(testutil::pair_distance_at_probes(fa.right, fb.right) > 1e-2);
}

TEST_CASE("shared pole factorization validates its input") {
  PoleParameters req;
  req.z = {1.0, 0.0};
  req.n = 1;
  req.n_plus = 1;
  req.n_minus = 1;
  req.shared = true;

  CHECK_THROWS_AS(
      (void)nlft::shared_pole_factorization(
          SU11Pair::rational(RationalFn::constant({1.0, 0.0}),
                             RationalFn()),
          {req}),
      nlft::ValueOutOfRange);

  CHECK_THROWS_AS(
      (void)nlft::shared_pole_factorization(single_exterior_pole_pair(),
                                            {req}),
      nlft::ValueOutOfRange);

  PoleParameters wrong = req;
  wrong.z = {0.0, 1.0};
  CHECK_THROWS_AS(
      (void)nlft::shared_pole_factorization(reference_pair(), {wrong}),
      nlft::OrderMismatch);

  PoleParameters wrong_order = req;
  wrong_order.n = 2;
  wrong_order.n_plus = 2;
  CHECK_THROWS_AS(
      (void)nlft::shared_pole_factorization(reference_pair(), {wrong_order}),
      nlft::OrderMismatch);
}

TEST_CASE("projection recursion recovers half-line windows") {
  CHECK(nlft::projection_recursion(SU11Pair(), 6).sequence.empty());

  const CoefficientSequence F = nlft::random_sequence(0, 8, 0.7, 25);
  const SU11Pair p = nlft::nlft_finite(F);
  const auto proj = nlft::projection_recursion(p, 12);
  const CoefficientSequence strip = nlft::layer_strip_finite(p);
  double worst = 0.0;
  for (int n = 0; n <= 7; ++n) {
    worst = std::max(worst,
                     std::abs(proj.sequence.at(n) - strip.at(n)));
  }
  CHECK(worst < 1e-8);
  for (double d : proj.step_norm_deviations) CHECK(d < 1e-8);

  CHECK_THROWS_AS((void)nlft::projection_recursion(reference_pair(), 4),
                  nlft::NotBounded);
}

TEST_CASE("projection recursion handles two-sided windows") {
  const CoefficientSequence F = nlft::random_sequence(-2, 6, 0.6, 30);
  const SU11Pair p = nlft::nlft_finite(F);
  const auto proj = nlft::projection_recursion(p, 10);
  double worst = 0.0;
  for (int n = -2; n <= 3; ++n) {
    worst = std::max(worst, std::abs(proj.sequence.at(n) - F.at(n)));
  }
  CHECK(worst < 1e-8);
}

}  // TEST_SUITE
