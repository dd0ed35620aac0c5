#include "gst/error.hpp"
#include "gst/weights.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace gst;

TEST_CASE("modulus of continuity on dyadic grids") {
  CHECK(check_modulus_of_continuity(Weight::power(0.5), 12).ok);
  const auto sq = check_modulus_of_continuity(Weight::power(2.0), 12);
  CHECK_FALSE(sq.ok);
  REQUIRE(sq.witness);
  CHECK(sq.witness->first == 0.25);
  CHECK(sq.witness->second == 0.25);
  CHECK(check_modulus_of_continuity(Weight::log_power(1.0), 12).ok);
  CHECK_THROWS_AS(check_modulus_of_continuity(Weight::power(1.0), 3), ParameterError);
}

TEST_CASE("table weights validate and reject bad samples") {
  CHECK_THROWS_AS(Weight::table({{0.0, 0.0}, {0.5, 0.4}, {1.0, 0.3}}), InvalidWeight);
  CHECK_THROWS_AS(Weight::table({{0.0, 0.1}, {1.0, 1.0}}), InvalidWeight);
  const auto w = Weight::table({{0.0, 0.0}, {0.5, 0.5}, {1.0, 0.75}});
  CHECK(w(0.25) == doctest::Approx(0.25));
  CHECK(w(0.75) == doctest::Approx(0.625));
  const auto bad = Weight::custom("negative", [](double t) { return -t; });
  CHECK_THROWS_AS(check_modulus_of_continuity(bad, 8), InvalidWeight);
}

TEST_CASE("check_majorant picks the first passing exponent") {
  auto r = check_majorant(Weight::power(2.0), {1.0, 0.5});
  CHECK(r.ok);
  CHECK(*r.lambda == 0.5);
  r = check_majorant(Weight::power(1.0), {1.0});
  CHECK(r.ok);
  CHECK(*r.lambda == 1.0);
  CHECK_FALSE(check_majorant(Weight::exp_inverse(), {1.0, 0.5, 0.25}).ok);
}

TEST_CASE("majorant property is stable under powers") {
  const std::vector<double> base{4.0, 2.0, 1.0, 0.5, 0.25};
  for (const auto& [name, w] : builtin_majorants()) {
    const auto m = check_majorant(w, base);
    REQUIRE_MESSAGE(m.ok, name);
    for (double p : {0.25, 0.5, 2.0, 4.0}) {
      std::vector<double> scaled;
      for (double c : base) scaled.push_back(c / p);
      CHECK_MESSAGE(check_majorant(w.pow(p), scaled).ok, name << " ^ " << p);
    }
  }
}

TEST_CASE("almost-decreasing property of w^lambda / t for built-in weights") {
  for (const auto& [name, w] : builtin_majorants()) {
    const double lam = *w.lambda_hint();
    const auto wl = w.pow(lam);
    for (int i = 1; i <= 40; ++i) {
      for (int j = i + 1; j <= 40; ++j) {
        const double s = std::ldexp(1.0, -j) * 1.5;
        const double t = std::ldexp(1.0, -i);
        CHECK_MESSAGE(wl(t) / t <= 2.0 * wl(s) / s * (1.0 + 1e-12), name);
      }
    }
  }
}

TEST_CASE("condition (A1)") {
  for (double a : {0.5, 1.0, 3.0}) {
    const auto r = check_A1(Weight::power(a), 30);
    CHECK(r.ok);
    CHECK(r.ratio_low == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.ratio_high == doctest::Approx(2.0).epsilon(1e-14));
  }
  const auto lg = check_A1(Weight::log_power(1.0), 30);
  CHECK(lg.ok);
  CHECK(lg.ratio_low >= 1.0);
  CHECK(lg.ratio_high <= 2.0);
  CHECK_FALSE(check_A1(Weight::exp_exp_inverse(), 30).ok);
  for (const auto& [name, w] : a1_family()) CHECK_MESSAGE(check_A1(w, 30).ok, name);
}

TEST_CASE("condition (A2) Dini integral") {
  const auto r = check_A2(Weight::power(0.5), 0.5, 20);
  CHECK(r.ok);
  CHECK(r.dini_integral == doctest::Approx(4.0).epsilon(1e-10));
  const auto l2 = check_A2(Weight::log_power(2.0), 1.0, 20);
  CHECK(l2.ok);
  CHECK(l2.dini_integral == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_FALSE(check_A2(Weight::log_power(1.0), 1.0, 20).ok);
  // Partial integrals of dt/(t log(e/t)) grow like log(1 + depth ln 2).
  const double q10 = check_A2(Weight::log_power(1.0), 1.0, 10).quadrature_part;
  const double q40 = check_A2(Weight::log_power(1.0), 1.0, 40).quadrature_part;
  CHECK(q10 == doctest::Approx(std::log1p(10 * std::numbers::ln2)).epsilon(1e-10));
  CHECK(q40 > q10 + 1.0);
  CHECK_THROWS_AS(check_A2(Weight::custom("c", [](double t) { return t; }), 0.5, 10), Uncertified);
}

TEST_CASE("monomial sup and condition (a)") {
  double arg = 0.0;
  const double want = oracle::golden_max(
      [](double r) { return std::pow(r, 100) * (1.0 - r); }, 0.0, 1.0, &arg);
  CHECK(want == doctest::Approx(std::pow(100.0 / 101.0, 100) / 101.0).epsilon(1e-12));
  const auto s = sup_monomial_weight(Weight::power(1.0), 100);
  CHECK(s.sup == doctest::Approx(want).epsilon(1e-10));
  CHECK(s.sup <= 3.0 * 0.01);

  const auto s2 = sup_monomial_weight(Weight::power(2.0), 10);
  CHECK(s2.argmax_r == doctest::Approx(10.0 / 12.0).epsilon(1e-6));

  const auto a = check_condition_a(Weight::power(2.0), 10);
  CHECK(a.ok);
  CHECK(a.kappa >= 1.0);
  CHECK(condition_a_constant(Weight::power(2.0), 10, 1.0) <= 10.0);

  CHECK_THROWS_AS(check_condition_a(Weight::custom("one", [](double) { return 1.0; }), 10),
                  InvalidWeight);
}

TEST_CASE("condition (b) ratios match the closed form for powers") {
  for (double a : {1.0, 0.5, 2.0}) {
    const auto r = check_condition_b(Weight::power(a), 30);
    CHECK(r.ok);
    CHECK(r.C2 <= 2.0);
    for (int j = 2; j <= 30; ++j) {
      const double L = j * std::numbers::ln2;
      CHECK(r.ratios[j - 2] == doctest::Approx((1.0 + L) / L).epsilon(1e-9));
    }
  }
}
