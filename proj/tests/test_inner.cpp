#include "gst/error.hpp"
#include "gst/fixtures.hpp"
#include "gst/inner_outer.hpp"
#include "gst/roberts.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace gst;
namespace fx = gst::fixtures;

namespace {

const double pi = std::numbers::pi;

// Herglotz integral of the triadic Cantor measure: level-n cylinders of mass
// 2^-n, kernel at their midpoints, summed by ternary recursion.
Complex triadic_herglotz(Complex z, int levels) {
  Complex s = 0.0;
  const double len = std::pow(3.0, -levels);
  const double mass = std::ldexp(1.0, -levels);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << levels); ++code) {
    double lo = 0.0;
    for (int j = 0; j < levels; ++j)
      if (code >> (levels - 1 - j) & 1) lo += 2.0 * std::pow(3.0, -(j + 1));
    const Complex zeta = std::polar(1.0, 2.0 * pi * (lo + 0.5 * len));
    s += mass * (zeta + z) / (zeta - z);
  }
  return s;
}

Complex random_disc_point(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(rmax * std::sqrt(u(rng)), 2.0 * pi * u(rng));
}

}  // namespace

TEST_CASE("Blaschke products") {
  const BlaschkeSeq at_origin{{0.0}, 0.0};
  CHECK(std::abs(eval_blaschke(at_origin, 0.5).value - Complex(0.5)) < 1e-15);
  const BlaschkeSeq half{{0.5}, 0.0};
  CHECK(std::abs(eval_blaschke(half, 0.0).value - Complex(0.5)) < 1e-15);

  const BlaschkeSeq several{{0.5, Complex(-0.3, 0.4), Complex(0.1, -0.8)}, 0.7};
  for (int i = 0; i < 128; ++i) {
    const auto v = eval_blaschke(several, circle_point(i / 128.0));
    CHECK(std::abs(std::abs(v.value) - 1.0) <= 1e-12);
    CHECK(v.err <= 1e-12);
  }
  CHECK_THROWS_AS(eval_blaschke(several, 1.5), DomainError);
}

TEST_CASE("singular inner values") {
  const CircleMeasure atom = CircleMeasure::atom(0.0, 1.0);
  const auto at0 = eval_singular_inner(atom, 0.0);
  CHECK(std::abs(at0.value - std::exp(-1.0)) < 1e-15);
  const auto at_half = eval_singular_inner(atom, 0.5);
  CHECK(std::abs(at_half.value) == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
  CHECK(std::abs(at_half.value) == doctest::Approx(0.0497871).epsilon(1e-6));

  const SingularInner triadic(fx::triadic_measure());
  CHECK(std::abs(triadic.eval(0.0).value - std::exp(-1.0)) < 1e-14);
  for (Complex z : {Complex(0.3, 0.2), Complex(-0.5, 0.1), Complex(0.0, -0.6)}) {
    CAPTURE(z);
    const auto v = triadic.eval(z, 1e-10);
    const Complex oracle = std::exp(-triadic_herglotz(z, 16));
    // The depth-24 pyramid floors the certified radius near 1e-7 here.
    CHECK(v.err <= 1e-6);
    CHECK(std::abs(v.value - oracle) <= v.err + 1e-6);
  }
  CHECK_THROWS_AS(triadic.eval(1.0), DomainError);
}

TEST_CASE("Poisson bounds bracket the singular inner modulus") {
  const SingularInner S(fx::triadic_measure());
  std::mt19937_64 rng(7);
  for (int i = 0; i < 64; ++i) {
    const Complex z = random_disc_point(rng, 0.95);
    const auto v = S.eval(z, 1e-10);
    const auto p = S.poisson(z);
    CHECK(p.lower <= p.upper);
    CHECK(-std::log(std::abs(v.value)) >= p.lower - 1e-8);
    CHECK(-std::log(std::abs(v.value)) <= p.upper + 1e-8);
  }
}

TEST_CASE("singular inner functions multiply") {
  const CircleMeasure mu = fx::triadic_measure();
  const CircleMeasure nu = CircleMeasure::atom(0.6, 0.7);
  const SingularInner Smu(mu), Snu(nu), Ssum(mu + nu);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 32; ++i) {
    const Complex z = random_disc_point(rng, 0.9);
    const auto a = Smu.eval(z, 1e-11);
    const auto b = Snu.eval(z, 1e-11);
    const auto ab = Ssum.eval(z, 1e-11);
    CHECK(std::abs(ab.value - a.value * b.value) <= ab.err + a.err + b.err + 1e-14);
  }
}

TEST_CASE("singular inner modulus tends to one away from the carrier") {
  const SingularInner S(fx::triadic_measure());
  // Ray through the middle of the first triadic gap.
  for (int j = 4; j <= 16; ++j) {
    const double s = std::ldexp(1.0, -j);
    const auto p = S.poisson_polar(s, 0.5);
    const double modulus_low = std::exp(-p.upper);
    CHECK(modulus_low <= 1.0);
    // The carrier is at distance >= 1/6 from this ray, so P <= s (1+r)/(4 sin^2(pi/6)).
    CHECK(modulus_low >= 1.0 - 2.0 * s / (4.0 * 0.25) * 1.05);
  }
}

TEST_CASE("outer functions") {
  const BoundaryLogModulus zero{};
  CHECK(std::abs(eval_outer(zero, Complex(0.3, 0.4)).value - 1.0) < 1e-15);
  const BoundaryLogModulus two{{{{0.0, 1.0}, std::log(2.0)}}};
  CHECK(std::abs(eval_outer(two, Complex(-0.7, 0.1)).value - 2.0) < 1e-14);
  const BoundaryLogModulus upper_half{{{{0.0, 0.5}, std::log(2.0)}}};
  CHECK(std::abs(eval_outer(upper_half, 0.0).value - std::sqrt(2.0)) < 1e-14);

  // Split pieces of a constant reproduce the constant anywhere in the disc,
  // including points in the segment cut off by a short piece.
  const BoundaryLogModulus pieces{{{{0.0, 0.1}, 1.0}, {{0.1, 0.25}, 1.0}, {{0.35, 0.3}, 1.0}}};
  const BoundaryLogModulus rest{{{{0.65, 0.35}, 1.0}}};
  for (Complex z : {Complex(0.0), Complex(0.99, 0.05), circle_point(0.05) * 0.9999}) {
    const Complex a = eval_outer(pieces, z).value * eval_outer(rest, z).value;
    CHECK(std::abs(a - std::exp(1.0)) < 1e-10);
  }
  // Boundary modulus is recovered near the circle inside a piece.
  const auto near = eval_outer(upper_half, 0.9999 * circle_point(0.25));
  CHECK(std::abs(near.value) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("growth norm estimates") {
  const Weight linear = Weight::power(1.0);
  CHECK(growth_norm_estimate([](Complex) { return Complex(1.0); }, linear, 8).sup_estimate == 1.0);
  const double n = 100.0;
  const double oracle = std::pow(n / (n + 1.0), n) / (n + 1.0);
  const auto g = growth_norm_estimate([](Complex z) { return std::pow(z, 100); }, linear, 12);
  CHECK(g.sup_estimate <= oracle);
  CHECK(g.sup_estimate >= 0.97 * oracle);

  const SingularInner S(CircleMeasure::atom(0.0, 1.0));
  auto f = [&](Complex z) { return S.eval(z).value; };
  const auto gs = growth_norm_estimate(f, linear, 10);
  CHECK(gs.sup_estimate <= 1.0);
  CHECK(gs.sup_estimate >= std::exp(-1.0));
}

TEST_CASE("dilations converge in the growth norm") {
  const SingularInner S(CircleMeasure::atom(0.0, 1.0));
  const Weight linear = Weight::power(1.0);
  double previous = std::numeric_limits<double>::infinity();
  for (int j = 2; j <= 7; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    auto diff = [&](Complex z) { return S.eval(r * z).value - S.eval(z).value; };
    const double e = growth_norm_estimate(diff, linear, 10).sup_estimate;
    CAPTURE(j);
    CHECK(e < previous);
    previous = e;
  }
  CHECK(previous < 0.05);
}

TEST_CASE("moment lemma") {
  const auto m = moment_check(Weight::power(1.0), 100);
  CHECK(m.sup == doctest::Approx(std::pow(100.0 / 101.0, 100) / 101.0).epsilon(1e-9));
  CHECK(m.ok);
  const auto half = moment_check(Weight::power(0.5), 10);
  CHECK(half.sup <= 3.0 * std::sqrt(0.1));
  CHECK(half.ok);
  CHECK_THROWS_AS(moment_check(Weight::power(1.0), 1), ParameterError);
  for (const auto& [name, w] : builtin_majorants())
    for (int n : {4, 16, 64, 256, 1024}) {
      CAPTURE(name);
      CAPTURE(n);
      CHECK(moment_check(w, n).ok);
    }
}

TEST_CASE("lower bound with constant 6") {
  const auto one = lower_bound_check(CircleMeasure::atom(0.0, 1.0), {Complex(-0.9)}, 1e-12);
  CHECK(one.min_margin == doctest::Approx(-0.19 / (1.9 * 1.9) + 60.0).epsilon(1e-9));
  const auto zero = lower_bound_check(CircleMeasure(), radial_angular_samples(8, 8), 1e-12);
  CHECK(zero.min_margin == 0.0);
  CHECK(zero.ok);
  std::vector<Complex> radial;
  for (int j = 1; j <= 64; ++j) radial.push_back(std::polar(1.0 - std::ldexp(1.0, -(j % 16 + 1)), j * 0.1));
  CHECK(lower_bound_check(fx::triadic_measure(), radial, 1e-12).ok);
  for (const auto& [name, mu] : fx::measures()) {
    CAPTURE(name);
    CHECK(lower_bound_check(mu, radial_angular_samples(12, 8), 1e-12).ok);
  }
}

TEST_CASE("corona datum") {
  const Weight linear = Weight::power(1.0);
  const auto zero = corona_datum_check(CircleMeasure(), 4, 0.1, linear, 16);
  CHECK(zero.ok);
  CHECK(zero.min_combined >= 1.0);

  const auto g = grate(CircleMeasure::atom(0.0, 1.0), 4, 0.1, linear);
  const auto c = corona_datum_check(g.mu_n, 4, 0.1, linear, 32);
  CHECK(c.bound == doctest::Approx(std::pow(2.0, -4.8)).epsilon(1e-12));
  CHECK(c.bound == doctest::Approx(0.0359).epsilon(1e-3));
  CHECK(c.ok);
  CHECK(c.min_combined > c.bound);

  CHECK_THROWS_AS(corona_datum_check(g.mu_n, 5, 0.1, linear, 16), ParameterError);
  // w(2^-1)^(12 * 0.01) is above 1/4.
  const auto shallow = grate(CircleMeasure::atom(0.0, 1.0), 1, 0.01, linear);
  CHECK_THROWS_AS(corona_datum_check(shallow.mu_n, 1, 0.01, linear, 16), ParameterError);

  // Exactly at |z| = 1 - 2^-n the monomial term alone exceeds 1/4.
  for (int n : {2, 4, 8, 16}) {
    const double m = std::ldexp(1.0, n);
    CHECK(std::pow(1.0 - 1.0 / m, m) >= 0.25);
  }
}
