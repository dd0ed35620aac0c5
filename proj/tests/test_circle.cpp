#include "gst/error.hpp"
#include "gst/measure.hpp"

#include <doctest.h>

#include <cmath>

using namespace gst;

namespace {

CantorPart triadic() {
  return {CantorPiece{{0.0, 1.0}, CantorSchedule::constant(1.0 / 3.0)}, 1.0, 0.5, 48};
}

// Triadic Cantor measure of [0, x) by ternary digit expansion.
double triadic_cdf_oracle(double x, int digits = 60) {
  double acc = 0.0;
  double w = 0.5;
  for (int i = 0; i < digits && x > 0.0; ++i) {
    x *= 3.0;
    const int d = static_cast<int>(std::floor(x));
    x -= d;
    if (d == 1) return acc + w;
    if (d == 2) acc += w;
    w *= 0.5;
  }
  return acc;
}

}  // namespace

TEST_CASE("arcs use the half-open convention with wraparound") {
  const Arc a{0.9, 0.2};
  CHECK(a.contains(0.95));
  CHECK(a.contains(0.05));
  CHECK(a.contains(0.9));
  CHECK_FALSE(a.contains(0.1 + 1e-12));
  CHECK(wrap01(-0.25) == 0.75);
  CHECK(circle_distance(0.95, 0.05) == doctest::Approx(0.1));
}

TEST_CASE("closed sets validate their gaps") {
  CHECK_THROWS_AS(ClosedCircleSet({{0.0, 0.5}}), ParameterError);
  CHECK_THROWS_AS(ClosedCircleSet({{0.0, 0.6}, {0.5, 0.4}}), ParameterError);
  const auto pt = ClosedCircleSet::points({0.0});
  REQUIRE(pt.gaps().size() == 1);
  CHECK(pt.gaps()[0].length == 1.0);
  CHECK(pt.contains(0.0));
  CHECK_FALSE(pt.contains(0.5));
  CHECK(pt.distance(0.25) == doctest::Approx(0.25));
  CHECK(pt.distance(0.875) == doctest::Approx(0.125));
}

TEST_CASE("Cantor sets resolve their gaps") {
  const auto E = ClosedCircleSet::cantor({{0.0, 1.0}, CantorSchedule::constant(1.0 / 3.0)});
  const auto g = E.gap_containing(0.5);
  REQUIRE(g);
  CHECK(g->start == doctest::Approx(1.0 / 3.0));
  CHECK(g->length == doctest::Approx(1.0 / 3.0));
  const auto g2 = E.gap_containing(0.15);
  REQUIRE(g2);
  CHECK(g2->start == doctest::Approx(1.0 / 9.0));
  CHECK(E.contains(0.25));
  CHECK(E.contains(0.0));
  CHECK(E.distance(0.5) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("harmonic Cantor schedule log-length closed form") {
  const auto s = CantorSchedule::thin_then_harmonic(0.9, 4);
  double direct = 0.0;
  for (int n = 1; n <= 200; ++n) {
    direct += std::log(0.5 * (1.0 - s.gap_fraction(n)));
    CHECK(s.log_length(n) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("log-squared sequence gaps tile the hull") {
  const LogSquaredPiece p{{0.0, 1.0}};
  double sum = 0.0;
  for (int k = 2; k < 20000; ++k) sum += p.gap_length(k);
  CHECK(sum + p.tail_length(20000) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.position(2) == doctest::Approx(0.0).epsilon(1e-15));
  const auto E = ClosedCircleSet::log_squared({0.0, 1.0});
  const double x = 0.5 * (p.position(7) + p.position(8));
  const auto g = E.gap_containing(x);
  REQUIRE(g);
  CHECK(g->start == doctest::Approx(p.position(7)));
  CHECK(g->length == doctest::Approx(p.gap_length(7)).epsilon(1e-10));
}

TEST_CASE("unions merge explicit gaps") {
  const auto a = ClosedCircleSet::points({0.0});
  const auto b = ClosedCircleSet::cantor({{0.25, 0.5}, CantorSchedule::constant(1.0 / 3.0)});
  const auto u = unite(a, b);
  CHECK(u.contains(0.0));
  CHECK(u.contains(0.25));
  CHECK_FALSE(u.contains(0.1));
  CHECK(u.gaps().size() == 2);
  CHECK_THROWS_AS(unite(b, ClosedCircleSet::cantor({{0.5, 0.5}, CantorSchedule::constant(0.5)})),
                  ParameterError);
}

TEST_CASE("mass_of_arc examples") {
  const auto atom = CircleMeasure::atom(0.0, 1.0);
  auto q = atom.mass_of_arc({0.0, 0.5}, 1e-12);
  CHECK(q.mass == 1.0);
  CHECK(q.err == 0.0);
  q = CircleMeasure::atom(0.5, 1.0).mass_of_arc({0.0, 0.5}, 1e-12);
  CHECK(q.mass == 0.0);

  const auto mu = CircleMeasure::cantor(triadic());
  // The double nearest 1/3 lies within 1e-17 of the Cantor set, so the
  // straddling cylinder is resolved only down to mass 2^-31.
  q = mu.mass_of_arc({0.0, 1.0 / 3.0}, 1e-9);
  CHECK(q.mass == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(q.err <= 1e-9);
  CHECK(q.certified);
  q = mu.mass_of_arc({0.0, 0.5}, 1e-12);
  CHECK(q.mass == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q.err == 0.0);
  for (double x : {0.1, 0.25, 0.3, 0.7, 0.8125, 0.99}) {
    double err = 0.0;
    const double v = mu.mass_between(0.0, x, &err);
    CHECK(std::abs(v - triadic_cdf_oracle(x)) <= err + 1e-12);
  }
}

TEST_CASE("dyadic partitions are additive") {
  const auto mu = CircleMeasure::cantor(triadic()) + CircleMeasure::atom(0.375, 0.25);
  for (int n : {3, 6, 10}) {
    double s = 0.0;
    const std::uint64_t N = std::uint64_t{1} << n;
    for (std::uint64_t k = 0; k < N; ++k) s += mu.mass_of_arc({dyadic_start(k, n), std::ldexp(1.0, -n)}, 1e-9).mass;
    CHECK(s == doctest::Approx(1.25).epsilon(1e-12));
    double c = 0.0;
    for (const auto& cell : mu.cells(n)) c += cell.mass;
    CHECK(c == doctest::Approx(1.25).epsilon(1e-12));
  }
}

TEST_CASE("multiplier layers scale masses") {
  const auto base = CircleMeasure::cantor(triadic());
  MultiplierLayer l{1, 1.0, {1}, {0.5}, {}};
  const auto mu = base.with_layers({l});
  CHECK(mu.total_mass() == doctest::Approx(0.75));
  CHECK(mu.mass_between(0.5, 1.0) == doctest::Approx(0.25));
  CHECK(mu.mass_between(0.25, 0.75) == doctest::Approx(0.25 * 1.0 / 2.0 * 0.0 + base.mass_between(0.25, 0.5) + 0.5 * base.mass_between(0.5, 0.75)));
  MultiplierLayer deep{3, 0.0, {0, 7}, {1.0, 0.5}, {}};
  const auto mu2 = base.with_layers({l, deep});
  CHECK(mu2.total_mass() == doctest::Approx(base.mass_between(0.0, 0.125) + 0.25 * base.mass_between(0.875, 1.0)));
  double c = 0.0;
  for (const auto& cell : mu2.cells(5)) c += cell.mass;
  CHECK(c == doctest::Approx(mu2.total_mass()).epsilon(1e-12));
}

TEST_CASE("modulus of continuity bounds") {
  const auto one = modulus_of_continuity(CircleMeasure::atom(0.3, 1.0), 0.01, 1e-12);
  CHECK(one.lower == 1.0);
  CHECK(one.upper == 1.0);
  const auto two = CircleMeasure({{0.0, 0.5}, {0.5, 0.5}}, {});
  const auto m2 = modulus_of_continuity(two, 0.25, 1e-12);
  CHECK(m2.lower == 0.5);
  CHECK(m2.upper == 0.5);

  const auto mu = CircleMeasure::cantor(triadic());
  const auto d8 = modulus_of_continuity(mu, 1.0 / 3.0, 1e-12, 8);
  CHECK(d8.lower >= 0.5 - 1e-12);
  CHECK(d8.upper >= 0.5);
  CHECK(d8.upper <= 1.0);
  // The covering sums over cells add one cell's mass at each end; at depth 16
  // that overshoot is below 1%.
  const auto d16 = modulus_of_continuity(mu, 1.0 / 3.0, 1e-12, 16);
  CHECK(d16.upper <= 0.51);
  CHECK(d16.upper <= d8.upper);
}

TEST_CASE("modulus bounds are monotone and subadditive") {
  const auto mu = CircleMeasure::cantor(triadic()) + CircleMeasure::atom(0.6, 0.1);
  const int d = 14;
  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double delta = i / 64.0;
    const auto m = modulus_of_continuity(mu, delta, 1e-12, d);
    CHECK(m.lower <= m.upper + 1e-12);
    CHECK(m.upper >= prev - 1e-12);
    prev = m.upper;
  }
  for (double a : {1.0 / 64, 3.0 / 64, 0.1}) {
    for (double b : {1.0 / 32, 0.2}) {
      const double u = modulus_of_continuity(mu, a + b, 1e-12, d).upper;
      const double ua = modulus_of_continuity(mu, a, 1e-12, d).upper;
      const double ub = modulus_of_continuity(mu, b, 1e-12, d).upper;
      CHECK(u <= ua + ub + 4e-12);
    }
  }
}

TEST_CASE("restriction to closed sets") {
  const auto pt = ClosedCircleSet::points({0.0});
  CHECK(restrict(CircleMeasure::atom(0.0, 1.0), pt, 1e-12).total_mass() == 1.0);
  CHECK(restrict(CircleMeasure::atom(0.5, 1.0), pt, 1e-12).total_mass() == 0.0);
  const auto mu = CircleMeasure::cantor(triadic());
  const auto E = ClosedCircleSet::cantor(triadic().piece);
  CHECK(restrict(mu, E, 1e-12).total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  const auto full = restrict(mu, ClosedCircleSet::full_circle(), 1e-12);
  CHECK(full.total_mass() == mu.total_mass());
}
