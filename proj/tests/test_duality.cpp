#include "gst/duality.hpp"
#include "gst/error.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace gst;

namespace {

const double pi = std::numbers::pi;

std::vector<Complex> random_poly(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  for (auto& v : c) v = Complex(g(rng), g(rng));
  return c;
}

std::vector<Complex> monomial(int n) {
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1, 0.0);
  c.back() = 1.0;
  return c;
}

DiscFunction atom_inner() { return DiscFunction::atomic_inner({{0.0, 1.0}}); }

DiscFunction sqrt_fixture() {
  return DiscFunction::closed_form(
      "sqrt(1 - z)", [](Complex z) { return std::sqrt(1.0 - z); },
      [](Complex z) { return -0.5 / std::sqrt(1.0 - z); });
}

DiscFunction log_fixture() {
  return DiscFunction::closed_form(
      "log(1/(1 - z))", [](Complex z) { return -std::log(1.0 - z); },
      [](Complex z) { return 1.0 / (1.0 - z); }, {0.0});
}

}  // namespace

TEST_CASE("derivatives match centered differences") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<DiscFunction> corpus{
      DiscFunction::polynomial(random_poly(rng, 6)),
      DiscFunction::blaschke({{0.5, Complex(-0.2, 0.6), 0.0}, 0.3}),
      atom_inner(),
      sqrt_fixture(),
      DiscFunction::polynomial({1.0, 2.0}) * DiscFunction::blaschke({{0.4}, 0.0}),
  };
  const double h = 1e-5;
  for (const auto& f : corpus) {
    CAPTURE(f.label);
    for (int i = 0; i < 50; ++i) {
      const Complex z = std::polar(0.8 * std::sqrt(u(rng)), 2.0 * pi * u(rng));
      const Complex fd = (f(z + h).value - f(z - h).value) / (2.0 * h);
      const auto d = f.derivative(z);
      // Third derivatives stay below 1e4 on |z| <= 0.8 for this corpus.
      CHECK(std::abs(fd - d.value) <= d.err + h * h * 1e4 + 1e-9);
    }
  }
}

TEST_CASE("F_w norm") {
  const auto z = DiscFunction::polynomial({0.0, 1.0});
  const auto half = fw_norm(z, Weight::power(0.5));
  CHECK(half.tag == SeriesTag::finite);
  CHECK(half.value == doctest::Approx(8.0 / 3.0).epsilon(1e-6));
  CHECK(std::abs(half.value - 8.0 / 3.0) <= 1e-4);

  const auto lin = fw_norm(z, Weight::power(1.0));
  CHECK(lin.tag == SeriesTag::diverges);

  const auto one = fw_norm(DiscFunction::polynomial({1.0}), Weight::power(1.0));
  CHECK(one.tag == SeriesTag::finite);
  CHECK(one.value == 1.0);

  // z^n with w = t^(1/2): 2 n int_0^1 r^n (1-r)^(-1/2) dr = 2 n B(n+1, 1/2).
  for (int n : {2, 5}) {
    const double oracle = 2.0 * n * std::beta(n + 1.0, 0.5);
    CHECK(fw_norm(DiscFunction::polynomial(monomial(n)), Weight::power(0.5)).value ==
          doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("Cauchy pairing") {
  CHECK(cauchy_pairing(monomial(2), monomial(2)) == Complex(1.0));
  CHECK(cauchy_pairing(monomial(1), monomial(2)) == Complex(0.0));
  CHECK(cauchy_pairing({1.0, 2.0}, {3.0, 4.0}) == Complex(11.0));

  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_poly(rng, 1 + i % 7);
    const auto f = random_poly(rng, 1 + (i * 3) % 8);
    const Complex exact = cauchy_pairing(g, f);
    const Complex at_limit =
        limit_pairing(DiscFunction::polynomial(g), DiscFunction::polynomial(f), 64);
    CHECK(std::abs(at_limit - exact) <= 1e-8 * (1.0 + std::abs(exact)));
  }
}

TEST_CASE("Green identity") {
  const auto zz = green_identity_check({0.0, 1.0}, {0.0, 1.0}, 0.5);
  CHECK(std::abs(zz.lhs - 0.25) < 1e-15);
  CHECK(std::abs(zz.rhs - 0.25) < 1e-14);
  CHECK(zz.ok);

  const auto c = green_identity_check({2.0}, {Complex(0.0, 3.0), 1.0, 1.0}, 0.7);
  CHECK(std::abs(c.rhs - 2.0 * std::conj(Complex(0.0, 3.0))) < 1e-13);
  CHECK(c.ok);

  std::mt19937_64 rng(3);
  CHECK(green_identity_check(random_poly(rng, 5), random_poly(rng, 5), 0.9).ok);
  for (int dg = 0; dg <= 8; ++dg)
    for (int df = 0; df <= 8; ++df)
      for (double r : {0.5, 0.9, 0.99}) {
        const auto res = green_identity_check(random_poly(rng, dg), random_poly(rng, df), r);
        CAPTURE(dg);
        CAPTURE(df);
        CAPTURE(r);
        CHECK(res.ok);
        CHECK(res.oracle_error <= 1e-8 * (1.0 + std::abs(res.exact)));
      }
}

TEST_CASE("model kernels") {
  const auto z = DiscFunction::polynomial({0.0, 1.0});
  for (Complex lam : {Complex(0.0), Complex(0.3, -0.4)})
    for (Complex p : {Complex(0.1), Complex(-0.5, 0.5), Complex(0.9)})
      CHECK(std::abs(model_kernel({z, lam}, p).value - 1.0) < 1e-14);
  const auto z2 = DiscFunction::polynomial(monomial(2));
  CHECK(std::abs(model_kernel({z2, 0.0}, Complex(0.4, 0.2)).value - 1.0) < 1e-15);
  CHECK(std::abs(model_kernel({atom_inner(), 0.0}, 0.0).value - (1.0 - std::exp(-2.0))) < 1e-14);
  CHECK(std::abs(model_kernel({atom_inner(), 0.0}, 0.0).value - 0.864665) < 1e-6);
}

TEST_CASE("kernel reproducing identity") {
  const auto z = DiscFunction::polynomial({0.0, 1.0});
  const auto r1 = kernel_reproducing_check({z, 0.2}, Complex(-0.3, 0.1), 64);
  CHECK(std::abs(r1.lhs - 1.0) < 1e-13);
  CHECK(r1.ok);

  const auto z3 = DiscFunction::polynomial(monomial(3));
  const auto r3 = kernel_reproducing_check({z3, 0.3}, -0.2, 1 << 12);
  CHECK(r3.error <= 1e-6);
  CHECK(r3.ok);
  // kappa(z, lambda) = sum_{k<3} conj(lambda)^k z^k, so kappa(-0.2, 0.3) = 1 - 0.06 + 0.0036.
  CHECK(std::abs(r3.rhs - (1.0 - 0.06 + 0.0036)) < 1e-14);

  const auto ra = kernel_reproducing_check({atom_inner(), 0.0}, 0.0, 1 << 12);
  CHECK(ra.rhs.real() == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
  CHECK(ra.lhs.real() == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-3));

  // Finite Blaschke kernels: error falls at least linearly in 1/n.
  const auto B = DiscFunction::blaschke({{0.5, Complex(0.2, 0.7), Complex(-0.6, -0.3)}, 0.0});
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {16, 32, 64, 128}) {
    const auto r = kernel_reproducing_check({B, Complex(0.1, 0.2)}, Complex(-0.4, 0.3), n);
    CHECK(r.error <= std::max(previous / 2.0, 1e-13));
    previous = r.error;
  }
  CHECK(kernel_reproducing_check({B, Complex(0.1, 0.2)}, Complex(-0.4, 0.3), 1 << 12).error <= 1e-6);
}

TEST_CASE("orthogonal decomposition of model spaces") {
  const auto z = DiscFunction::polynomial({0.0, 1.0});
  const auto trivial = orthogonal_decomposition_check(z, z, 0.3, -0.1, 64);
  CHECK(trivial.error < 1e-15);

  const auto z2 = DiscFunction::polynomial(monomial(2));
  const auto b = DiscFunction::blaschke({{0.5}, 0.0});
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int i = 0; i < 8; ++i) {
    const Complex l1(u(rng), u(rng)), l2(u(rng), u(rng));
    const auto r = orthogonal_decomposition_check(z2, b, l1, l2, 1 << 10, 1e-6);
    CHECK(r.error <= 1e-6);
  }
  const auto atom = orthogonal_decomposition_check(z2, atom_inner(), Complex(0.2, 0.1), -0.3, 1 << 14);
  CHECK(atom.error <= 1e-5);
  CHECK(atom.ok);
}

TEST_CASE("A_w norm estimates") {
  CHECK(aw_norm_estimate(DiscFunction::polynomial({1.0}), Weight::power(1.0), 256).value == 1.0);
  const auto z = DiscFunction::polynomial({0.0, 1.0});
  CHECK(aw_norm_estimate(z, Weight::power(1.0), 1024).value == doctest::Approx(2.0).epsilon(1e-6));
  // Against t^2 the estimate keeps growing with the node count.
  double previous = 0.0;
  for (int n : {128, 256, 512, 1024}) {
    const double v = aw_norm_estimate(z, Weight::power(2.0), n).value;
    CHECK(v > 1.9 * (previous - 1.0) + 1.0);
    previous = v;
  }
  const auto s = aw_norm_estimate(sqrt_fixture(), Weight::power(0.5), 2048);
  CHECK(s.sup == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
  CHECK(s.seminorm <= 1.0 + 1e-12);
}

TEST_CASE("derivative growth") {
  const auto z = DiscFunction::polynomial({0.0, 1.0});
  const auto lin = derivative_growth_check(z, Weight::power(1.0));
  CHECK(lin.C_fit <= 1.0);
  CHECK(lin.ok);

  const auto sq = derivative_growth_check(sqrt_fixture(), Weight::power(0.5));
  CHECK(sq.ok);
  CHECK(sq.C_fit <= 0.5);

  const auto lg = derivative_growth_check(log_fixture(), Weight::power(0.5));
  CHECK_FALSE(lg.ok);
  CHECK(lg.by_level.back() > 3.0 * lg.by_level[lg.by_level.size() - 5]);
}

TEST_CASE("A_w sits inside F_{w^p}") {
  const auto z = DiscFunction::polynomial({0.0, 1.0});
  const auto c = aw_in_fw_check(z, Weight::power(0.5), 0.5, 0.25);
  CHECK(c.fw.tag == SeriesTag::finite);
  CHECK(c.ok);
  // int_0^1 t^(3/8) / t dt = 8/3.
  CHECK(c.dini == doctest::Approx(8.0 / 3.0).epsilon(1e-10));
  CHECK(c.bound_ratio <= 1.0);
  CHECK_THROWS_AS(aw_in_fw_check(z, Weight::power(0.5), 0.5, 0.5), ParameterError);
  CHECK_THROWS_AS(aw_in_fw_check(z, Weight::power(0.5), 0.5, 0.0), ParameterError);

  const auto s = aw_in_fw_check(sqrt_fixture(), Weight::power(0.5), 0.5, 0.25);
  CHECK(s.growth.ok);
  CHECK(s.fw.tag == SeriesTag::finite);
  CHECK(s.ok);
}

TEST_CASE("Cauchy projection") {
  const TrigPolynomial c{{-1, 1.0}, {0, 1.0}, {1, 1.0}};
  const TrigPolynomial want{{0, 1.0}, {1, 1.0}};
  CHECK(cauchy_projection(c) == want);
  const TrigPolynomial cos3{{-3, 0.5}, {3, 0.5}};
  CHECK(cauchy_projection(cos3) == TrigPolynomial{{3, 0.5}});

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    TrigPolynomial t;
    for (int k = -6; k <= 6; ++k) t[k] = Complex(g(rng), g(rng));
    const auto p = cauchy_projection(t);
    CHECK(cauchy_projection(p) == p);
    const auto analytic = analytic_coefficients(p);
    CHECK(analytic.size() == 7);
    CHECK(std::abs(eval_trig(p, 0.3) - DiscFunction::polynomial(analytic)(circle_point(0.3)).value) <
          1e-12);
  }
  CHECK_THROWS_AS(analytic_coefficients(c), ParameterError);
}

TEST_CASE("projection distorts A_w estimates by a stable factor") {
  // Trig polynomials with coefficients k^-2 e^{i phase}: the A_w estimate of
  // the projection against the A_{w^{1+alpha}} estimate of the trace.
  const Weight w = Weight::power(0.5);
  const Weight stronger = w.pow(1.5);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int i = 0; i < 8; ++i) {
    TrigPolynomial t;
    for (int k = 1; k <= 16; ++k) {
      t[k] = std::polar(1.0 / (k * k), phase(rng));
      t[-k] = std::polar(1.0 / (k * k), phase(rng));
    }
    const auto p = cauchy_projection(t);
    const double M = aw_norm_estimate([&](double x) { return eval_trig(t, x); }, stronger, 512).value;
    const double A = aw_norm_estimate([&](double x) { return eval_trig(p, x); }, w, 512).value;
    lo = std::min(lo, A / M);
    hi = std::max(hi, A / M);
  }
  CHECK(hi <= 4.0 * lo);
  CHECK(hi <= 2.0);
}

TEST_CASE("duality bound with one constant") {
  // |<g, f>| <= C ||g||_{G_w} ||f||_{F_w} across a polynomial corpus.
  const Weight w = Weight::power(0.5);
  std::mt19937_64 rng(7);
  double C = 0.0;
  for (int i = 0; i < 12; ++i) {
    const auto g = random_poly(rng, 1 + i % 8);
    const auto f = random_poly(rng, 1 + (5 * i) % 8);
    const auto G = DiscFunction::polynomial(g);
    const double gw = growth_norm_estimate([&](Complex z) { return G(z).value; }, w, 12).sup_estimate;
    const double fw = fw_norm(DiscFunction::polynomial(f), w, 40).value;
    C = std::max(C, std::abs(cauchy_pairing(g, f)) / (gw * fw));
  }
  CHECK(C > 0.0);
  CHECK(C <= 1.0);
}
