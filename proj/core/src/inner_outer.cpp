#include "gst/inner_outer.hpp"

#include "gst/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace gst {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex herglotz_kernel(Complex zeta, Complex z) { return (zeta + z) / (zeta - z); }

// |zeta - z|^2 for |z| = 1 - s and angular separation d (in turns).
double sq_distance(double s, double d) {
  const double r = 1.0 - s;
  const double sn = std::sin(std::numbers::pi * d);
  return s * s + 4.0 * r * sn * sn;
}

// Nearest and farthest circular distance from x to the closed arc [a, b].
std::pair<double, double> arc_distance_range(double x, double a, double b) {
  const double len = b - a;
  const double da = circle_distance(x, a);
  const double db = circle_distance(x, b);
  const double near = wrap01(x - a) <= len ? 0.0 : std::min(da, db);
  const double far = wrap01(x + 0.5 - a) <= len ? 0.5 : std::max(da, db);
  return {near, far};
}

void require_open_disc(Complex z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("point must lie in the open unit disc");
}

}  // namespace

Complex circle_point(double x) {
  const double t = kTwoPi * x;
  return {std::cos(t), std::sin(t)};
}

AnalyticValue eval_blaschke(const BlaschkeSeq& B, Complex z) {
  if (std::abs(z) > 1.0) throw DomainError("Blaschke product evaluated outside the closed disc");
  Complex v = std::polar(1.0, B.rotation);
  for (const Complex& lam : B.zeros) {
    const double a = std::abs(lam);
    if (!(a < 1.0)) throw ParameterError("Blaschke zeros must lie in the open disc");
    if (a == 0.0) {
      v *= z;
    } else {
      v *= (a / lam) * (lam - z) / (1.0 - std::conj(lam) * z);
    }
  }
  const double n = static_cast<double>(B.zeros.size()) + 1.0;
  return {v, 8.0 * n * kEps * std::max(1.0, std::abs(v))};
}

SingularInner::SingularInner(const CircleMeasure& mu, int base_depth) {
  if (base_depth < 1 || base_depth > 50) throw ParameterError("pyramid depth must lie in [1, 50]");
  atoms_ = mu.effective_atoms();
  for (const auto& a : atoms_) atom_mass_ += a.mass;
  if (mu.cantor_parts().empty()) return;

  const int D = std::max(base_depth, mu.deepest_layer());
  std::vector<Cell> cells = mu.cells(D);
  for (const auto& a : atoms_) {
    const std::uint64_t k = dyadic_index(a.pos, D);
    auto it = std::lower_bound(cells.begin(), cells.end(), k,
                               [](const Cell& c, std::uint64_t v) { return c.index < v; });
    if (it != cells.end() && it->index == k) {
      const double rest = it->mass - a.mass;
      it->mass = rest > 1e-14 * it->mass ? rest : 0.0;
    }
  }
  std::erase_if(cells, [](const Cell& c) { return !(c.mass > 0.0); });
  if (cells.empty()) return;

  levels_.resize(D + 1);
  Level& leaf = levels_[D];
  leaf.index.reserve(cells.size());
  leaf.mass.reserve(cells.size());
  for (const auto& c : cells) {
    leaf.index.push_back(c.index);
    leaf.mass.push_back(c.mass);
  }
  cells = {};
  for (int d = D - 1; d >= 0; --d) {
    const Level& below = levels_[d + 1];
    Level& lv = levels_[d];
    for (std::size_t i = 0; i < below.index.size(); ++i) {
      const std::uint64_t p = below.index[i] >> 1;
      if (lv.index.empty() || lv.index.back() != p) {
        lv.index.push_back(p);
        lv.mass.push_back(0.0);
        lv.child_begin.push_back(static_cast<std::uint32_t>(i));
      }
      lv.mass.back() += below.mass[i];
    }
    lv.child_begin.push_back(static_cast<std::uint32_t>(below.index.size()));
  }
  continuous_mass_ = levels_[0].mass[0];
}

AnalyticValue SingularInner::eval(Complex z, double eps) const {
  require_open_disc(z);
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  const double r = std::abs(z);
  const double s = 1.0 - r;
  Complex H = 0.0;
  double err = 0.0;
  for (const auto& a : atoms_) {
    const Complex k = herglotz_kernel(circle_point(a.pos), z);
    H += a.mass * k;
    err += a.mass * std::abs(k) * 4.0 * kEps;
  }
  if (!levels_.empty()) {
    const double x = r > 0.0 ? wrap01(std::arg(z) / kTwoPi) : 0.0;
    const int D = depth();
    struct Node {
      int d;
      std::uint32_t i;
    };
    std::vector<Node> stack{{0, 0}};
    while (!stack.empty()) {
      const Node nd = stack.back();
      stack.pop_back();
      const Level& lv = levels_[nd.d];
      const double m = lv.mass[nd.i];
      const double h = std::ldexp(1.0, -nd.d);
      const double a = static_cast<double>(lv.index[nd.i]) * h;
      const auto [near, far] = arc_distance_range(x, a, a + h);
      (void)far;
      const double q = sq_distance(s, near);
      const double bound = m * std::min(std::numbers::pi * h * 2.0 * r / q, 2.0 * (1.0 + r) / s);
      if (bound <= eps * m / continuous_mass_ || nd.d == D) {
        H += m * herglotz_kernel(circle_point(a + 0.5 * h), z);
        err += bound;
        continue;
      }
      for (std::uint32_t c = lv.child_begin[nd.i]; c < lv.child_begin[nd.i + 1]; ++c)
        stack.push_back({nd.d + 1, c});
    }
  }
  const Complex S = std::exp(-H);
  const double mod = std::abs(S);
  return {S, mod * std::expm1(err) + 4.0 * kEps * mod};
}

Interval SingularInner::poisson(Complex z, double rel_tol) const {
  require_open_disc(z);
  const double r = std::abs(z);
  return poisson_polar(1.0 - r, r > 0.0 ? wrap01(std::arg(z) / kTwoPi) : 0.0, rel_tol);
}

Interval SingularInner::poisson_polar(double s, double x, double rel_tol) const {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("point must lie in the open unit disc");
  if (!(rel_tol > 0.0)) throw ParameterError("rel_tol must be positive");
  const double r = 1.0 - s;
  const double num = s * (1.0 + r);
  Interval out;
  for (const auto& a : atoms_) {
    const double p = a.mass * num / sq_distance(s, circle_distance(x, a.pos));
    out.lower += p * (1.0 - 4.0 * kEps);
    out.upper += p * (1.0 + 4.0 * kEps);
  }
  if (levels_.empty()) return out;
  const int D = depth();
  struct Node {
    int d;
    std::uint32_t i;
  };
  std::vector<Node> stack{{0, 0}};
  while (!stack.empty()) {
    const Node nd = stack.back();
    stack.pop_back();
    const Level& lv = levels_[nd.d];
    const double m = lv.mass[nd.i];
    const double h = std::ldexp(1.0, -nd.d);
    const double a = static_cast<double>(lv.index[nd.i]) * h;
    const auto [near, far] = arc_distance_range(x, a, a + h);
    const double pmax = num / sq_distance(s, near);
    const double pmin = num / sq_distance(s, far);
    if (m * (pmax - pmin) <= rel_tol * m * pmin || nd.d == D) {
      out.lower += m * pmin * (1.0 - 8.0 * kEps);
      out.upper += m * pmax * (1.0 + 8.0 * kEps);
      continue;
    }
    for (std::uint32_t c = lv.child_begin[nd.i]; c < lv.child_begin[nd.i + 1]; ++c)
      stack.push_back({nd.d + 1, c});
  }
  return out;
}

std::vector<double> SingularInner::heaviest_cells(int d, std::size_t count) const {
  std::vector<double> out;
  if (levels_.empty() || count == 0) return out;
  d = std::clamp(d, 0, depth());
  const Level& lv = levels_[d];
  std::vector<std::size_t> order(lv.index.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t k = std::min(count, order.size());
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](std::size_t a, std::size_t b) { return lv.mass[a] > lv.mass[b]; });
  const double h = std::ldexp(1.0, -d);
  for (std::size_t i = 0; i < k; ++i) out.push_back((static_cast<double>(lv.index[order[i]]) + 0.5) * h);
  return out;
}

AnalyticValue eval_singular_inner(const CircleMeasure& mu, Complex z, double eps) {
  require_open_disc(z);
  return SingularInner(mu).eval(z, eps);
}

AnalyticValue eval_outer(const BoundaryLogModulus& log_modulus, Complex z) {
  require_open_disc(z);
  double covered = 0.0;
  Complex H = 0.0;
  double err = 0.0;
  for (const auto& [arc, v] : log_modulus.pieces) {
    if (!std::isfinite(v)) throw ParameterError("log-modulus values must be finite");
    if (!(arc.length > 0.0) || arc.length > 1.0 + 1e-12) throw ParameterError("arc length must lie in (0, 1]");
    covered += arc.length;
    if (arc.length >= 1.0) {
      H += v;
      continue;
    }
    // Quarter-turn pieces keep the increase of arg(zeta - z) below 5 pi / 4,
    // so a negative principal argument below -pi/2 means it passed pi.
    const int parts = static_cast<int>(std::ceil(arc.length * 4.0));
    for (int j = 0; j < parts; ++j) {
      const double t0 = arc.start + arc.length * j / parts;
      const double t1 = arc.start + arc.length * (j + 1) / parts;
      const Complex a = circle_point(t0) - z;
      const Complex b = circle_point(t1) - z;
      const Complex ratio = b / a;
      double darg = std::arg(ratio);
      if (darg < -0.5 * std::numbers::pi) darg += kTwoPi;
      const double turn = t1 - t0;
      H += v * Complex(darg / std::numbers::pi - turn, -std::log(std::abs(ratio)) / std::numbers::pi);
      err += std::abs(v) * 16.0 * kEps * (1.0 + 1.0 / std::min(std::abs(a), std::abs(b)));
    }
  }
  if (covered > 1.0 + 1e-9) throw ParameterError("log-modulus pieces overlap");
  const Complex O = std::exp(H);
  const double mod = std::abs(O);
  return {O, mod * std::expm1(err) + 4.0 * kEps * mod};
}

GrowthEstimate growth_norm_estimate(const std::function<Complex(Complex)>& f, const Weight& w,
                                    int J) {
  if (J < 0 || J > 24) throw ParameterError("growth grid depth must lie in [0, 24]");
  GrowthEstimate g;
  g.argmax = 0.0;
  g.sup_estimate = w(1.0) * std::abs(f(0.0));
  g.samples = 1;
  for (int j = 1; j <= J; ++j) {
    const double s = std::ldexp(1.0, -j);
    const double ws = w(s);
    const std::size_t n = std::size_t{1} << (j + 3);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex z = (1.0 - s) * circle_point(static_cast<double>(i) / static_cast<double>(n));
      const double v = ws * std::abs(f(z));
      ++g.samples;
      if (v > g.sup_estimate) {
        g.sup_estimate = v;
        g.argmax = z;
      }
    }
  }
  return g;
}

MomentCheck moment_check(const Weight& w, int n) {
  if (n < 2) throw ParameterError("moment check needs n >= 2");
  MomentCheck m;
  m.sup = sup_monomial_weight(w, n).sup;
  m.bound = 3.0 * w(1.0 / n);
  m.ok = m.sup <= m.bound;
  return m;
}

std::vector<Complex> radial_angular_samples(int radial, int angular) {
  std::vector<Complex> out;
  for (int j = 1; j <= radial; ++j)
    for (int i = 0; i < angular; ++i)
      out.push_back((1.0 - std::ldexp(1.0, -j)) * circle_point(static_cast<double>(i) / angular));
  return out;
}

LowerBoundCheck lower_bound_check(const CircleMeasure& nu, const std::vector<Complex>& samples,
                                  double eps) {
  LowerBoundCheck res;
  res.ok = true;
  res.min_margin = std::numeric_limits<double>::infinity();
  if (samples.empty()) return res;
  double smallest = 1.0;
  for (const Complex& z : samples) {
    require_open_disc(z);
    smallest = std::min(smallest, 1.0 - std::abs(z));
  }
  const int depth = std::clamp(static_cast<int>(std::ceil(std::log2(1.0 / smallest))) + 8,
                               SingularInner::kBaseDepth, 44);
  const SingularInner S(nu, depth);
  std::map<double, double> modulus;
  for (const Complex& z : samples) {
    const double delta = 1.0 - std::abs(z);
    auto it = modulus.find(delta);
    if (it == modulus.end())
      it = modulus.emplace(delta, modulus_of_continuity(nu, delta, eps).upper).first;
    const double margin = -S.poisson(z).upper + 6.0 * it->second / delta;
    ++res.samples;
    if (margin < res.min_margin) {
      res.min_margin = margin;
      res.worst = z;
    }
  }
  res.ok = res.min_margin >= -eps;
  return res;
}

CoronaCheck corona_datum_check(const CircleMeasure& mu_k, int n_k, double c, const Weight& w,
                               int grid_density) {
  if (n_k < 1 || n_k > 50) throw ParameterError("grating depth must lie in [1, 50]");
  if (!(c > 0.0)) throw ParameterError("c must be positive");
  if (grid_density < 1) throw ParameterError("grid density must be positive");
  if (!mu_k.empty() && mu_k.deepest_layer() != n_k)
    throw ParameterError("measure is not a grating at the given depth");
  CoronaCheck res;
  res.bound = std::exp(12.0 * c * w.log_from_log(-n_k * std::numbers::ln2));
  if (!(res.bound < 0.25)) throw ParameterError("w(2^-n)^(12c) must be below 1/4");

  const SingularInner S(mu_k, std::max(SingularInner::kBaseDepth, n_k));
  std::vector<double> angles;
  for (int i = 0; i < grid_density; ++i) angles.push_back(static_cast<double>(i) / grid_density);
  for (const auto& a : S.atoms()) angles.push_back(a.pos);
  for (double x : S.heaviest_cells(n_k, static_cast<std::size_t>(grid_density))) angles.push_back(x);

  // Distances 1 - |z|: dyadic radii inside, a finer ladder near 2^-n where
  // both terms are small, and a few points of the outer zone.
  std::vector<double> gaps{1.0};
  for (int j = 1; j <= n_k; ++j) gaps.push_back(std::ldexp(1.0, -j));
  for (double m : {1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0, 32.0, 48.0, 64.0})
    if (m * std::ldexp(1.0, -n_k) < 1.0) gaps.push_back(m * std::ldexp(1.0, -n_k));
  for (int j = 1; j <= 4; ++j) gaps.push_back(std::ldexp(1.0, -n_k - j));

  const double power = std::ldexp(1.0, n_k);
  res.min_combined = std::numeric_limits<double>::infinity();
  for (double s : gaps) {
    const double monomial = std::exp(power * std::log1p(-s));
    for (double x : angles) {
      const double combined = std::exp(-S.poisson_polar(s, x).upper) + monomial;
      ++res.samples;
      if (combined < res.min_combined) {
        res.min_combined = combined;
        res.worst = (1.0 - s) * circle_point(x);
      }
    }
  }
  res.ok = res.min_combined >= res.bound;
  return res;
}

}  // namespace gst
