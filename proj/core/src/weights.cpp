#include "gst/weights.hpp"

#include "gst/error.hpp"
#include "gst/quadrature.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gst {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kModulusTol = 1e-12;

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::power: return "power";
    case WeightKind::log_power: return "log_power";
    case WeightKind::exp_log: return "exp_log";
    case WeightKind::table: return "table";
    case WeightKind::exp_inverse: return "exp_inverse";
    case WeightKind::exp_exp_inverse: return "exp_exp_inverse";
    case WeightKind::custom: return "custom";
  }
  return "unknown";
}

Weight Weight::power(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidWeight("power weight needs alpha > 0");
  auto b = std::make_shared<Base>();
  b->kind = WeightKind::power;
  b->a = alpha;
  return Weight(std::move(b));
}

Weight Weight::log_power(double c, int depth) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidWeight("log power weight needs c > 0");
  if (depth != 1 && depth != 2) throw InvalidWeight("log power depth must be 1 or 2");
  auto b = std::make_shared<Base>();
  b->kind = WeightKind::log_power;
  b->a = c;
  b->depth = depth;
  return Weight(std::move(b));
}

Weight Weight::exp_log(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw InvalidWeight("exp-log weight needs alpha, beta > 0");
  auto b = std::make_shared<Base>();
  b->kind = WeightKind::exp_log;
  b->a = alpha;
  b->b = beta;
  return Weight(std::move(b));
}

Weight Weight::table(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw InvalidWeight("table weight needs at least two samples");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [t, v] = points[i];
    if (!std::isfinite(t) || !std::isfinite(v) || v < 0.0)
      throw InvalidWeight("table sample is negative or non-finite");
    if (i > 0) {
      if (!(t > points[i - 1].first)) throw InvalidWeight("table abscissae must increase");
      if (v < points[i - 1].second) throw InvalidWeight("table values must be nondecreasing");
    }
  }
  if (points.front().first != 0.0 || points.front().second != 0.0)
    throw InvalidWeight("table must start at (0, 0)");
  if (std::abs(points.back().first - 1.0) > 1e-12) throw InvalidWeight("table must end at t = 1");
  auto b = std::make_shared<Base>();
  b->kind = WeightKind::table;
  b->points = std::move(points);
  return Weight(std::move(b));
}

Weight Weight::exp_inverse() {
  auto b = std::make_shared<Base>();
  b->kind = WeightKind::exp_inverse;
  return Weight(std::move(b));
}

Weight Weight::exp_exp_inverse() {
  auto b = std::make_shared<Base>();
  b->kind = WeightKind::exp_exp_inverse;
  return Weight(std::move(b));
}

Weight Weight::custom(std::string name, std::function<double(double)> fn,
                      std::optional<double> lambda_hint) {
  if (!fn) throw InvalidWeight("custom weight needs a function");
  auto b = std::make_shared<Base>();
  b->kind = WeightKind::custom;
  b->fn = std::move(fn);
  b->custom_hint = lambda_hint;
  b->name = std::move(name);
  return Weight(std::move(b));
}

double Weight::base_value(double t) const {
  const Base& b = *base_;
  switch (b.kind) {
    case WeightKind::table: {
      const auto& p = b.points;
      if (t <= 0.0) return p.front().second;
      if (t >= p.back().first) return p.back().second;
      const auto it = std::upper_bound(p.begin(), p.end(), t,
                                       [](double x, const auto& q) { return x < q.first; });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double s = (t - lo.first) / (hi.first - lo.first);
      return lo.second + s * (hi.second - lo.second);
    }
    case WeightKind::custom: return b.fn(t);
    default: {
      if (t <= 0.0) return 0.0;
      return std::exp(base_log_from_log(std::log(t)));
    }
  }
}

double Weight::base_log_from_log(double log_t) const {
  const Base& b = *base_;
  const double L = -log_t;
  switch (b.kind) {
    case WeightKind::power: return b.a * log_t;
    case WeightKind::log_power:
      if (b.depth == 1) return -b.a * std::log1p(L);
      return -b.a * std::log1p(std::log1p(L));
    case WeightKind::exp_log: return -b.a * std::pow(1.0 + L, b.b);
    case WeightKind::exp_inverse: return -std::exp(L);
    case WeightKind::exp_exp_inverse: return -std::exp(std::exp(L));
    case WeightKind::table:
    case WeightKind::custom: {
      const double v = base_value(std::exp(log_t));
      return v > 0.0 ? std::log(v) : -kInf;
    }
  }
  return -kInf;
}

double Weight::operator()(double t) const {
  if (!(t >= 0.0) || t > 1.0 + 1e-12) throw DomainError("weight evaluated outside [0, 1]");
  t = std::min(t, 1.0);
  const WeightKind k = base_->kind;
  if (k == WeightKind::table || k == WeightKind::custom) {
    const double v = base_value(t);
    return exponent_ == 1.0 ? v : std::pow(v, exponent_);
  }
  if (t == 0.0) return 0.0;
  return std::exp(exponent_ * base_log_from_log(std::log(t)));
}

double Weight::log_from_log(double log_t) const {
  const double v = base_log_from_log(std::min(log_t, 0.0));
  if (v == -kInf) return -kInf;
  return exponent_ * v;
}

double Weight::log_at(double t) const {
  if (t <= 0.0) return -kInf;
  return log_from_log(std::log(std::min(t, 1.0)));
}

Weight Weight::pow(double p) const {
  if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("weight exponent must be positive");
  return Weight(base_, exponent_ * p);
}

std::optional<double> Weight::lambda_hint() const {
  const Base& b = *base_;
  std::optional<double> h;
  switch (b.kind) {
    case WeightKind::power: h = 1.0 / b.a; break;
    case WeightKind::log_power: h = 1.0 / b.a; break;
    case WeightKind::exp_log:
      if (b.b <= 1.0) h = 1.0 / (b.a * b.b);
      break;
    case WeightKind::custom: h = b.custom_hint; break;
    default: break;
  }
  if (h) *h /= exponent_;
  return h;
}

std::optional<double> Weight::dini_tail(double u0, double a) const {
  const Base& b = *base_;
  const double e = a * exponent_;
  switch (b.kind) {
    case WeightKind::power: {
      const double s = b.a * e;
      return std::exp(-s * u0) / s;
    }
    case WeightKind::log_power: {
      if (b.depth == 2) return kInf;
      const double s = b.a * e;
      if (s <= 1.0) return kInf;
      return std::pow(1.0 + u0, 1.0 - s) / (s - 1.0);
    }
    case WeightKind::exp_log: {
      // v = s (1+u)^beta turns the integral into an upper incomplete gamma.
      const double s = b.a * e;
      const double inv = 1.0 / b.b;
      const double x = s * std::pow(1.0 + u0, b.b);
      return boost::math::tgamma(inv, x) * inv / std::pow(s, inv);
    }
    case WeightKind::exp_inverse:
    case WeightKind::exp_exp_inverse: {
      // exp(-e * exp(e^u)) <= exp(-e * e^u), so E1 also bounds the second kind.
      const double x = e * std::exp(u0);
      if (x > 700.0) return 0.0;
      return boost::math::expint(1, x);
    }
    case WeightKind::table: {
      const double t0 = std::exp(-u0);
      const auto& p = b.points;
      if (t0 > p[1].first) return std::nullopt;
      const double slope = p[1].second / p[1].first;
      if (slope == 0.0) return 0.0;
      return std::pow(slope * t0, e) / e;
    }
    case WeightKind::custom: return std::nullopt;
  }
  return std::nullopt;
}

std::string Weight::describe() const {
  const Base& b = *base_;
  std::string s;
  switch (b.kind) {
    case WeightKind::power: s = "t^" + fmt(b.a); break;
    case WeightKind::log_power:
      s = (b.depth == 1 ? "log^-" : "loglog^-") + fmt(b.a) + "(e/t)";
      break;
    case WeightKind::exp_log: s = "exp(-" + fmt(b.a) + " log^" + fmt(b.b) + "(e/t))"; break;
    case WeightKind::table: s = "table[" + std::to_string(b.points.size()) + "]"; break;
    case WeightKind::exp_inverse: s = "exp(-1/t)"; break;
    case WeightKind::exp_exp_inverse: s = "exp(-exp(1/t))"; break;
    case WeightKind::custom: s = b.name.empty() ? "custom" : b.name; break;
  }
  if (exponent_ != 1.0) s = "(" + s + ")^" + fmt(exponent_);
  return s;
}

std::vector<NamedWeight> builtin_majorants() {
  return {
      {"t^1/2", Weight::power(0.5)},
      {"t", Weight::power(1.0)},
      {"t^2", Weight::power(2.0)},
      {"log^-1(e/t)", Weight::log_power(1.0)},
      {"log^-2(e/t)", Weight::log_power(2.0)},
      {"exp(-log^1/2(e/t))", Weight::exp_log(1.0, 0.5)},
      {"exp(-2 log^1/2(e/t))", Weight::exp_log(2.0, 0.5)},
  };
}

std::vector<NamedWeight> a1_family() {
  const double vals[] = {0.5, 1.0, 2.0};
  std::vector<NamedWeight> out;
  for (double c : vals) {
    out.push_back({"t^" + fmt(c), Weight::power(c)});
    out.push_back({"log^-" + fmt(c) + "(e/t)", Weight::log_power(c, 1)});
    out.push_back({"loglog^-" + fmt(c) + "(e/t)", Weight::log_power(c, 2)});
  }
  for (double a : vals)
    for (double b : vals)
      out.push_back({"exp(-" + fmt(a) + " log^" + fmt(b) + "(e/t))", Weight::exp_log(a, b)});
  return out;
}

ModulusCheck check_modulus_of_continuity(const Weight& w, int grid_depth) {
  if (grid_depth < 4) throw ParameterError("modulus check needs grid_depth >= 4");
  if (grid_depth > 16) throw ParameterError("modulus check grid_depth is capped at 16");
  const std::size_t n = std::size_t{1} << grid_depth;
  const double h = std::ldexp(1.0, -grid_depth);
  std::vector<double> v(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    v[k] = w(static_cast<double>(k) * h);
    if (!std::isfinite(v[k]) || v[k] < 0.0)
      throw InvalidWeight("weight is negative or non-finite at t = " + fmt(k * h));
  }
  ModulusCheck out;
  if (v[0] > kModulusTol) {
    out.ok = false;
    out.witness = {0.0, 0.0};
    out.reason = "w(0) != 0";
    return out;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (v[k + 1] < v[k] - kModulusTol) {
      out.ok = false;
      out.witness = {k * h, (k + 1) * h};
      out.reason = "not nondecreasing";
      return out;
    }
  }
  // Coarse-to-fine: pairs first seen at level L, s <= t, s + t < 1.
  for (int level = 1; level <= grid_depth; ++level) {
    const std::size_t m = std::size_t{1} << level;
    const std::size_t step = n / m;
    for (std::size_t i = 1; i < m; ++i) {
      for (std::size_t j = i; i + j < m; ++j) {
        if (((i | j) & 1u) == 0) continue;
        if (v[(i + j) * step] > v[i * step] + v[j * step] + kModulusTol) {
          out.ok = false;
          out.witness = {static_cast<double>(i) / m, static_cast<double>(j) / m};
          out.reason = "not subadditive";
          return out;
        }
      }
    }
  }
  return out;
}

MajorantCheck check_majorant(const Weight& w, const std::vector<double>& lambda_candidates,
                             int grid_depth) {
  if (lambda_candidates.empty()) throw ParameterError("check_majorant needs candidates");
  for (double lam : lambda_candidates) {
    if (check_modulus_of_continuity(w.pow(lam), grid_depth).ok) return {true, lam};
  }
  return {false, std::nullopt};
}

std::optional<double> largest_majorant_lambda(const Weight& w,
                                              const std::vector<double>& lambda_candidates,
                                              int grid_depth) {
  std::vector<double> c = lambda_candidates;
  if (auto h = w.lambda_hint()) c.push_back(*h);
  std::sort(c.begin(), c.end(), std::greater<>());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (double lam : c) {
    if (check_modulus_of_continuity(w.pow(lam), grid_depth).ok) return lam;
  }
  return std::nullopt;
}

A1Result check_A1(const Weight& w, int depth) {
  if (depth < 2) throw ParameterError("check_A1 needs depth >= 2");
  A1Result r;
  r.ratio_low = kInf;
  r.ratio_high = 0.0;
  for (int j = 2; j <= depth; ++j) {
    const double log_t = -j * std::numbers::ln2;
    const double a = -w.log_from_log(log_t);
    if (!(a > 0.0)) throw ParameterError("check_A1 needs w(t) < 1 below 1/2");
    if (!std::isfinite(a)) throw InvalidWeight("weight vanishes at a positive sample point");
    const double b = -w.log_from_log(2.0 * log_t);
    if (!std::isfinite(b)) {
      // w(t^2) underflowed; fine only if the sweep has already failed.
      if (r.ratio_high >= 64.0) break;
      throw InvalidWeight("weight vanishes at a positive sample point");
    }
    const double q = b / a;
    r.ratio_low = std::min(r.ratio_low, q);
    r.ratio_high = std::max(r.ratio_high, q);
    ++r.samples;
  }
  r.ok = std::isfinite(r.ratio_low) && std::isfinite(r.ratio_high) && r.ratio_low > 0.0 &&
         r.ratio_high < 64.0;
  return r;
}

A2Result check_A2(const Weight& w, double alpha, int quad_depth) {
  if (!(alpha > 0.0)) throw ParameterError("check_A2 needs alpha > 0");
  if (quad_depth < 1) throw ParameterError("check_A2 needs quad_depth >= 1");
  A2Result r;
  r.power_is_modulus = check_modulus_of_continuity(w.pow(1.0 + alpha), 12).ok;
  const double U = quad_depth * std::numbers::ln2;
  const auto tail = w.dini_tail(U, alpha);
  if (!tail) throw Uncertified("no certified tail bound for " + w.describe());
  auto f = [&](double u) { return std::exp(alpha * w.log_from_log(-u)); };
  r.quadrature_part = quad::finite(f, 0.0, U, 1e-13).value;
  r.tail_bound = *tail;
  r.dini_integral = r.quadrature_part + r.tail_bound;
  r.ok = std::isfinite(r.tail_bound);
  return r;
}

MonomialSup sup_monomial_weight(const Weight& w, int n) {
  if (n < 0) throw ParameterError("monomial degree must be nonnegative");
  if (n == 0) return {w(1.0), 0.0};
  // u = 1 - r = e^{-s}
  auto g = [&](double s) { return n * std::log1p(-std::exp(-s)) + w.log_from_log(-s); };
  const double hi = 40.0 + 2.0 * std::log(n + 2.0);
  const auto best = quad::maximize(g, 1e-9, hi, 800);
  return {std::exp(best.value), 1.0 - std::exp(-best.x)};
}

namespace {

struct ConditionAData {
  std::vector<double> log_sup;
  std::vector<double> log_w;
};

ConditionAData condition_a_data(const Weight& w, int n_max) {
  if (n_max < 8) throw ParameterError("condition (a) needs n_max >= 8");
  if (w(0.0) != 0.0) throw InvalidWeight("weight must vanish at 0");
  ConditionAData d;
  for (int n = 1; n <= n_max; ++n) {
    d.log_sup.push_back(std::log(sup_monomial_weight(w, n).sup));
    d.log_w.push_back(w.log_at(1.0 / n));
  }
  return d;
}

double log_c1(const ConditionAData& d, double kappa) {
  double m = -kInf;
  for (std::size_t i = 0; i < d.log_sup.size(); ++i) {
    const double lw = d.log_w[i];
    if (lw == -kInf) {
      if (kappa > 0.0) return kInf;
      m = std::max(m, d.log_sup[i]);
      continue;
    }
    m = std::max(m, d.log_sup[i] - kappa * lw);
  }
  return m;
}

}  // namespace

double condition_a_constant(const Weight& w, int n_max, double kappa) {
  return std::exp(log_c1(condition_a_data(w, n_max), kappa));
}

ConditionA check_condition_a(const Weight& w, int n_max) {
  const auto d = condition_a_data(w, n_max);
  ConditionA r;
  for (double ls : d.log_sup) r.sups.push_back(std::exp(ls));
  const double limit = std::log(10.0);
  if (log_c1(d, 0.0) > limit) {
    r.ok = false;
    r.kappa = 0.0;
    r.C1 = std::exp(log_c1(d, 0.0));
    return r;
  }
  constexpr double kKappaCap = 64.0;
  if (log_c1(d, kKappaCap) <= limit) {
    r.ok = true;
    r.kappa = kKappaCap;
    r.kappa_unbounded = true;
    r.C1 = std::exp(log_c1(d, kKappaCap));
    return r;
  }
  double lo = 0.0;
  double hi = kKappaCap;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_c1(d, mid) <= limit ? lo : hi) = mid;
  }
  r.ok = true;
  r.kappa = lo;
  r.C1 = std::exp(log_c1(d, lo));
  return r;
}

ConditionB check_condition_b(const Weight& w, int depth) {
  if (depth < 2) throw ParameterError("condition (b) needs depth >= 2");
  ConditionB r;
  for (int j = 2; j <= depth; ++j) {
    const double log_l = -j * std::numbers::ln2;
    const double denom = -w.log_from_log(log_l);
    if (!(denom > 0.0)) {
      r.ratios.push_back(kInf);
      continue;
    }
    // t = ell e^{-s}
    auto f = [&](double s) { return -w.log_from_log(log_l - s) * std::exp(-s); };
    double num = kInf;
    try {
      num = quad::half_line(f).value;
    } catch (const std::exception&) {
      num = kInf;
    }
    r.ratios.push_back(std::isfinite(num) ? num / denom : kInf);
  }
  r.C2 = 0.0;
  for (double q : r.ratios) r.C2 = std::max(r.C2, q);
  r.ok = std::isfinite(r.C2);
  return r;
}

double neg_log_weight_upper(const Weight& w, double lambda, double log_g) {
  return (-log_g + std::numbers::ln2) / lambda - w.log_from_log(0.0);
}

}  // namespace gst
