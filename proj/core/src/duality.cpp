#include "gst/duality.hpp"

#include "gst/circle.hpp"
#include "gst/error.hpp"
#include "gst/parallel.hpp"
#include "gst/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gst {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

using quad::gauss_rule;

int angular_count(int level) { return std::clamp(1 << std::min(level + 4, 20), 64, 4096); }

bool near_singularity(double x, const std::vector<double>& singular) {
  for (double s : singular)
    if (circle_distance(x, s) < 1e-12) return true;
  return false;
}

struct Node {
  double x;
  double weight;
};

// Midpoint nodes on the circle. Without singular points they are uniform;
// otherwise each arc between consecutive singular points is graded with
// t^p / (t^p + (1-t)^p), which clusters nodes at the singular points so the
// unresolved oscillation there shrinks like (p/n)^(2p/(p+1)).
std::vector<Node> boundary_nodes(std::vector<double> singular, int n) {
  constexpr int p = 4;
  std::vector<Node> nodes;
  if (singular.empty()) {
    for (int k = 0; k < n; ++k) nodes.push_back({(k + 0.5) / n, 1.0 / n});
    return nodes;
  }
  for (double& x : singular) x = wrap01(x);
  std::sort(singular.begin(), singular.end());
  singular.erase(std::unique(singular.begin(), singular.end()), singular.end());
  const std::size_t m = singular.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double a = singular[i];
    const double L = i + 1 < m ? singular[i + 1] - a : 1.0 - a + singular[0];
    const int count = std::max(8, static_cast<int>(std::lround(n * L)));
    for (int k = 0; k < count; ++k) {
      const double t = (k + 0.5) / count;
      const double tp = std::pow(t, p), up = std::pow(1.0 - t, p);
      const double psi = tp / (tp + up);
      const double dpsi = p * std::pow(t * (1.0 - t), p - 1) / ((tp + up) * (tp + up));
      nodes.push_back({wrap01(a + L * psi), L * dpsi / count});
    }
  }
  return nodes;
}

double kernel_norm(const ModelKernelSpec& spec) {
  return std::sqrt(std::max(0.0, model_kernel(spec, spec.lambda).value.real()));
}

}  // namespace

std::string to_string(FunctionClass kind) {
  switch (kind) {
    case FunctionClass::polynomial: return "polynomial";
    case FunctionClass::rational: return "rational";
    case FunctionClass::atomic_inner: return "atomic_inner";
    case FunctionClass::product: return "product";
    case FunctionClass::closed_form: return "closed_form";
  }
  return "unknown";
}

DiscFunction DiscFunction::polynomial(std::vector<Complex> coef) {
  if (coef.empty()) coef.push_back(0.0);
  DiscFunction f;
  f.kind = FunctionClass::polynomial;
  f.label = "polynomial of degree " + std::to_string(coef.size() - 1);
  f.value = [coef](Complex z) {
    Complex v = 0.0;
    double scale = 0.0;
    const double r = std::abs(z);
    for (std::size_t k = coef.size(); k-- > 0;) {
      v = v * z + coef[k];
      scale = scale * r + std::abs(coef[k]);
    }
    return AnalyticValue{v, 4.0 * static_cast<double>(coef.size()) * kEps * scale};
  };
  f.derivative = [coef](Complex z) {
    Complex v = 0.0;
    double scale = 0.0;
    const double r = std::abs(z);
    for (std::size_t k = coef.size(); k-- > 1;) {
      v = v * z + static_cast<double>(k) * coef[k];
      scale = scale * r + static_cast<double>(k) * std::abs(coef[k]);
    }
    return AnalyticValue{v, 4.0 * static_cast<double>(coef.size()) * kEps * scale};
  };
  return f;
}

DiscFunction DiscFunction::blaschke(BlaschkeSeq B) {
  for (const Complex& lam : B.zeros)
    if (!(std::abs(lam) < 1.0)) throw ParameterError("Blaschke zeros must lie in the open disc");
  DiscFunction f;
  f.kind = FunctionClass::rational;
  f.label = "Blaschke product with " + std::to_string(B.zeros.size()) + " zeros";
  f.value = [B](Complex z) { return eval_blaschke(B, z); };
  f.derivative = [B](Complex z) {
    if (std::abs(z) > 1.0) throw DomainError("Blaschke product evaluated outside the closed disc");
    const std::size_t n = B.zeros.size();
    std::vector<Complex> val(n), der(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Complex lam = B.zeros[j];
      const double a = std::abs(lam);
      if (a == 0.0) {
        val[j] = z;
        der[j] = 1.0;
      } else {
        const Complex c = a / lam;
        const Complex den = 1.0 - std::conj(lam) * z;
        val[j] = c * (lam - z) / den;
        der[j] = c * (a * a - 1.0) / (den * den);
      }
    }
    // Product rule with prefix and suffix products.
    std::vector<Complex> prefix(n + 1, 1.0), suffix(n + 1, 1.0);
    for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] * val[j];
    for (std::size_t j = n; j-- > 0;) suffix[j] = suffix[j + 1] * val[j];
    Complex d = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      d += prefix[j] * der[j] * suffix[j + 1];
      scale += std::abs(der[j]);
    }
    d *= std::polar(1.0, B.rotation);
    return AnalyticValue{d, 16.0 * static_cast<double>(n + 1) * kEps * std::max(1.0, scale)};
  };
  return f;
}

DiscFunction DiscFunction::atomic_inner(std::vector<Atom> atoms) {
  DiscFunction f;
  f.kind = FunctionClass::atomic_inner;
  f.label = "atomic singular inner function with " + std::to_string(atoms.size()) + " atoms";
  std::vector<Complex> points;
  for (const auto& a : atoms) {
    if (!(a.mass >= 0.0)) throw InvalidWeight("atom masses must be nonnegative");
    points.push_back(circle_point(a.pos));
    f.boundary_singularities.push_back(wrap01(a.pos));
  }
  // Returns S(z), the Herglotz sum, its derivative and a magnitude scale.
  auto parts = [atoms, points](Complex z) {
    if (std::abs(z) > 1.0) throw DomainError("singular inner function evaluated outside the disc");
    Complex H = 0.0, dH = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      const Complex diff = points[j] - z;
      if (diff == Complex(0.0)) throw DomainError("evaluation at an atom");
      H += atoms[j].mass * (points[j] + z) / diff;
      dH += atoms[j].mass * 2.0 * points[j] / (diff * diff);
      scale += atoms[j].mass * 2.0 / std::abs(diff);
    }
    return std::tuple{std::exp(-H), dH, scale};
  };
  f.value = [parts](Complex z) {
    const auto [S, dH, scale] = parts(z);
    return AnalyticValue{S, std::abs(S) * 16.0 * kEps * (1.0 + scale)};
  };
  f.derivative = [parts](Complex z) {
    const auto [S, dH, scale] = parts(z);
    const Complex d = -S * dH;
    return AnalyticValue{d, std::abs(d) * 32.0 * kEps * (1.0 + scale)};
  };
  return f;
}

DiscFunction DiscFunction::closed_form(std::string label, std::function<Complex(Complex)> fn,
                                       std::function<Complex(Complex)> dfn,
                                       std::vector<double> boundary_singularities) {
  DiscFunction f;
  f.kind = FunctionClass::closed_form;
  f.label = std::move(label);
  f.value = [fn](Complex z) {
    const Complex v = fn(z);
    return AnalyticValue{v, 8.0 * kEps * std::abs(v)};
  };
  f.derivative = [dfn](Complex z) {
    const Complex v = dfn(z);
    return AnalyticValue{v, 8.0 * kEps * std::abs(v)};
  };
  f.boundary_singularities = std::move(boundary_singularities);
  return f;
}

DiscFunction DiscFunction::operator*(const DiscFunction& other) const {
  DiscFunction p;
  p.kind = FunctionClass::product;
  p.label = "(" + label + ") * (" + other.label + ")";
  p.value = [a = value, b = other.value](Complex z) {
    const auto u = a(z), v = b(z);
    return AnalyticValue{u.value * v.value,
                         u.err * std::abs(v.value) + v.err * std::abs(u.value) + u.err * v.err};
  };
  p.derivative = [a = value, da = derivative, b = other.value, db = other.derivative](Complex z) {
    const auto u = a(z), du = da(z), v = b(z), dv = db(z);
    return AnalyticValue{du.value * v.value + u.value * dv.value,
                         du.err * std::abs(v.value) + v.err * (std::abs(du.value) + du.err) +
                             u.err * std::abs(dv.value) + dv.err * (std::abs(u.value) + u.err)};
  };
  p.boundary_singularities = boundary_singularities;
  p.boundary_singularities.insert(p.boundary_singularities.end(),
                                  other.boundary_singularities.begin(),
                                  other.boundary_singularities.end());
  return p;
}

FwNorm fw_norm(const DiscFunction& f, const Weight& w, int quad_depth) {
  if (quad_depth < 4 || quad_depth > 60) throw ParameterError("quad_depth must lie in [4, 60]");
  FwNorm out;
  out.at_origin = std::abs(f(0.0).value);
  out.annuli.assign(static_cast<std::size_t>(quad_depth), 0.0);

  parallel_for(out.annuli.size(), [&](std::size_t j) {
    // Annulus in the variable s = 1 - |z|.
    const double s_hi = j == 0 ? 1.0 : std::ldexp(1.0, -static_cast<int>(j));
    const double s_lo = std::ldexp(1.0, -static_cast<int>(j) - 1);
    const quad::Rule rule = gauss_rule(s_lo, s_hi);
    const int M = angular_count(static_cast<int>(j));
    double total = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double s = rule.x[i];
      const double r = 1.0 - s;
      double mean = 0.0;
      for (int k = 0; k < M; ++k) mean += std::abs(f.derivative(r * circle_point(k / double(M))).value);
      mean /= M;
      total += rule.w[i] * 2.0 * r * mean / w(s);
    }
    out.annuli[j] = total;
  });

  double sum = 0.0;
  for (double c : out.annuli) sum += c;
  out.value = out.at_origin + sum;

  const std::size_t n = out.annuli.size();
  const double last = out.annuli.back();
  if (!std::isfinite(sum)) {
    out.tag = SeriesTag::diverges;
    return out;
  }
  if (last == 0.0 && out.annuli[n - 2] == 0.0) {
    out.tag = SeriesTag::finite;
    return out;
  }
  double qmax = 0.0, qmin = std::numeric_limits<double>::infinity();
  for (std::size_t j = n - 4; j < n; ++j) {
    const double q = out.annuli[j - 1] > 0.0 ? out.annuli[j] / out.annuli[j - 1]
                                             : std::numeric_limits<double>::infinity();
    qmax = std::max(qmax, q);
    qmin = std::min(qmin, q);
  }
  if (qmax <= 0.9) {
    out.tag = SeriesTag::finite;
    out.tail_bound = last * qmax / (1.0 - qmax);
    out.value += out.tail_bound;
  } else if (qmin >= 0.99) {
    out.tag = SeriesTag::diverges;
  } else {
    out.tag = SeriesTag::undecided;
  }
  return out;
}

Complex cauchy_pairing(const std::vector<Complex>& g, const std::vector<Complex>& f) {
  Complex s = 0.0;
  for (std::size_t n = 0; n < std::min(g.size(), f.size()); ++n) s += g[n] * std::conj(f[n]);
  return s;
}

Complex boundary_pairing(const DiscFunction& g, const DiscFunction& f, double r, int nodes) {
  if (!(r > 0.0 && r < 1.0)) throw ParameterError("pairing radius must lie in (0, 1)");
  if (nodes < 1) throw ParameterError("at least one node required");
  Complex s = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const Complex z = r * circle_point(k / double(nodes));
    s += g(z).value * std::conj(f(z).value);
  }
  return s / double(nodes);
}

Complex limit_pairing(const DiscFunction& g, const DiscFunction& f, int nodes) {
  const Complex p12 = boundary_pairing(g, f, 1.0 - 0x1p-12, nodes);
  const Complex p13 = boundary_pairing(g, f, 1.0 - 0x1p-13, nodes);
  const Complex p14 = boundary_pairing(g, f, 1.0 - 0x1p-14, nodes);
  const Complex r1 = 2.0 * p13 - p12;
  const Complex r2 = 2.0 * p14 - p13;
  return (4.0 * r2 - r1) / 3.0;
}

GreenIdentity green_identity_check(const std::vector<Complex>& g, const std::vector<Complex>& f,
                                   double r) {
  if (!(r > 0.0 && r < 1.0)) throw ParameterError("Green identity radius must lie in (0, 1)");
  const auto G = DiscFunction::polynomial(g);
  const auto F = DiscFunction::polynomial(f);
  const int dg = static_cast<int>(std::max<std::size_t>(g.size(), 1)) - 1;
  const int df = static_cast<int>(std::max<std::size_t>(f.size(), 1)) - 1;
  const int nodes = std::max(64, 2 * (dg + df) + 2);

  GreenIdentity out;
  out.lhs = boundary_pairing(G, F, r, nodes);

  const Complex f0 = f.empty() ? Complex(0.0) : f[0];
  const Complex g0 = g.empty() ? Complex(0.0) : g[0];
  // The radial integrand has degree dg + df + 1 in rho.
  const int panels = 1 + (dg + df + 1) / 39;
  Complex area = 0.0;
  for (int p = 0; p < panels; ++p) {
    const quad::Rule rule = gauss_rule(p / double(panels), (p + 1) / double(panels));
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double rho = rule.x[i];
      Complex mean = 0.0;
      for (int k = 0; k < nodes; ++k) {
        const Complex z = r * rho * circle_point(k / double(nodes));
        const Complex inner = F(z).value - f0 + z * F.derivative(z).value;
        mean += G(z).value * std::conj(inner);
      }
      area += rule.w[i] * 2.0 * rho * mean / double(nodes);
    }
  }
  out.rhs = g0 * std::conj(f0) + area;

  for (std::size_t n = 0; n < std::min(g.size(), f.size()); ++n)
    out.exact += g[n] * std::conj(f[n]) * std::pow(r, 2.0 * static_cast<double>(n));
  out.oracle_error = std::max(std::abs(out.lhs - out.exact), std::abs(out.rhs - out.exact));
  out.ok = std::abs(out.lhs - out.rhs) <= 1e-8 * (1.0 + std::abs(out.lhs)) &&
           out.oracle_error <= 1e-8 * (1.0 + std::abs(out.exact));
  return out;
}

AnalyticValue model_kernel(const ModelKernelSpec& spec, Complex z) {
  if (!(std::abs(spec.lambda) < 1.0)) throw ParameterError("kernel point must lie in the open disc");
  if (std::abs(z) > 1.0) throw DomainError("model kernel evaluated outside the disc");
  const auto tl = spec.theta(spec.lambda);
  const auto tz = spec.theta(z);
  const Complex num = 1.0 - std::conj(tl.value) * tz.value;
  const Complex den = 1.0 - std::conj(spec.lambda) * z;
  const double num_err = tl.err * std::abs(tz.value) + tz.err * (std::abs(tl.value) + tl.err);
  return {num / den, (num_err + 4.0 * kEps * std::abs(num)) / std::abs(den)};
}

QuadratureCheck kernel_reproducing_check(const ModelKernelSpec& spec, Complex lambda2,
                                         int boundary_n, double tol) {
  if (boundary_n < 1) throw ParameterError("at least one node required");
  const ModelKernelSpec second{spec.theta, lambda2};
  QuadratureCheck out;
  Complex s = 0.0;
  double mass = 0.0;
  for (const auto& [x, wt] : boundary_nodes(spec.theta.boundary_singularities, boundary_n)) {
    if (near_singularity(x, spec.theta.boundary_singularities)) {
      ++out.skipped;
      continue;
    }
    const Complex z = circle_point(x);
    s += wt * model_kernel(spec, z).value * std::conj(model_kernel(second, z).value);
    mass += wt;
    ++out.nodes;
  }
  if (out.nodes == 0) throw ConstructionFailed("every node hit a boundary singularity");
  out.lhs = s / mass;
  out.rhs = model_kernel(spec, lambda2).value;
  out.error = std::abs(out.lhs - out.rhs);
  out.scale = kernel_norm(spec) * kernel_norm(second);
  out.ok = out.error <= tol * std::max(1.0, out.scale);
  return out;
}

QuadratureCheck orthogonal_decomposition_check(const DiscFunction& theta_p,
                                               const DiscFunction& theta_c, Complex lambda,
                                               Complex lambda2, int boundary_n, double tol) {
  if (boundary_n < 1) throw ParameterError("at least one node required");
  const ModelKernelSpec kp{theta_p, lambda};
  const ModelKernelSpec kc{theta_c, lambda2};
  std::vector<double> singular = theta_p.boundary_singularities;
  singular.insert(singular.end(), theta_c.boundary_singularities.begin(),
                  theta_c.boundary_singularities.end());
  QuadratureCheck out;
  Complex s = 0.0;
  double mass = 0.0;
  for (const auto& [x, wt] : boundary_nodes(singular, boundary_n)) {
    if (near_singularity(x, singular)) {
      ++out.skipped;
      continue;
    }
    const Complex z = circle_point(x);
    const Complex f = model_kernel(kp, z).value;
    const Complex g = theta_p(z).value * model_kernel(kc, z).value;
    s += wt * f * std::conj(g);
    mass += wt;
    ++out.nodes;
  }
  if (out.nodes == 0) throw ConstructionFailed("every node hit a boundary singularity");
  out.lhs = s / mass;
  out.rhs = 0.0;
  out.error = std::abs(out.lhs);
  out.scale = kernel_norm(kp) * kernel_norm(kc);
  out.ok = out.error <= tol * std::max(1.0, out.scale);
  return out;
}

AwEstimate aw_norm_estimate(const std::function<Complex(double)>& trace, const Weight& w,
                            int boundary_n) {
  if (boundary_n < 2) throw ParameterError("at least two nodes required");
  std::vector<Complex> values(static_cast<std::size_t>(boundary_n));
  for (int k = 0; k < boundary_n; ++k) values[k] = trace((k + 0.5) / boundary_n);

  AwEstimate out;
  for (int k = 0; k < boundary_n; ++k)
    if (std::abs(values[k]) > out.sup) out.sup = std::abs(values[k]);

  // Pairs (k, k + m) with chordal distance 2 sin(pi m / n) <= 1/2.
  const int max_shift = static_cast<int>(std::floor(std::asin(0.25) / std::numbers::pi * boundary_n));
  std::vector<double> best(static_cast<std::size_t>(max_shift + 1), 0.0);
  std::vector<int> where(best.size(), 0);
  parallel_for(best.size(), [&](std::size_t m) {
    if (m == 0) return;
    const double chord = 2.0 * std::sin(std::numbers::pi * static_cast<double>(m) / boundary_n);
    const double wd = w(chord);
    for (int k = 0; k < boundary_n; ++k) {
      const double q = std::abs(values[k] - values[(k + m) % boundary_n]) / wd;
      if (q > best[m]) {
        best[m] = q;
        where[m] = k;
      }
    }
  });
  for (std::size_t m = 1; m < best.size(); ++m)
    if (best[m] > out.seminorm) {
      out.seminorm = best[m];
      out.witness_x = (where[m] + 0.5) / boundary_n;
      out.witness_y = wrap01(out.witness_x + static_cast<double>(m) / boundary_n);
    }
  out.value = out.sup + out.seminorm;
  return out;
}

AwEstimate aw_norm_estimate(const DiscFunction& f, const Weight& w, int boundary_n) {
  // Nodes on a singular point take the value of their nearest regular
  // neighbour so that they add no spurious differences.
  return aw_norm_estimate(
      [&](double x) {
        if (near_singularity(x, f.boundary_singularities)) x = wrap01(x + 0.25 / boundary_n);
        return f(circle_point(x)).value;
      },
      w, boundary_n);
}

DerivativeGrowth derivative_growth_check(const DiscFunction& f, const Weight& w, int levels,
                                         int boundary_n) {
  if (levels < 5 || levels > 48) throw ParameterError("levels must lie in [5, 48]");
  DerivativeGrowth out;
  out.aw = aw_norm_estimate(f, w, boundary_n);
  if (!(out.aw.value > 0.0)) throw ParameterError("A_w estimate vanishes");
  double running = 0.0;
  for (int j = 1; j <= levels; ++j) {
    const double s = std::ldexp(1.0, -j);
    const int M = angular_count(j);
    for (int k = 0; k < M; ++k) {
      const Complex z = (1.0 - s) * circle_point(k / double(M));
      const double q = std::abs(f.derivative(z).value) * s / (w(s) * out.aw.value);
      running = std::max(running, q);
    }
    out.by_level.push_back(running);
  }
  out.C_fit = running;
  out.ok = out.by_level.back() <= 1.05 * out.by_level[out.by_level.size() - 5];
  return out;
}

ContainmentCheck aw_in_fw_check(const DiscFunction& f, const Weight& w, double alpha, double p,
                                int quad_depth) {
  if (!(p > 0.0 && p < 1.0 - alpha)) throw ParameterError("containment needs 0 < p < 1 - alpha");
  if (!check_A2(w, alpha, 16).ok) throw ParameterError("weight fails the (A2) condition");
  ContainmentCheck out;
  out.growth = derivative_growth_check(f, w);
  out.fw = fw_norm(f, w.pow(p), quad_depth);
  if (auto closed = w.dini_tail(0.0, 1.0 - p)) {
    out.dini = *closed;
  } else {
    out.dini = quad::half_line([&](double u) { return std::pow(w(std::exp(-u)), 1.0 - p); }).value;
  }
  const double denom = 2.0 * out.growth.C_fit * out.growth.aw.value * out.dini;
  out.bound_ratio = denom > 0.0 ? (out.fw.value - out.fw.at_origin) / denom : 0.0;
  out.ok = !out.growth.ok || out.fw.tag == SeriesTag::finite;
  return out;
}

TrigPolynomial cauchy_projection(const TrigPolynomial& c) {
  TrigPolynomial out;
  for (auto it = c.lower_bound(0); it != c.end(); ++it) out.insert(*it);
  return out;
}

std::vector<Complex> analytic_coefficients(const TrigPolynomial& c) {
  if (!c.empty() && c.begin()->first < 0)
    throw ParameterError("trigonometric polynomial has negative frequencies");
  std::vector<Complex> out(c.empty() ? 1 : static_cast<std::size_t>(c.rbegin()->first) + 1, 0.0);
  for (const auto& [k, v] : c) out[static_cast<std::size_t>(k)] = v;
  return out;
}

Complex eval_trig(const TrigPolynomial& c, double x) {
  Complex s = 0.0;
  for (const auto& [k, v] : c) s += v * circle_point(wrap01(k * x));
  return s;
}

}  // namespace gst
