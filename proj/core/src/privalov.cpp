#include "gst/privalov.hpp"

#include "gst/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gst {

PrivalovDomain::PrivalovDomain(ClosedCircleSet E) : E_(std::move(E)) {
  if (E_.clip() || !E_.extra_points().empty())
    throw ParameterError("Privalov domain needs an unclipped set");
  if (E_.is_full_circle()) throw ParameterError("Privalov domain needs a set with gaps");
}

double PrivalovDomain::h(double x) const {
  const auto gap = E_.gap_containing(x);
  if (!gap) return 0.0;
  const double L = gap->length;
  const double u = wrap01(x - gap->start);
  const double q = u * (L - u) / L;
  return 0.5 * q * q;
}

bool PrivalovDomain::contains(Complex z) const {
  const double r = std::abs(z);
  if (r == 0.0) return true;
  if (!(r < 1.0)) return false;
  const double x = wrap01(std::arg(z) / (2.0 * std::numbers::pi));
  return (1.0 - r) - h(x) > 8.0 * std::numeric_limits<double>::epsilon();
}

Complex PrivalovDomain::boundary_point(double x) const { return (1.0 - h(x)) * circle_point(x); }

std::vector<BoundarySample> boundary_samples(const PrivalovDomain& D, int count) {
  if (count < 1) throw ParameterError("sample count must be positive");
  auto gaps = gaps_at_least(D.set(), kPrivalovMinGap);
  if (gaps.empty()) throw ParameterError("no gap is long enough to sample");
  std::sort(gaps.begin(), gaps.end(), [](const Arc& a, const Arc& b) {
    return a.length != b.length ? a.length > b.length : a.start < b.start;
  });
  std::vector<double> xs{wrap01(gaps[0].start + 0.5 * gaps[0].length)};

  // Largest-remainder apportionment of the remaining samples by length.
  const int rest = count - 1;
  double total = 0.0;
  for (const Arc& g : gaps) total += g.length;
  std::vector<int> share(gaps.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainder;
  int assigned = 0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const double exact = rest * gaps[i].length / total;
    share[i] = static_cast<int>(std::floor(exact));
    assigned += share[i];
    remainder.emplace_back(exact - share[i], i);
  }
  std::stable_sort(remainder.begin(), remainder.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int i = 0; i < rest - assigned; ++i) ++share[remainder[i].second];

  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const Arc& g = gaps[i];
    const int n = share[i];
    const int uniform = (n + 1) / 2;
    const int dense = n - uniform;
    for (int j = 0; j < uniform; ++j) xs.push_back(wrap01(g.start + g.length * (j + 0.5) / uniform));
    // Distances from the nearer endpoint, geometric between L/8 and the
    // closest allowed approach, alternating sides.
    const double far = g.length / 8.0;
    const double near = std::min(far, kPrivalovMinDistance);
    for (int j = 0; j < dense; ++j) {
      const double t = dense == 1 ? 0.0 : static_cast<double>(j) / (dense - 1);
      const double d = far * std::pow(near / far, t);
      xs.push_back(wrap01(j % 2 == 0 ? g.start + d : g.start + g.length - d));
    }
  }
  std::vector<BoundarySample> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const double h = D.h(x);
    out.push_back({x, h, (1.0 - h) * circle_point(x)});
  }
  return out;
}

namespace {

BoundaryEstimate estimate_from_logs(const std::vector<BoundarySample>& samples,
                                    const std::vector<double>& log_G, const Weight& w) {
  BoundaryEstimate est;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double lr = log_G[i] - w.log_at(samples[i].h);
    if (lr > worst) {
      worst = lr;
      est.worst = samples[i].z;
    }
  }
  est.samples = samples.size();
  est.max_ratio = std::exp(worst);
  est.ok = est.max_ratio <= 1.0 + 1e-9;
  return est;
}

}  // namespace

BoundaryEstimate privalov_boundary_estimate(const PrivalovDomain& D, const CarlesonOuter& G,
                                            const Weight& w, int count) {
  const auto samples = boundary_samples(D, count);
  std::vector<double> logs;
  logs.reserve(samples.size());
  for (const auto& s : samples) logs.push_back(G.log_abs(s.z));
  return estimate_from_logs(samples, logs, w);
}

AutoCarleson auto_carleson(const PrivalovDomain& D, const Weight& w, int count, double min_length) {
  const CarlesonOuter base = carleson_outer(D.set(), w, 1.0, min_length);
  const auto samples = boundary_samples(D, count);
  std::vector<double> re_psi;
  re_psi.reserve(samples.size());
  for (const auto& s : samples) re_psi.push_back(base.psi_sum(s.z).real());
  std::vector<double> logs(samples.size());
  for (int j = 0; j <= 20; ++j) {
    const double N = std::ldexp(1.0, j);
    for (std::size_t i = 0; i < samples.size(); ++i) logs[i] = -N * re_psi[i];
    auto est = estimate_from_logs(samples, logs, w);
    if (est.ok || j == 20) return {base.with_N(N), est, j};
  }
  return {base, {}, 0};
}

Complex eval_polynomial(const std::vector<Complex>& coef, Complex z) {
  Complex v = 0.0;
  for (auto it = coef.rbegin(); it != coef.rend(); ++it) v = v * z + *it;
  return v;
}

std::vector<EmbeddingCheck> embedding_check(const PrivalovDomain& D, const CarlesonOuter& G,
                                            const std::vector<std::vector<Complex>>& polys,
                                            const Weight& w, int count) {
  std::vector<Complex> pts;
  for (const auto& s : boundary_samples(D, count)) pts.push_back(s.z);
  const int interior_angles = 64;
  for (int j = 0; j <= 12; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    for (int i = 0; i < (j == 0 ? 1 : interior_angles); ++i) {
      const Complex z = r * circle_point(static_cast<double>(i) / interior_angles);
      if (D.contains(z)) pts.push_back(z);
    }
  }
  std::vector<double> abs_G;
  abs_G.reserve(pts.size());
  for (const Complex& z : pts) abs_G.push_back(std::exp(G.log_abs(z)));

  std::vector<EmbeddingCheck> out;
  for (const auto& Q : polys) {
    EmbeddingCheck res;
    auto q = [&](Complex z) { return eval_polynomial(Q, z); };
    res.norm_estimate = growth_norm_estimate(q, w, 14).sup_estimate;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double qz = std::abs(q(pts[i]));
      res.norm_estimate = std::max(res.norm_estimate, w(1.0 - std::abs(pts[i])) * qz);
      res.max_lhs = std::max(res.max_lhs, abs_G[i] * qz);
    }
    res.samples = pts.size();
    res.ok = res.max_lhs <= res.norm_estimate * (1.0 + 1e-9);
    out.push_back(res);
  }
  return out;
}

EmbeddingCheck embedding_check(const PrivalovDomain& D, const CarlesonOuter& G,
                               const std::vector<Complex>& Q, const Weight& w, int count) {
  return embedding_check(D, G, std::vector<std::vector<Complex>>{Q}, w, count).front();
}

}  // namespace gst
