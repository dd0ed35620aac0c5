#include "gst/carleson.hpp"

#include "gst/entropy.hpp"
#include "gst/error.hpp"

#include <cmath>
#include <limits>

namespace gst {

std::vector<Arc> gaps_at_least(const ClosedCircleSet& E, double min_length) {
  if (E.clip() || !E.extra_points().empty())
    throw ParameterError("gap enumeration needs an unclipped set");
  if (E.is_full_circle()) throw ParameterError("the full circle has no gaps");
  std::vector<Arc> out;
  for (const Arc& g : E.gaps())
    if (g.length >= min_length) out.push_back(g);
  for (const CantorPiece& p : E.cantor_pieces()) {
    struct Node {
      double lo;
      double len;
      long long level;
    };
    std::vector<Node> stack{{p.hull.start, p.hull.length, 1}};
    while (!stack.empty()) {
      const Node nd = stack.back();
      stack.pop_back();
      const double r = p.schedule.gap_fraction(nd.level);
      // Gaps only shrink with depth, so a short gap ends the branch.
      if (nd.len * r < min_length) continue;
      const double child = 0.5 * nd.len * (1.0 - r);
      out.push_back({nd.lo + child, nd.len - 2.0 * child});
      stack.push_back({nd.lo, child, nd.level + 1});
      stack.push_back({nd.lo + nd.len - child, child, nd.level + 1});
    }
  }
  for (const LogSquaredPiece& p : E.sequence_pieces()) {
    for (double k = 2.0; p.gap_length(k) >= min_length; k += 1.0) {
      const double s = p.position(k);
      out.push_back({s, p.position(k + 1.0) - s});
    }
  }
  return out;
}

WhitneyDecomposition whitney(const ClosedCircleSet& E, double min_length) {
  if (!(min_length > 0.0)) throw ParameterError("minimum Whitney length must be positive");
  WhitneyDecomposition wd;
  wd.min_length = min_length;
  double covered = 0.0;
  for (const Arc& gap : gaps_at_least(E, 4.0 * min_length)) {
    for (int k = 0;; ++k) {
      const double len = gap.length * std::ldexp(1.0, -(k + 2));
      if (len < min_length) break;
      wd.arcs.push_back({{wrap01(gap.start + len), len}, k, gap});
      wd.arcs.push_back({{wrap01(gap.start + gap.length - 2.0 * len), len}, k, gap});
      covered += 2.0 * len;
    }
  }
  wd.omitted_length = std::max(0.0, 1.0 - covered);
  return wd;
}

CarlesonOuter::CarlesonOuter(const ClosedCircleSet& E, const Weight& w, double N, double min_length)
    : whitney_(gst::whitney(E, min_length)), N_(N) {
  if (!(N >= 0.0) || !std::isfinite(N)) throw ParameterError("N must be finite and nonnegative");
  xi_.reserve(whitney_.arcs.size());
  for (const auto& wa : whitney_.arcs) {
    const double m = wa.arc.length;
    const double c = -m * w.log_at(m);
    if (!std::isfinite(c) || c < 0.0) throw InvalidWeight("w must be positive and at most 1 on (0, 1]");
    xi_.push_back(circle_point(wa.arc.midpoint()));
    rho_.push_back(1.0 + m);
    coef_.push_back(c);
    ledger_ += c;
  }
}

Complex CarlesonOuter::psi_sum(Complex z) const {
  if (std::abs(z) > 1.0) throw DomainError("Carleson outer function evaluated outside the closed disc");
  Complex s = 0.0;
  // xi / (rho xi - z) = 1 / (rho - z conj(xi)), whose real part is positive.
  for (std::size_t k = 0; k < xi_.size(); ++k) s += coef_[k] / (rho_[k] - z * std::conj(xi_[k]));
  return s;
}

AnalyticValue CarlesonOuter::eval(Complex z) const {
  const Complex s = psi_sum(z);
  const Complex G = std::exp(-N_ * s);
  // Each term is accurate to a few ulps of coef / (rho - 1) at worst.
  double err = 0.0;
  for (std::size_t k = 0; k < xi_.size(); ++k) err += coef_[k] / (rho_[k] - 1.0);
  err *= 8.0 * std::numeric_limits<double>::epsilon() * N_;
  return {G, std::abs(G) * std::expm1(err)};
}

CarlesonOuter CarlesonOuter::with_N(double N) const {
  if (!(N >= 0.0) || !std::isfinite(N)) throw ParameterError("N must be finite and nonnegative");
  CarlesonOuter out = *this;
  out.N_ = N;
  return out;
}

CarlesonOuter carleson_outer(const ClosedCircleSet& E, const Weight& w, double N, double min_length) {
  const auto e = entropy_sum(E, w);
  if (e.tag != SeriesTag::finite)
    throw Uncertified("Carleson outer function needs a set of certified finite entropy");
  return CarlesonOuter(E, w, N, min_length);
}

}  // namespace gst
