#include "gst/entropy.hpp"

#include "gst/error.hpp"
#include "gst/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gst {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = std::numbers::ln2;
constexpr long long kSumDirect = 1'000'000;
constexpr long long kGeometricLevels = 3000;
constexpr long long kSequenceIntegralCap = 1 << 14;
const std::vector<double> kLambdaCandidates{4.0, 2.0, 1.0, 0.5, 0.25, 0.125};

enum class Mode { sum, integral };

struct Component {
  SeriesTag tag = SeriesTag::finite;
  double value = 0.0;
  double slack = 0.0;  // true value lies in [value - slack, value]
  std::vector<PartialSum> partials;
  std::vector<PartialSum> evidence;
  std::string note;
};

double log_w1_deficit(const Weight& w) { return std::max(0.0, -w.log_from_log(0.0)); }

// Average of the summand per unit gap length for a gap of length exp(log_m):
// log w(m) for the sum, (2/m) int_0^{m/2} log w for the integral.
double gap_density(const Weight& w, Mode mode, double log_m) {
  if (mode == Mode::sum) return w.log_from_log(log_m);
  // t = (m/2) e^{-s}
  const double base = log_m - kLn2;
  auto f = [&](double s) { return w.log_from_log(base - s) * std::exp(-s); };
  try {
    return quad::half_line(f, 1e-12).value;
  } catch (const std::exception&) {
    return -kInf;
  }
}

double gap_term(const Weight& w, Mode mode, double log_m) {
  const double d = gap_density(w, mode, log_m);
  if (d == -kInf) return -kInf;
  return std::exp(log_m) * d;
}

bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

// Remainder evidence: bounds at checkpoints must stay away from zero.
void judge_divergence(Component& c) {
  bool all_pos = !c.evidence.empty();
  for (const auto& e : c.evidence)
    if (!(e.value > 0.0)) all_pos = false;
  if (all_pos && c.evidence.back().value >= 0.5 * c.evidence.front().value) {
    c.tag = SeriesTag::diverges;
    c.value = -kInf;
    c.note = "remainder lower bounds do not decay across checkpoints";
  } else {
    c.tag = SeriesTag::undecided;
    c.note = "no tail certificate and no divergence evidence";
  }
}

Component explicit_gaps(const std::vector<Arc>& gaps, const Weight& w, Mode mode) {
  Component c;
  std::vector<double> lens;
  for (const auto& g : gaps) lens.push_back(g.length);
  std::sort(lens.begin(), lens.end(), std::greater<>());
  for (std::size_t i = 0; i < lens.size(); ++i) {
    const double t = gap_term(w, mode, std::log(lens[i]));
    if (t == -kInf) {
      c.tag = SeriesTag::diverges;
      c.value = -kInf;
      c.note = "weight vanishes at a gap length";
      return c;
    }
    c.value += t;
    c.partials.push_back({static_cast<double>(i + 1), c.value});
  }
  return c;
}

Component cantor_component(const CantorPiece& p, const Weight& w, Mode mode,
                           std::optional<double> lambda, long long direct_levels) {
  Component c;
  const double L = p.hull.length;
  const auto& s = p.schedule;
  auto log_gap = [&](long long n) { return std::log(L) + s.log_length(n - 1) + std::log(s.gap_fraction(n)); };
  // 2^{n-1} gaps of length g_n, combined in log space.
  auto level_term = [&](long long n) {
    const double lg = log_gap(n);
    const double d = gap_density(w, mode, lg);
    if (d == -kInf) return -kInf;
    return std::exp(static_cast<double>(n - 1) * kLn2 + lg) * d;
  };

  if (s.geometric()) {
    const double r = s.ratio;
    const double q = 1.0 - r;
    const double P0 = -std::log(L * r);
    const double Q0 = -std::log(0.5 * (1.0 - r));
    auto tail = [&](long long J) {
      if (!lambda) return kInf;
      const double lam = *lambda;
      const double P = (P0 + kLn2) / lam + log_w1_deficit(w);
      const double Q = Q0 / lam;
      const double qJ = std::pow(q, static_cast<double>(J));
      const double geo = qJ / (1.0 - q);
      const double lin = J * qJ / (1.0 - q) + qJ * q / ((1.0 - q) * (1.0 - q));
      double t = L * r * (P * geo + Q * lin);
      if (mode == Mode::integral) t += (1.0 + kLn2) / lam * L * r * geo;
      return t;
    };
    long long n = 1;
    for (; n <= kGeometricLevels; ++n) {
      const double t = level_term(n);
      if (t == -kInf) {
        c.tag = SeriesTag::diverges;
        c.value = -kInf;
        c.note = "weight vanishes at a gap length";
        return c;
      }
      c.value += t;
      if (is_power_of_two(n)) c.partials.push_back({static_cast<double>(n), c.value});
      if (lambda && tail(n) <= 1e-15 * (1.0 + std::abs(c.value))) break;
    }
    n = std::min(n, kGeometricLevels);
    c.partials.push_back({static_cast<double>(n), c.value});
    if (!lambda) {
      c.tag = SeriesTag::undecided;
      c.note = "geometric Cantor piece without lambda: no tail certificate";
      return c;
    }
    c.slack = tail(n);
    c.tag = std::isfinite(c.slack) ? SeriesTag::finite : SeriesTag::undecided;
    return c;
  }

  for (long long n = 1; n <= direct_levels; ++n) {
    const double t = level_term(n);
    if (t == -kInf) {
      c.tag = SeriesTag::diverges;
      c.value = -kInf;
      c.note = "weight vanishes at a gap length";
      return c;
    }
    c.value += t;
    if (is_power_of_two(n) || n == direct_levels) c.partials.push_back({static_cast<double>(n), c.value});
  }
  // Levels beyond N remove total length A_N in gaps no longer than g_{N+1}.
  for (int e = 4; e <= 40; e += 4) {
    const double N = std::ldexp(1.0, e);
    const double logA = std::log(L) + N * kLn2 + s.log_length(static_cast<long long>(N));
    const double A = std::exp(logA);
    const auto n1 = static_cast<long long>(N) + 1;
    const double lw = w.log_from_log(std::log(L) + s.log_length(n1 - 1) + std::log(s.gap_fraction(n1)));
    c.evidence.push_back({N, A * -lw});
  }
  judge_divergence(c);
  return c;
}

Component sequence_component(const LogSquaredPiece& p, const Weight& w, Mode mode,
                             long long direct_terms) {
  Component c;
  for (long long k = 2; k < direct_terms + 2; ++k) {
    const double t = gap_term(w, mode, std::log(p.gap_length(static_cast<double>(k))));
    if (t == -kInf) {
      c.tag = SeriesTag::diverges;
      c.value = -kInf;
      c.note = "weight vanishes at a gap length";
      return c;
    }
    c.value += t;
    const long long terms = k - 1;
    if (is_power_of_two(terms) || terms == direct_terms)
      c.partials.push_back({static_cast<double>(terms), c.value});
  }
  for (int e = 10; e <= 40; e += 2) {
    const double N = std::ldexp(1.0, e);
    const double lw = w.log_from_log(std::log(p.gap_length(N + 1.0)));
    c.evidence.push_back({N, p.tail_length(N + 1.0) * -lw});
  }
  judge_divergence(c);
  return c;
}

std::optional<double> pick_lambda(const Weight& w) {
  if (auto h = w.lambda_hint()) return h;
  return largest_majorant_lambda(w, kLambdaCandidates);
}

EntropyResult combine(const ClosedCircleSet& E, const Weight& w, Mode mode,
                      std::optional<double> lambda, long long direct) {
  EntropyResult out;
  out.lambda = lambda;
  const bool base_full = E.gaps().empty() && !E.has_procedural_gaps();
  if (base_full && E.clip()) {
    if (!E.clip()->runs.empty())
      throw ParameterError("a clipped full circle has positive measure; entropy is not defined");
    out.note = "empty set";
    return out;
  }
  if (E.is_full_circle()) throw ParameterError("the full circle has no complementary arcs");

  std::vector<Component> comps;
  if (base_full) {
    // Only extra points: their consecutive gaps are explicit.
    comps.push_back(explicit_gaps(ClosedCircleSet::points(E.extra_points()).gaps(), w, mode));
  } else {
    comps.push_back(explicit_gaps(E.gaps(), w, mode));
    for (const auto& c : E.cantor_pieces()) comps.push_back(cantor_component(c, w, mode, lambda, direct));
    for (const auto& s : E.sequence_pieces()) {
      const long long terms = mode == Mode::sum ? kSumDirect : std::min(direct, kSequenceIntegralCap);
      comps.push_back(sequence_component(s, w, mode, terms));
    }
  }

  bool diverges = false;
  bool undecided = false;
  std::ostringstream notes;
  for (const auto& c : comps) {
    out.value += c.value;
    out.lower += c.value - c.slack;
    out.upper += c.value;
    out.partial_sums.insert(out.partial_sums.end(), c.partials.begin(), c.partials.end());
    out.evidence.insert(out.evidence.end(), c.evidence.begin(), c.evidence.end());
    if (c.tag == SeriesTag::diverges) diverges = true;
    if (c.tag == SeriesTag::undecided) undecided = true;
    if (!c.note.empty()) notes << c.note << "; ";
  }
  out.note = notes.str();
  if (diverges) {
    out.tag = SeriesTag::diverges;
    out.value = out.lower = out.upper = -kInf;
  } else if (undecided) {
    out.tag = SeriesTag::undecided;
  } else {
    out.tag = SeriesTag::finite;
  }

  const std::size_t new_gaps =
      E.clip_complement_components() + (base_full ? 0 : 2 * E.extra_points().size());
  if (E.clip() || (!base_full && !E.extra_points().empty())) {
    // Clipping and added points merge or split gaps: each new gap contributes
    // at least the infimum of a single gap term, and dropped terms are <= 0.
    if (out.tag == SeriesTag::diverges) {
      out.tag = SeriesTag::undecided;
      out.value = out.lower = out.upper = 0.0;
      out.note += "base set diverges; restriction may still be finite";
      return out;
    }
    if (!lambda || w.log_from_log(0.0) > 0.0) {
      out.tag = SeriesTag::undecided;
      out.note += "restricted set needs lambda and w(1) <= 1";
      return out;
    }
    double per_gap = gap_term_lower_bound(w, *lambda);
    if (mode == Mode::integral) per_gap -= (1.0 + kLn2) / *lambda;
    out.lower += static_cast<double>(new_gaps) * per_gap;
    out.value = out.lower;
    out.upper = 0.0;
    out.note += "restricted set: value is a certified lower bound";
  }
  return out;
}

}  // namespace

std::string to_string(SeriesTag tag) {
  switch (tag) {
    case SeriesTag::finite: return "finite";
    case SeriesTag::diverges: return "diverges";
    case SeriesTag::undecided: return "undecided";
  }
  return "undecided";
}

double gap_term_lower_bound(const Weight& w, double lambda) {
  // x log(1/w(x)) <= x((log(1/x) + log 2)/lambda + log(1/w(1))) and
  // x log(1/x) <= 1/e.
  return -(1.0 / (std::numbers::e * lambda) + kLn2 / lambda + log_w1_deficit(w));
}

EntropyResult entropy_sum(const ClosedCircleSet& E, const Weight& w) {
  return combine(E, w, Mode::sum, pick_lambda(w), kSumDirect);
}

EntropyResult entropy_integral(const ClosedCircleSet& E, const Weight& w, int quad_depth) {
  if (quad_depth < 1 || quad_depth > 30) throw ParameterError("quad_depth must lie in [1, 30]");
  const auto lambda = w.lambda_hint();
  if (!lambda) throw Uncertified("entropy integral needs a lambda hint for " + w.describe());
  return combine(E, w, Mode::integral, lambda, std::int64_t{1} << quad_depth);
}

Classification classify_measure(const CircleMeasure& mu, const Weight& w) {
  Classification out;
  std::vector<Atom> atoms_p;
  std::vector<CantorPart> parts_p;
  std::vector<CantorPart> parts_c;
  for (const auto& a : mu.atoms()) {
    atoms_p.push_back(a);
    std::ostringstream name;
    name << "atom@" << a.pos;
    out.certificates.push_back({name.str(), "P", a.mass, entropy_sum(ClosedCircleSet::points({a.pos}), w)});
  }
  const auto& parts = mu.cantor_parts();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    auto ent = entropy_sum(ClosedCircleSet::cantor(p.piece), w);
    ComponentCertificate cert{"cantor#" + std::to_string(i), "", p.mass, ent};
    switch (ent.tag) {
      case SeriesTag::finite:
        cert.decision = "P";
        parts_p.push_back(p);
        break;
      case SeriesTag::diverges:
        cert.decision = "C";
        parts_c.push_back(p);
        break;
      case SeriesTag::undecided:
        cert.decision = "undecided";
        out.undecided_mass += p.mass;
        break;
    }
    out.certificates.push_back(std::move(cert));
  }
  auto layers = mu.layers();
  for (auto& l : layers) l.entry_mass.clear();
  out.mu_P = CircleMeasure(std::move(atoms_p), std::move(parts_p), layers);
  out.mu_C = CircleMeasure({}, std::move(parts_c), layers);
  if (mu.layer_count() > 0) {
    // Report the layered masses of undecided parts rather than base masses.
    out.undecided_mass = std::max(0.0, mu.total_mass() - out.mu_P.total_mass() - out.mu_C.total_mass());
  }
  return out;
}

}  // namespace gst
