#include "gst/circle.hpp"

#include "gst/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gst {

namespace {

constexpr double kLengthTol = 1e-12;
// Cylinders shorter than this are treated as points when resolving gaps.
constexpr double kResolution = 1e-17;
constexpr long long kMaxLevels = 4000;

// Euler-Maclaurin cutoff for the log-squared tail sums.
constexpr int kDirectTerms = 10000;

double f_log_sq(double x) {
  const double l = std::log(x);
  return 1.0 / (x * l * l);
}

double tail_asymptotic(double k) {
  // sum_{j>=k} f(j) = int_k^inf f + f(k)/2 - f'(k)/12 + O(f'''(k)).
  const double l = std::log(k);
  const double fp = -(l + 2.0) / (k * k * l * l * l);
  return 1.0 / l + 0.5 * f_log_sq(k) - fp / 12.0;
}

struct DirectTail {
  // suffix[i] = sum_{j = i + 2}^{kDirectTerms - 1} f(j) + asymptotic tail.
  std::vector<double> suffix;
  DirectTail() : suffix(kDirectTerms - 1, 0.0) {
    double acc = tail_asymptotic(kDirectTerms);
    for (int j = kDirectTerms - 1; j >= 2; --j) {
      acc += f_log_sq(j);
      suffix[j - 2] = acc;
    }
  }
};

const DirectTail& direct_tail() {
  static const DirectTail t;
  return t;
}

void validate_arc(const Arc& a, const char* what) {
  if (!std::isfinite(a.start) || !std::isfinite(a.length) || a.start < 0.0 || a.start >= 1.0)
    throw ParameterError(std::string(what) + ": start must lie in [0, 1)");
  if (!(a.length > 0.0) || a.length > 1.0 + kLengthTol)
    throw ParameterError(std::string(what) + ": length must lie in (0, 1]");
}

// Open arc (s, s+L) as one or two linear open intervals on [0, 1].
void to_linear(const Arc& a, std::vector<std::pair<double, double>>& out) {
  const double e = a.start + a.length;
  if (e <= 1.0) {
    out.emplace_back(a.start, e);
  } else {
    out.emplace_back(a.start, 1.0);
    out.emplace_back(0.0, e - 1.0);
  }
}

std::optional<Arc> cantor_gap(const CantorPiece& p, double x) {
  const double a = p.hull.start;
  double lo = 0.0;
  double len = p.hull.length;
  const double pos = x - a;
  if (pos < 0.0 || pos > len) return std::nullopt;
  for (long long n = 1; n <= kMaxLevels; ++n) {
    const double r = p.schedule.gap_fraction(n);
    const double child = 0.5 * len * (1.0 - r);
    if (len * r < kResolution) return std::nullopt;
    const double g0 = lo + child;
    const double g1 = lo + len - child;
    if (pos > g0 && pos < g1) return Arc{a + g0, g1 - g0};
    if (pos == g0 || pos == g1) return std::nullopt;
    if (pos > g1) lo = g1;
    len = child;
  }
  return std::nullopt;
}

std::optional<Arc> sequence_gap(const LogSquaredPiece& p, double x) {
  const double a = p.hull.start;
  const double end = a + p.hull.length;
  if (x <= a || x >= end) return std::nullopt;
  // Largest k with position(k) <= x by exponential then binary search.
  double lo = 2.0;
  double hi = 4.0;
  while (p.position(hi) <= x) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) return std::nullopt;
  }
  while (hi - lo > 1.0) {
    const double mid = std::floor(0.5 * (lo + hi));
    if (p.position(mid) <= x) lo = mid;
    else hi = mid;
  }
  const double s = p.position(lo);
  const double e = p.position(lo + 1.0);
  if (x == s || !(e > s)) return std::nullopt;
  return Arc{s, e - s};
}

}  // namespace

double wrap01(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

double circle_distance(double x, double y) {
  const double d = wrap01(x - y);
  return std::min(d, 1.0 - d);
}

bool Arc::contains(double x) const {
  if (length >= 1.0) return true;
  return wrap01(x - start) < length;
}

bool Arc::contains_open(double x) const {
  const double d = wrap01(x - start);
  if (length >= 1.0) return d > 0.0;
  return d > 0.0 && d < length;
}

std::uint64_t dyadic_index(double x, int depth) {
  const double scale = std::ldexp(1.0, depth);
  const auto n = std::uint64_t{1} << depth;
  const auto k = static_cast<std::uint64_t>(std::floor(wrap01(x) * scale));
  return std::min(k, n - 1);
}

CantorSchedule CantorSchedule::constant(double r) {
  if (!(r > 0.0 && r < 1.0)) throw ParameterError("Cantor gap ratio must lie in (0, 1)");
  CantorSchedule s;
  s.ratio = r;
  return s;
}

CantorSchedule CantorSchedule::thin_then_harmonic(double r, int levels) {
  if (!(r > 0.0 && r < 1.0)) throw ParameterError("Cantor gap ratio must lie in (0, 1)");
  if (levels < 0) throw ParameterError("thin level count must be nonnegative");
  CantorSchedule s;
  s.ratio = r;
  s.thin_levels = levels;
  s.harmonic_tail = true;
  return s;
}

double CantorSchedule::log_length(long long n) const {
  const double thin = std::log(0.5 * (1.0 - ratio));
  if (!harmonic_tail || n <= thin_levels) return static_cast<double>(n) * thin;
  // prod_{j=s+1}^n (1 - 1/(j+2))/2 = ((s+2)/(n+2)) 2^{-(n-s)}
  const double s = thin_levels;
  const double nn = static_cast<double>(n);
  return s * thin + std::log((s + 2.0) / (nn + 2.0)) - (nn - s) * std::numbers::ln2;
}

double log_squared_tail(double k) {
  if (k < 2.0) k = 2.0;
  k = std::floor(k);
  if (k < kDirectTerms) return direct_tail().suffix[static_cast<std::size_t>(k) - 2];
  return tail_asymptotic(k);
}

double log_squared_normalizer() { return log_squared_tail(2.0); }

double LogSquaredPiece::gap_length(double k) const {
  return hull.length * f_log_sq(k) / log_squared_normalizer();
}

double LogSquaredPiece::tail_length(double k) const {
  return hull.length * log_squared_tail(k) / log_squared_normalizer();
}

double LogSquaredPiece::position(double k) const {
  return hull.start + hull.length - tail_length(k);
}

ClosedCircleSet::ClosedCircleSet(std::vector<Arc> gaps, std::vector<CantorPiece> cantor,
                                 std::vector<LogSquaredPiece> sequences)
    : gaps_(std::move(gaps)), cantor_(std::move(cantor)), sequences_(std::move(sequences)) {
  double total = 0.0;
  std::vector<std::pair<double, double>> spans;
  for (const auto& g : gaps_) {
    validate_arc(g, "gap");
    total += g.length;
    to_linear(g, spans);
  }
  auto add_hull = [&](const Arc& h) {
    validate_arc(h, "hull");
    if (h.start + h.length > 1.0 + kLengthTol) throw ParameterError("procedural hull must not wrap");
    total += h.length;
    spans.emplace_back(h.start, h.start + h.length);
  };
  for (const auto& c : cantor_) {
    if (!(c.schedule.ratio > 0.0 && c.schedule.ratio < 1.0))
      throw ParameterError("Cantor gap ratio must lie in (0, 1)");
    add_hull(c.hull);
  }
  for (const auto& s : sequences_) add_hull(s.hull);
  if (gaps_.empty() && cantor_.empty() && sequences_.empty()) return;
  if (std::abs(total - 1.0) > kLengthTol)
    throw ParameterError("gap lengths must sum to 1 for a Lebesgue-null set");
  std::sort(spans.begin(), spans.end());
  for (std::size_t i = 1; i < spans.size(); ++i)
    if (spans[i].first < spans[i - 1].second - kLengthTol)
      throw ParameterError("gaps and hulls must be pairwise disjoint");
  std::sort(gaps_.begin(), gaps_.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
}

ClosedCircleSet ClosedCircleSet::points(std::vector<double> xs) {
  if (xs.empty()) throw ParameterError("point set needs at least one point");
  for (double& x : xs) {
    if (!std::isfinite(x)) throw ParameterError("point coordinate must be finite");
    x = wrap01(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Arc> gaps;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double next = i + 1 < xs.size() ? xs[i + 1] : xs[0] + 1.0;
    gaps.push_back({xs[i], next - xs[i]});
  }
  return ClosedCircleSet(std::move(gaps));
}

ClosedCircleSet ClosedCircleSet::cantor(const CantorPiece& piece) {
  std::vector<Arc> gaps;
  if (piece.hull.length < 1.0 - kLengthTol)
    gaps.push_back({wrap01(piece.hull.end()), 1.0 - piece.hull.length});
  return ClosedCircleSet(std::move(gaps), {piece});
}

ClosedCircleSet ClosedCircleSet::log_squared(const Arc& hull) {
  std::vector<Arc> gaps;
  if (hull.length < 1.0 - kLengthTol) gaps.push_back({wrap01(hull.end()), 1.0 - hull.length});
  return ClosedCircleSet(std::move(gaps), {}, {LogSquaredPiece{hull}});
}

ClosedCircleSet ClosedCircleSet::clipped(
    int depth, std::vector<std::pair<std::uint64_t, std::uint64_t>> runs) const {
  if (depth < 0 || depth > 62) throw ParameterError("clip depth out of range");
  if (clip_) throw ParameterError("set is already clipped");
  std::sort(runs.begin(), runs.end());
  ClosedCircleSet out = *this;
  out.clip_ = Clip{depth, std::move(runs)};
  return out;
}

ClosedCircleSet ClosedCircleSet::with_points(std::vector<double> xs) const {
  ClosedCircleSet out = *this;
  for (double x : xs) out.extra_points_.push_back(wrap01(x));
  std::sort(out.extra_points_.begin(), out.extra_points_.end());
  out.extra_points_.erase(std::unique(out.extra_points_.begin(), out.extra_points_.end()),
                          out.extra_points_.end());
  return out;
}

std::size_t ClosedCircleSet::clip_complement_components() const {
  if (!clip_) return 0;
  const auto& runs = clip_->runs;
  if (runs.empty()) return 1;
  const std::uint64_t n = std::uint64_t{1} << clip_->depth;
  // Merge touching runs; closed arcs sharing an endpoint leave no gap.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> merged;
  for (const auto& r : runs) {
    if (!merged.empty() && r.first <= merged.back().second + 1)
      merged.back().second = std::max(merged.back().second, r.second);
    else merged.push_back(r);
  }
  if (merged.size() == 1 && merged[0].first == 0 && merged[0].second + 1 >= n) return 0;
  std::size_t comps = merged.size();
  if (merged.front().first == 0 && merged.back().second + 1 >= n && comps > 1) --comps;
  return comps;
}

bool ClosedCircleSet::contains(double x) const {
  x = wrap01(x);
  for (double p : extra_points_)
    if (p == x) return true;
  if (clip_) {
    const std::uint64_t k = dyadic_index(x, clip_->depth);
    const std::uint64_t n = std::uint64_t{1} << clip_->depth;
    // Closed arcs: a point on the left edge of cell k also touches cell k-1.
    const bool edge = dyadic_start(k, clip_->depth) == x;
    const std::uint64_t prev = (k + n - 1) % n;
    bool in_clip = false;
    for (const auto& r : clip_->runs) {
      if ((k >= r.first && k <= r.second) || (edge && prev >= r.first && prev <= r.second)) {
        in_clip = true;
        break;
      }
    }
    if (!in_clip) return false;
  }
  if (gaps_.empty() && cantor_.empty() && sequences_.empty()) return true;
  return !gap_containing(x).has_value();
}

std::optional<Arc> ClosedCircleSet::gap_containing(double x) const {
  if (clip_) throw ParameterError("gap lookup is not available on clipped sets");
  x = wrap01(x);
  std::optional<Arc> found;
  for (const auto& g : gaps_)
    if (g.contains_open(x)) {
      found = g;
      break;
    }
  if (!found) {
    for (const auto& c : cantor_)
      if (auto g = cantor_gap(c, x)) {
        found = g;
        break;
      }
  }
  if (!found) {
    for (const auto& s : sequences_)
      if (auto g = sequence_gap(s, x)) {
        found = g;
        break;
      }
  }
  if (!found) {
    if (gaps_.empty() && cantor_.empty() && sequences_.empty() && !extra_points_.empty())
      found = Arc{0.0, 1.0};
    else return std::nullopt;
  }
  // Extra points split the gap.
  if (!extra_points_.empty()) {
    const bool whole = found->length >= 1.0;
    double lo = whole ? -1.0 : 0.0;
    double hi = found->length;
    double first_pos = 2.0;
    for (double p : extra_points_) {
      double d = wrap01(p - found->start);
      if (whole) {
        first_pos = std::min(first_pos, d);
        continue;
      }
      if (d > 0.0 && d < found->length) {
        const double rel = wrap01(x - found->start);
        if (d < rel) lo = std::max(lo, d);
        else if (d > rel) hi = std::min(hi, d);
        else return std::nullopt;
      }
    }
    if (whole) {
      // Only extra points: gaps run between consecutive points.
      std::vector<double> pts = extra_points_;
      std::optional<Arc> g;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const double next = i + 1 < pts.size() ? pts[i + 1] : pts[0] + 1.0;
        Arc a{pts[i], next - pts[i]};
        if (a.contains_open(x)) g = a;
      }
      return g;
    }
    return Arc{wrap01(found->start + lo), hi - lo};
  }
  return found;
}

double ClosedCircleSet::distance(double x) const {
  if (is_full_circle()) return 0.0;
  const auto g = gap_containing(x);
  if (!g) return 0.0;
  const double d = wrap01(x - g->start);
  return std::min(d, g->length - d);
}

double ClosedCircleSet::total_gap_length() const {
  if (is_full_circle()) return 0.0;
  return 1.0;
}

ClosedCircleSet unite(const ClosedCircleSet& a, const ClosedCircleSet& b) {
  if (a.clip() || b.clip()) throw ParameterError("union of clipped sets is not supported");
  if (a.is_full_circle() || b.is_full_circle()) return ClosedCircleSet::full_circle();

  auto inside_gap = [](const Arc& hull, const ClosedCircleSet& other) {
    for (const auto& g : other.gaps()) {
      const double off = wrap01(hull.start - g.start);
      if (off > 0.0 && off + hull.length < g.length) return true;
    }
    return false;
  };
  std::vector<CantorPiece> cantor = a.cantor_pieces();
  std::vector<LogSquaredPiece> seq = a.sequence_pieces();
  for (const auto& c : a.cantor_pieces()) {
    const auto& oc = b.cantor_pieces();
    if (std::find(oc.begin(), oc.end(), c) == oc.end() && !inside_gap(c.hull, b))
      throw ParameterError("Cantor hull overlaps the other set");
  }
  for (const auto& s : a.sequence_pieces()) {
    const auto& os = b.sequence_pieces();
    if (std::find(os.begin(), os.end(), s) == os.end() && !inside_gap(s.hull, b))
      throw ParameterError("sequence hull overlaps the other set");
  }
  for (const auto& c : b.cantor_pieces()) {
    if (std::find(cantor.begin(), cantor.end(), c) != cantor.end()) continue;
    if (!inside_gap(c.hull, a)) throw ParameterError("Cantor hull overlaps the other set");
    cantor.push_back(c);
  }
  for (const auto& s : b.sequence_pieces()) {
    if (std::find(seq.begin(), seq.end(), s) != seq.end()) continue;
    if (!inside_gap(s.hull, a)) throw ParameterError("sequence hull overlaps the other set");
    seq.push_back(s);
  }

  // Explicit gaps of the union: intersection of the two open gap families.
  std::vector<std::pair<double, double>> la, lb;
  for (const auto& g : a.gaps()) to_linear(g, la);
  for (const auto& g : b.gaps()) to_linear(g, lb);
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  std::vector<std::pair<double, double>> meet;
  std::size_t i = 0, j = 0;
  while (i < la.size() && j < lb.size()) {
    const double lo = std::max(la[i].first, lb[j].first);
    const double hi = std::min(la[i].second, lb[j].second);
    if (hi > lo) meet.emplace_back(lo, hi);
    if (la[i].second < lb[j].second) ++i;
    else ++j;
  }
  std::vector<Arc> gaps;
  for (const auto& [lo, hi] : meet) gaps.push_back({lo, hi - lo});
  const bool zero_open = !a.contains(0.0) && !b.contains(0.0);
  if (zero_open && gaps.size() >= 2 && gaps.front().start == 0.0 &&
      gaps.back().start + gaps.back().length == 1.0) {
    gaps.back().length += gaps.front().length;
    gaps.erase(gaps.begin());
  }
  for (auto& g : gaps) g.start = wrap01(g.start);
  return ClosedCircleSet(std::move(gaps), std::move(cantor), std::move(seq));
}

}  // namespace gst
