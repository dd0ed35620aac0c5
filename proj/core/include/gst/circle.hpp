#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace gst {

// Circle coordinates are normalized arc length in [0, 1); the circle has
// total length 1.
double wrap01(double x);

// Circular distance between two coordinates.
double circle_distance(double x, double y);

struct Arc {
  double start = 0.0;
  double length = 0.0;

  double end() const { return start + length; }
  // Half-open membership [start, start + length) modulo 1.
  bool contains(double x) const;
  // Open membership (start, start + length) modulo 1, used for gaps.
  bool contains_open(double x) const;
  double midpoint() const { return wrap01(start + 0.5 * length); }
};

// Dyadic arc helpers: index k at depth d is [k 2^-d, (k+1) 2^-d).
inline double dyadic_start(std::uint64_t index, int depth) {
  return static_cast<double>(index) / static_cast<double>(std::uint64_t{1} << depth);
}
std::uint64_t dyadic_index(double x, int depth);

// Gap fractions r_n of a symmetric Cantor construction: level n removes the
// middle fraction r_n from each of its 2^{n-1} intervals.
struct CantorSchedule {
  double ratio = 1.0 / 3.0;
  // With a harmonic tail, levels 1..thin_levels use `ratio` and level n beyond
  // uses 1/(n+2).
  int thin_levels = 0;
  bool harmonic_tail = false;

  static CantorSchedule constant(double r);
  static CantorSchedule thin_then_harmonic(double r, int levels);

  double gap_fraction(long long n) const {
    if (!harmonic_tail || n <= thin_levels) return ratio;
    return 1.0 / static_cast<double>(n + 2);
  }
  // log of the level-n interval length relative to the hull.
  double log_length(long long n) const;
  bool geometric() const { return !harmonic_tail; }
  bool operator==(const CantorSchedule&) const = default;
};

struct CantorPiece {
  Arc hull;
  CantorSchedule schedule;
  bool operator==(const CantorPiece& o) const {
    return hull.start == o.hull.start && hull.length == o.hull.length && schedule == o.schedule;
  }
};

// Countable closed set {x_k} accumulating at the hull end, with consecutive
// gaps of length proportional to 1/(k log^2 k), k >= 2.
struct LogSquaredPiece {
  Arc hull;

  // Gap k is (position(k), position(k+1)).
  double gap_length(double k) const;
  double position(double k) const;
  // Hull length not yet covered by gaps 2..k-1, i.e. sum of gaps j >= k.
  double tail_length(double k) const;
  bool operator==(const LogSquaredPiece& o) const {
    return hull.start == o.hull.start && hull.length == o.hull.length;
  }
};

// Sum over k >= 2 of 1/(k log^2 k).
double log_squared_normalizer();
// Sum over j >= k of 1/(j log^2 j).
double log_squared_tail(double k);

// Closed Lebesgue-null subset of the circle given by its complement: finitely
// many explicit open gaps plus procedural pieces whose hulls are disjoint from
// the explicit gaps. An empty description is the full circle.
//
// A set may additionally be clipped to a finite union of closed dyadic arcs and
// augmented with finitely many points. Clipped sets only support entropy
// certificates and membership queries.
class ClosedCircleSet {
public:
  ClosedCircleSet() = default;
  ClosedCircleSet(std::vector<Arc> gaps, std::vector<CantorPiece> cantor = {},
                  std::vector<LogSquaredPiece> sequences = {});

  static ClosedCircleSet full_circle() { return {}; }
  static ClosedCircleSet points(std::vector<double> xs);
  static ClosedCircleSet cantor(const CantorPiece& piece);
  static ClosedCircleSet log_squared(const Arc& hull);

  bool is_full_circle() const {
    return gaps_.empty() && cantor_.empty() && sequences_.empty() && !clip_ && extra_points_.empty();
  }
  const std::vector<Arc>& gaps() const { return gaps_; }
  const std::vector<CantorPiece>& cantor_pieces() const { return cantor_; }
  const std::vector<LogSquaredPiece>& sequence_pieces() const { return sequences_; }
  bool has_procedural_gaps() const { return !cantor_.empty() || !sequences_.empty(); }

  struct Clip {
    int depth = 0;
    // Inclusive index runs [first, last] of closed dyadic arcs.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> runs;
  };
  const std::optional<Clip>& clip() const { return clip_; }
  const std::vector<double>& extra_points() const { return extra_points_; }

  // E intersected with a union of closed dyadic arcs.
  ClosedCircleSet clipped(int depth,
                          std::vector<std::pair<std::uint64_t, std::uint64_t>> runs) const;
  // E together with finitely many extra points.
  ClosedCircleSet with_points(std::vector<double> xs) const;

  // Number of connected components of the circle minus the clip arcs.
  std::size_t clip_complement_components() const;

  bool contains(double x) const;
  // Complementary gap containing x, or nullopt when x lies in E up to
  // floating resolution.
  std::optional<Arc> gap_containing(double x) const;
  double distance(double x) const;
  double total_gap_length() const;

private:
  std::vector<Arc> gaps_;
  std::vector<CantorPiece> cantor_;
  std::vector<LogSquaredPiece> sequences_;
  std::optional<Clip> clip_;
  std::vector<double> extra_points_;
};

// Union of two sets whose procedural hulls each sit inside an explicit gap of
// the other set (or coincide with an identical piece).
ClosedCircleSet unite(const ClosedCircleSet& a, const ClosedCircleSet& b);

}  // namespace gst
