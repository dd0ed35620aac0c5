#pragma once

#include "gst/circle.hpp"
#include "gst/dyadic_grid.hpp"
#include "gst/measure.hpp"
#include "gst/weights.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace gst {

// c 2^-n log(1/w(2^-n)).
double grating_threshold(int depth, double c, const Weight& w);

// Classification of the depth-n dyadic arcs of a measure. Arcs of zero mass
// are light and are counted but not listed.
struct GratingReport {
  int depth = 0;
  double threshold = 0.0;
  std::vector<std::uint64_t> heavy;      // sorted arc indices
  std::vector<double> heavy_mass;        // mass of each heavy arc before grating
  std::vector<double> heavy_base_mass;   // same arcs under the unlayered base measure
  std::vector<std::uint64_t> light;      // light arcs of positive mass
  double light_mass = 0.0;
  bool certified = true;

  std::vector<std::pair<std::uint64_t, std::uint64_t>> heavy_runs() const;
};

struct GrateResult {
  CircleMeasure mu_n;
  GratingReport report;
};

// Caps every depth-n arc at the threshold: heavy arcs are rescaled to carry
// exactly the threshold, light arcs (mass <= threshold) are kept.
GrateResult grate(const CircleMeasure& mu, int n, double c, const Weight& w, double eps = 1e-12);

struct RobertsLevel {
  GratingReport report;
  double piece_mass = 0.0;
  // Dyadic arcs of depth n_k inside H_{k-1} that are light, weighted by
  // m(J) log(1/w(m(J))); zero at k = 0.
  double light_ledger = 0.0;
  // #heavy * threshold, which must not exceed mu(circle).
  double decay_lhs = 0.0;
  // Largest mu_k(I) / threshold over heavy arcs I, by direct mass query.
  double max_heavy_ratio = 0.0;
};

struct RobertsDecomposition {
  std::vector<CircleMeasure> pieces;
  CircleMeasure residual;
  std::vector<RobertsLevel> levels;
  DyadicGrid grid;
  double c = 0.0;
  double beta = 0.0;
  double total_mass = 0.0;
  double residual_mass = 0.0;
  double mass_defect = 0.0;  // |mu - sum mu_k - mu_inf| on the whole circle
  double carrier_entropy_bound = 0.0;
  double light_ledger_total = 0.0;
  bool nested = true;
  bool heavy_bound_ok = true;
  bool decay_ok = true;
  bool certified = true;
  // Base carrier clipped to the last heavy set, plus surviving atoms.
  ClosedCircleSet residual_carrier;
};

// Relative slack allowed when re-measuring a heavy arc against its threshold.
inline constexpr double kHeavyBoundTolerance = 1e-12;

// mu_0 = grate(mu, n_0), mu_k = grate(mu - sum_{j<k} mu_j, n_k) for k <= k_max.
RobertsDecomposition decompose(const CircleMeasure& mu, const DyadicGrid& grid, double c,
                               const Weight& w, int k_max, double eps = 1e-12);

}  // namespace gst
