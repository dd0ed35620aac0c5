#include "gst/roberts.hpp"

#include "gst/error.hpp"
#include "gst/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace gst {
namespace {

// Appends a layer below the existing ones. Entry masses of the upper layers
// depend on everything beneath them, so they are recomputed.
CircleMeasure push_layer(const CircleMeasure& mu, MultiplierLayer layer) {
  auto layers = mu.layers();
  for (auto& l : layers) l.entry_mass.clear();
  layers.push_back(std::move(layer));
  return mu.with_layers(std::move(layers));
}

}  // namespace

double grating_threshold(int depth, double c, const Weight& w) {
  return c * std::ldexp(1.0, -depth) * -w.log_from_log(-depth * std::log(2.0));
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> GratingReport::heavy_runs() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> runs;
  for (std::uint64_t k : heavy) {
    if (!runs.empty() && runs.back().second + 1 == k) runs.back().second = k;
    else runs.emplace_back(k, k);
  }
  return runs;
}

GrateResult grate(const CircleMeasure& mu, int n, double c, const Weight& w, double eps) {
  if (!(c > 0.0)) throw ParameterError("grating constant c must be positive");
  if (n < 1 || n > 62) throw ParameterError("grating depth must lie in [1, 62]");
  if (mu.deepest_layer() >= n)
    throw ParameterError("grating depth must exceed the deepest existing layer");
  GrateResult out;
  GratingReport& rep = out.report;
  rep.depth = n;
  rep.threshold = grating_threshold(n, c, w);
  if (!(rep.threshold > 0.0) || !std::isfinite(rep.threshold))
    throw ParameterError("grating threshold must be positive and finite");
  rep.certified = mu.mass_of_arc({0.0, 1.0}, eps).certified;

  MultiplierLayer cap;
  cap.depth = n;
  cap.default_factor = 1.0;
  // Upper layers are constant on each depth-n arc, so the layered mass is the
  // base mass times the accumulated factor.
  for (const Cell& cell : mu.base().cells(n)) {
    const double nu = cell.mass * mu.factor_at(dyadic_start(cell.index, n));
    if (!(nu > 0.0)) continue;
    if (nu > rep.threshold) {
      rep.heavy.push_back(cell.index);
      rep.heavy_mass.push_back(nu);
      rep.heavy_base_mass.push_back(cell.mass);
      cap.index.push_back(cell.index);
      cap.factor.push_back(rep.threshold / nu);
      cap.entry_mass.push_back(cell.mass);
    } else {
      rep.light.push_back(cell.index);
      rep.light_mass += nu;
    }
  }
  out.mu_n = push_layer(mu, std::move(cap));
  return out;
}

RobertsDecomposition decompose(const CircleMeasure& mu, const DyadicGrid& grid, double c,
                               const Weight& w, int k_max, double eps) {
  if (k_max < 1) throw ParameterError("k_max must be at least 1");
  if (!(c > 0.0)) throw ParameterError("grating constant c must be positive");
  if (grid.depths.size() < static_cast<std::size_t>(k_max) + 1)
    throw ParameterError("grid has fewer than k_max + 1 depths");
  if (mu.layer_count() != 0) throw ParameterError("decompose expects a measure without layers");
  const GridVerification gv = verify_grid(grid, w);
  if (!gv.is_w_grid) throw ParameterError("grid depths are not a w-grid");

  RobertsDecomposition dec;
  dec.grid = grid;
  dec.c = c;
  dec.beta = gv.beta;
  dec.total_mass = mu.total_mass();
  dec.carrier_entropy_bound = gv.beta / c * dec.total_mass;

  CircleMeasure rem = mu;
  double pieces_mass = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    const int n = grid.depths[k];
    GrateResult g = grate(rem, n, c, w, eps);
    RobertsLevel level;
    level.report = std::move(g.report);
    const GratingReport& rep = level.report;
    dec.certified = dec.certified && rep.certified;
    level.piece_mass = g.mu_n.total_mass();
    pieces_mass += level.piece_mass;
    level.decay_lhs = static_cast<double>(rep.heavy.size()) * rep.threshold;
    if (level.decay_lhs > dec.total_mass * (1.0 + kHeavyBoundTolerance)) dec.decay_ok = false;

    const double h = std::ldexp(1.0, -n);
    std::vector<double> ratio(rep.heavy.size());
    const CircleMeasure& piece = g.mu_n;
    parallel_for(rep.heavy.size(), [&](std::size_t i) {
      const double a = static_cast<double>(rep.heavy[i]) * h;
      ratio[i] = piece.mass_between(a, a + h) / rep.threshold;
    });
    for (double r : ratio) level.max_heavy_ratio = std::max(level.max_heavy_ratio, r);
    if (level.max_heavy_ratio > 1.0 + kHeavyBoundTolerance) dec.heavy_bound_ok = false;

    if (k > 0) {
      const auto& prev = dec.levels.back().report;
      const int shift = n - prev.depth;
      for (std::uint64_t idx : rep.heavy) {
        if (!std::binary_search(prev.heavy.begin(), prev.heavy.end(), idx >> shift)) {
          dec.nested = false;
          break;
        }
      }
      const double inside = static_cast<double>(prev.heavy.size()) * std::ldexp(1.0, shift);
      const double light_count = inside - static_cast<double>(rep.heavy.size());
      level.light_ledger = light_count * h * -w.log_from_log(-n * std::log(2.0));
      dec.light_ledger_total += level.light_ledger;
    }

    MultiplierLayer keep;
    keep.depth = n;
    keep.default_factor = 0.0;
    keep.index = rep.heavy;
    keep.entry_mass = rep.heavy_base_mass;
    keep.factor.reserve(rep.heavy.size());
    for (double nu : rep.heavy_mass) keep.factor.push_back(std::max(0.0, 1.0 - rep.threshold / nu));
    rem = push_layer(rem, std::move(keep));
    dec.pieces.push_back(std::move(g.mu_n));
    dec.levels.push_back(std::move(level));
  }
  dec.residual = std::move(rem);
  dec.residual_mass = dec.residual.total_mass();
  dec.mass_defect = std::abs(dec.total_mass - pieces_mass - dec.residual_mass);

  const auto& last = dec.levels.back().report;
  std::vector<double> pts;
  for (const auto& a : dec.residual.effective_atoms()) pts.push_back(a.pos);
  if (!mu.cantor_parts().empty()) {
    dec.residual_carrier =
        mu.base().without_atoms().carrier().clipped(last.depth, last.heavy_runs());
    if (!pts.empty()) dec.residual_carrier = dec.residual_carrier.with_points(pts);
  } else if (!pts.empty()) {
    dec.residual_carrier = ClosedCircleSet::points(pts);
  } else {
    dec.residual_carrier = ClosedCircleSet::full_circle().clipped(0, {});
  }
  return dec;
}

}  // namespace gst
