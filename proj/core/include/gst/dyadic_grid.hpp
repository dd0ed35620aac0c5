#pragma once

#include "gst/weights.hpp"

#include <optional>
#include <vector>

namespace gst {

// Increasing dyadic depths n_0 < n_1 < ... adapted to a weight through
// eta(t) = lambda * log(1 / w(t)).
struct DyadicGrid {
  std::vector<int> depths;
  double C = 3.0;
  double lambda = 1.0;
};

// Largest depth build_grid will scan to before giving up.
inline constexpr int kGridDepthCap = 10'000'000;

// eta(2^-n) for the grid's weight and lambda.
double grid_eta(const Weight& w, double lambda, int n);

// Each next depth is the smallest n with eta(2^-n) / eta(2^-n_k) >= C.
// lambda defaults to the largest passing majorant exponent of w.
DyadicGrid build_grid(const Weight& w, int n0, double C, int k_max,
                      std::optional<double> lambda = std::nullopt);

struct GridVerification {
  bool is_w_grid = false;
  double beta = 0.0;  // smallest beta with w^beta(2^-n_k) <= w(2^-n_{k+1}) for all k
  bool superlacunary = false;
  bool ratio_window_ok = false;     // C <= consecutive eta ratio < 10 C
  bool geometric_sum_ok = false;    // sum_{j<=k} eta_j <= eta_{k+1} / (C - 1)
  std::vector<double> ratios;
};

GridVerification verify_grid(const DyadicGrid& g, const Weight& w);

}  // namespace gst
