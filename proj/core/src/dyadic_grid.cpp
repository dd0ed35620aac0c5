#include "gst/dyadic_grid.hpp"

#include "gst/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace gst {
namespace {

const std::vector<double> kLambdaCandidates{4.0, 2.0, 1.0, 0.5, 0.25, 0.125};

double neg_log_w(const Weight& w, int n) {
  return -w.log_from_log(-static_cast<double>(n) * std::log(2.0));
}

}  // namespace

double grid_eta(const Weight& w, double lambda, int n) { return lambda * neg_log_w(w, n); }

DyadicGrid build_grid(const Weight& w, int n0, double C, int k_max, std::optional<double> lambda) {
  if (!(C > 2.0)) throw ParameterError("grid ratio C must exceed 2");
  if (n0 < 1) throw ParameterError("n0 must be at least 1");
  if (k_max < 0) throw ParameterError("k_max must be nonnegative");
  if (!lambda) lambda = largest_majorant_lambda(w, kLambdaCandidates);
  if (!lambda || !(*lambda > 0.0)) throw Uncertified("no majorant exponent found for " + w.describe());

  DyadicGrid g;
  g.C = C;
  g.lambda = *lambda;
  const double eta0 = grid_eta(w, g.lambda, n0);
  if (!(eta0 > std::log(2.0))) {
    throw ParameterError("w^lambda(2^-n0) >= 1/2 at n0 = " + std::to_string(n0) +
                         "; choose a larger n0");
  }
  g.depths.push_back(n0);
  for (int k = 0; k < k_max; ++k) {
    const int cur = g.depths.back();
    const double target = C * grid_eta(w, g.lambda, cur);
    // eta is nondecreasing in n, so bracket by doubling and then bisect.
    long lo = cur;
    long hi = cur + 1;
    while (grid_eta(w, g.lambda, static_cast<int>(hi)) < target) {
      lo = hi;
      hi *= 2;
      if (hi > kGridDepthCap) {
        throw ConstructionFailed("next grid depth after " + std::to_string(cur) +
                                 " exceeds the scan cap " + std::to_string(kGridDepthCap));
      }
    }
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      if (grid_eta(w, g.lambda, static_cast<int>(mid)) >= target) hi = mid;
      else lo = mid;
    }
    const double ratio = grid_eta(w, g.lambda, static_cast<int>(hi)) / grid_eta(w, g.lambda, cur);
    if (!(ratio < 10.0 * C)) {
      throw ConstructionFailed("eta ratio " + std::to_string(ratio) + " >= 10C at depth " +
                               std::to_string(hi) +
                               ": the weight violates eta(t/2)/2 <= eta(t) <= eta(t/2)");
    }
    g.depths.push_back(static_cast<int>(hi));
  }
  return g;
}

GridVerification verify_grid(const DyadicGrid& g, const Weight& w) {
  GridVerification v;
  if (g.depths.empty()) throw ParameterError("empty grid");
  bool increasing = true;
  std::vector<double> eta;
  for (std::size_t k = 0; k < g.depths.size(); ++k) {
    if (k > 0 && g.depths[k] <= g.depths[k - 1]) increasing = false;
    eta.push_back(neg_log_w(w, g.depths[k]));
  }

  // w^beta(2^-n_k) <= w(2^-n_{k+1})  <=>  beta * eta_k >= eta_{k+1} (log space, lambda-free).
  double beta = 0.0;
  bool finite = true;
  bool window = true;
  bool geometric = true;
  bool superlacunary = true;
  double partial = 0.0;  // sum_{j<=k} log(1/w(2^-n_j))
  for (std::size_t k = 0; k + 1 < eta.size(); ++k) {
    partial += eta[k];
    const double ratio = eta[k + 1] / eta[k];
    v.ratios.push_back(ratio);
    if (!std::isfinite(ratio) || !(eta[k] > 0.0)) finite = false;
    else beta = std::max(beta, ratio);
    if (!(ratio >= g.C * (1.0 - 1e-12) && ratio < 10.0 * g.C)) window = false;
    if (partial > eta[k + 1] / (g.C - 1.0) * (1.0 + 1e-12)) geometric = false;
    // w(2^-n_{k+1}) <= prod_{j<=k} w(2^-n_j).
    if (eta[k + 1] < partial * (1.0 - 1e-12)) superlacunary = false;
  }
  v.beta = finite ? beta : std::numeric_limits<double>::infinity();
  v.is_w_grid = increasing && finite;
  v.superlacunary = increasing && superlacunary;
  v.ratio_window_ok = window;
  v.geometric_sum_ok = geometric;
  return v;
}

}  // namespace gst
