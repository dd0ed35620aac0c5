#pragma once

#include "gst/circle.hpp"
#include "gst/measure.hpp"
#include "gst/weights.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace gst {

using Complex = std::complex<double>;

// Value with a certified radius: the true value lies within err of value.
struct AnalyticValue {
  Complex value;
  double err = 0.0;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

// Unimodular point for a normalized circle coordinate.
Complex circle_point(double x);

struct BlaschkeSeq {
  std::vector<Complex> zeros;
  double rotation = 0.0;  // phase gamma, in radians
};

AnalyticValue eval_blaschke(const BlaschkeSeq& B, Complex z);

// Evaluator for S_mu. Atoms are summed in closed form; the rest of the
// measure is held as a pyramid of dyadic cell masses down to `depth`, which
// defaults to the deepest layer or base_depth, whichever is larger.
class SingularInner {
public:
  static constexpr int kBaseDepth = 24;

  explicit SingularInner(const CircleMeasure& mu, int base_depth = kBaseDepth);

  // S_mu(z) for |z| < 1, refined until the kernel variation bound over the
  // accepted cells is below eps (or cells reach the pyramid depth).
  AnalyticValue eval(Complex z, double eps = 1e-12) const;

  // Certified bounds on the Poisson integral int P(zeta, z) dmu, so that
  // log|S_mu(z)| lies in [-upper, -lower]. Cells are refined while their
  // kernel range exceeds rel_tol of their lower contribution.
  Interval poisson(Complex z, double rel_tol = 0.02) const;
  // Same with z = (1 - one_minus_r) e^{2 pi i x}, which keeps 1 - |z| exact
  // near the circle.
  Interval poisson_polar(double one_minus_r, double x, double rel_tol = 0.02) const;

  // Midpoints of the heaviest nonzero cells at the given pyramid depth.
  std::vector<double> heaviest_cells(int depth, std::size_t count) const;

  double total_mass() const { return atom_mass_ + continuous_mass_; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<Atom>& atoms() const { return atoms_; }

private:
  struct Level {
    std::vector<std::uint64_t> index;
    std::vector<double> mass;
    std::vector<std::uint32_t> child_begin;  // into the next level; size() + 1 entries
  };

  std::vector<Atom> atoms_;
  double atom_mass_ = 0.0;
  double continuous_mass_ = 0.0;
  std::vector<Level> levels_;
};

AnalyticValue eval_singular_inner(const CircleMeasure& mu, Complex z, double eps = 1e-12);

// Piecewise constant log|f| on the circle; zero off the listed arcs.
struct BoundaryLogModulus {
  std::vector<std::pair<Arc, double>> pieces;
};

// Outer function with boundary modulus exp(log_modulus). The Herglotz
// integral of each constant piece is evaluated in closed form.
AnalyticValue eval_outer(const BoundaryLogModulus& log_modulus, Complex z);

struct GrowthEstimate {
  double sup_estimate = 0.0;
  Complex argmax;
  std::size_t samples = 0;
};

// max w(1-|z|) |f(z)| over z = 0 and radii 1 - 2^-j (j = 1..J) with 2^(j+3)
// equally spaced angles each. A lower bound for the growth norm.
GrowthEstimate growth_norm_estimate(const std::function<Complex(Complex)>& f, const Weight& w,
                                    int J);

struct MomentCheck {
  double sup = 0.0;
  double bound = 0.0;
  bool ok = false;
};

// sup_r w(1-r) r^n against 3 w(1/n).
MomentCheck moment_check(const Weight& w, int n);

struct LowerBoundCheck {
  double min_margin = 0.0;
  Complex worst;
  std::size_t samples = 0;
  bool ok = false;
};

// margin(z) = log|S_nu(z)| + 6 omega_nu(1-|z|)/(1-|z|), using the certified
// lower bound for log|S| and the certified upper modulus.
LowerBoundCheck lower_bound_check(const CircleMeasure& nu, const std::vector<Complex>& samples,
                                  double eps);

// Radii 1 - 2^-j (j = 1..radial) times `angular` equally spaced angles.
std::vector<Complex> radial_angular_samples(int radial, int angular);

struct CoronaCheck {
  double min_combined = 0.0;
  double bound = 0.0;
  Complex worst;
  std::size_t samples = 0;
  bool ok = false;
};

// inf |S_mu(z)| + |z|^(2^n) >= w(2^-n)^(12c), sampled on two zones: inside
// |z| <= 1 - 2^-n at dyadic radii and grid_density angles plus the heaviest
// cells; outside, where |z|^(2^n) >= 1/4, at a few radii only.
CoronaCheck corona_datum_check(const CircleMeasure& mu_k, int n_k, double c, const Weight& w,
                               int grid_density);

}  // namespace gst
