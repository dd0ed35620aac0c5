#pragma once

#include "gst/carleson.hpp"
#include "gst/circle.hpp"
#include "gst/inner_outer.hpp"
#include "gst/weights.hpp"

#include <vector>

namespace gst {

// Star domain {r zeta : 0 <= r < 1 - h(zeta)} with the quadratic profile
// h = ((t - a)(b - t) / (b - a))^2 / 2 on each gap (a, b) of E and h = 0 on E,
// in normalized arc length. h never exceeds 1/32.
class PrivalovDomain {
public:
  explicit PrivalovDomain(ClosedCircleSet E);

  double h(double x) const;
  bool contains(Complex z) const;
  // gamma_E(x) = e^{2 pi i x} (1 - h(x)).
  Complex boundary_point(double x) const;
  const ClosedCircleSet& set() const { return E_; }

private:
  ClosedCircleSet E_;
};

// Only gaps at least this long carry boundary samples.
inline constexpr double kPrivalovMinGap = 0x1p-14;
// Closest approach of a boundary sample to E; keeps h above ~1e-12 so samples
// stay strictly inside the disc in double precision.
inline constexpr double kPrivalovMinDistance = 0x1p-19;

struct BoundarySample {
  double x = 0.0;  // circle coordinate of zeta
  double h = 0.0;  // 1 - |z|
  Complex z;
};

// The midpoint of the longest gap first, then per gap a share proportional
// to its length, half spread uniformly and half geometrically toward the
// endpoints.
std::vector<BoundarySample> boundary_samples(const PrivalovDomain& D, int count);

struct BoundaryEstimate {
  double max_ratio = 0.0;  // max |G_E(z)| / w(1 - |z|)
  Complex worst;
  std::size_t samples = 0;
  bool ok = false;
};

BoundaryEstimate privalov_boundary_estimate(const PrivalovDomain& D, const CarlesonOuter& G,
                                            const Weight& w, int count);

struct AutoCarleson {
  CarlesonOuter G;
  BoundaryEstimate estimate;
  int doublings = 0;
};

// Smallest N = 2^j, j = 0..20, for which the boundary estimate passes; the
// last candidate is returned with ok = false when none does. log|G_E| is
// linear in N, so the sum over Whitney arcs is evaluated once per sample.
AutoCarleson auto_carleson(const PrivalovDomain& D, const Weight& w, int count,
                           double min_length = kWhitneyMinLength);

struct EmbeddingCheck {
  double max_lhs = 0.0;     // max |G_E Q| over the samples of the domain
  double norm_estimate = 0.0;
  std::size_t samples = 0;
  bool ok = false;
};

// |G_E Q| <= ||Q||_{G_w} on interior and boundary samples of the domain. The
// right side is the growth estimate of Q on a grid denser than the samples,
// raised by w(1-|z|)|Q(z)| at the samples themselves (each is also a lower
// bound for the norm).
EmbeddingCheck embedding_check(const PrivalovDomain& D, const CarlesonOuter& G,
                               const std::vector<Complex>& Q, const Weight& w, int count);

// One check per polynomial, sharing the sample points and the values of G_E.
std::vector<EmbeddingCheck> embedding_check(const PrivalovDomain& D, const CarlesonOuter& G,
                                            const std::vector<std::vector<Complex>>& polys,
                                            const Weight& w, int count);

Complex eval_polynomial(const std::vector<Complex>& coef, Complex z);

}  // namespace gst
