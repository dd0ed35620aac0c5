#pragma once

#include "gst/circle.hpp"
#include "gst/inner_outer.hpp"
#include "gst/weights.hpp"

#include <vector>

namespace gst {

struct WhitneyArc {
  Arc arc;
  int generation = 0;  // k in m(J) = m(I) 2^-(k+2)
  Arc gap;             // complementary arc I of E that J tiles
};

// Whitney arcs of the complement of E, each as long as its distance to the
// nearer endpoint of its gap. Arcs shorter than min_length are omitted, and
// so are gaps too short to hold one; omitted_length records what is missing.
struct WhitneyDecomposition {
  std::vector<WhitneyArc> arcs;
  double min_length = 0.0;
  double omitted_length = 0.0;
};

inline constexpr double kWhitneyMinLength = 0x1p-22;

WhitneyDecomposition whitney(const ClosedCircleSet& E, double min_length = kWhitneyMinLength);

// Complementary arcs of E of length >= min_length, in no particular order.
std::vector<Arc> gaps_at_least(const ClosedCircleSet& E, double min_length);

// G_E(z) = exp(-N sum_k psi_k(z)) with
// psi_k(z) = m(J_k) log(1/w(m(J_k))) xi_k / (rho_k xi_k - z), rho_k = 1 + m(J_k),
// xi_k the midpoint of J_k. The sum runs over the arcs of the truncated
// Whitney decomposition, so G_E is exactly the function evaluated here.
class CarlesonOuter {
public:
  CarlesonOuter(const ClosedCircleSet& E, const Weight& w, double N,
                double min_length = kWhitneyMinLength);

  // sum_k psi_k(z) for |z| <= 1.
  Complex psi_sum(Complex z) const;
  AnalyticValue eval(Complex z) const;
  // log|G_E(z)| = -N Re sum psi_k(z).
  double log_abs(Complex z) const { return -N_ * psi_sum(z).real(); }

  double N() const { return N_; }
  CarlesonOuter with_N(double N) const;
  const WhitneyDecomposition& whitney() const { return whitney_; }
  // sum_k m(J_k) log(1/w(m(J_k))).
  double entropy_ledger() const { return ledger_; }
  std::size_t terms() const { return xi_.size(); }

private:
  WhitneyDecomposition whitney_;
  std::vector<Complex> xi_;
  std::vector<double> rho_;
  std::vector<double> coef_;
  double N_ = 1.0;
  double ledger_ = 0.0;
};

// Refuses sets whose entropy_sum is not certified finite.
CarlesonOuter carleson_outer(const ClosedCircleSet& E, const Weight& w, double N,
                             double min_length = kWhitneyMinLength);

}  // namespace gst
