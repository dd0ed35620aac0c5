#pragma once

#include "gst/circle.hpp"
#include "gst/measure.hpp"
#include "gst/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gst {

enum class SeriesTag { finite, diverges, undecided };

std::string to_string(SeriesTag tag);

struct PartialSum {
  double terms = 0.0;  // number of terms (or generator levels) summed
  double value = 0.0;
};

// Entropy of a closed set as a tagged value. For finite results the true value
// lies in [lower, upper]; `value` is the best estimate. For divergent results
// `evidence` lists (checkpoint, remainder bound) pairs: each bound is a lower
// bound for the magnitude of the remainder after that many terms, and a
// remainder that does not shrink means the series cannot converge.
struct EntropyResult {
  SeriesTag tag = SeriesTag::finite;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<PartialSum> partial_sums;
  std::vector<PartialSum> evidence;
  std::optional<double> lambda;
  std::string note;
};

// sum_k m(I_k) log w(m(I_k)) over the complementary arcs.
EntropyResult entropy_sum(const ClosedCircleSet& E, const Weight& w);

// int log w(dist(zeta, E)) dm(zeta) = sum_k 2 int_0^{m(I_k)/2} log w(t) dt.
// quad_depth bounds the number of directly integrated generator levels
// (2^quad_depth) before tail certificates take over. Needs a lambda hint.
EntropyResult entropy_integral(const ClosedCircleSet& E, const Weight& w, int quad_depth = 14);

// Lower bound for inf_{0<x<=1} x log w(x) from the almost-decreasing
// property of w^lambda.
double gap_term_lower_bound(const Weight& w, double lambda);

struct ComponentCertificate {
  std::string component;   // "atom@x" or "cantor#i"
  std::string decision;    // "P", "C" or "undecided"
  double mass = 0.0;
  std::optional<EntropyResult> entropy;
};

struct Classification {
  CircleMeasure mu_P;
  CircleMeasure mu_C;
  std::vector<ComponentCertificate> certificates;
  double undecided_mass = 0.0;
};

Classification classify_measure(const CircleMeasure& mu, const Weight& w);

}  // namespace gst
