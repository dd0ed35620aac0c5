#pragma once

#include "gst/entropy.hpp"
#include "gst/inner_outer.hpp"
#include "gst/measure.hpp"
#include "gst/weights.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gst {

enum class FunctionClass { polynomial, rational, atomic_inner, product, closed_form };

std::string to_string(FunctionClass kind);

// Analytic function on the disc with its derivative. Boundary values are
// available except at the listed singular points (normalized coordinates).
struct DiscFunction {
  FunctionClass kind = FunctionClass::closed_form;
  std::function<AnalyticValue(Complex)> value;
  std::function<AnalyticValue(Complex)> derivative;
  std::vector<double> boundary_singularities;
  std::string label;

  AnalyticValue operator()(Complex z) const { return value(z); }

  static DiscFunction polynomial(std::vector<Complex> coef);
  static DiscFunction blaschke(BlaschkeSeq B);
  // S_mu for a purely atomic mu, in closed form up to the circle.
  static DiscFunction atomic_inner(std::vector<Atom> atoms);
  static DiscFunction closed_form(std::string label, std::function<Complex(Complex)> f,
                                  std::function<Complex(Complex)> df,
                                  std::vector<double> boundary_singularities = {});

  DiscFunction operator*(const DiscFunction& other) const;
};

struct FwNorm {
  SeriesTag tag = SeriesTag::undecided;
  double value = 0.0;       // |f(0)| + integral; partial value unless finite
  double at_origin = 0.0;
  double tail_bound = 0.0;  // extrapolated remainder beyond the last annulus
  std::vector<double> annuli;
};

// |f(0)| + int |f'| / w(1 - |z|) dA with dA normalized to mass 1. Annulus j
// covers 1 - 2^-j <= |z| <= 1 - 2^-(j+1) for j = 0..quad_depth-1, each with
// 20 Gauss radii and uniform angles. The tag is finite when the last annulus
// ratios stay below 0.9, diverges when contributions stop decaying.
FwNorm fw_norm(const DiscFunction& f, const Weight& w, int quad_depth = 48);

// Coefficient pairing sum a_n conj(b_n).
Complex cauchy_pairing(const std::vector<Complex>& g, const std::vector<Complex>& f);

// Mean of g(r zeta) conj(f(r zeta)) over n uniform nodes.
Complex boundary_pairing(const DiscFunction& g, const DiscFunction& f, double r, int nodes);

// Limit r -> 1 of boundary_pairing by Richardson extrapolation from
// r = 1 - 2^-12, 1 - 2^-13, 1 - 2^-14.
Complex limit_pairing(const DiscFunction& g, const DiscFunction& f, int nodes);

struct GreenIdentity {
  Complex lhs;
  Complex rhs;
  Complex exact;  // coefficient form shared by both sides
  double oracle_error = 0.0;
  bool ok = false;
};

// lhs = mean of g(r zeta) conj f(r zeta) on the circle;
// rhs = g(0) conj f(0) + int g(rz) conj(f(rz) - f(0) + rz f'(rz)) dA(z).
GreenIdentity green_identity_check(const std::vector<Complex>& g, const std::vector<Complex>& f,
                                   double r);

struct ModelKernelSpec {
  DiscFunction theta;
  Complex lambda;
};

// kappa(z, lambda) = (1 - conj(Theta(lambda)) Theta(z)) / (1 - conj(lambda) z).
AnalyticValue model_kernel(const ModelKernelSpec& spec, Complex z);

struct QuadratureCheck {
  Complex lhs;
  Complex rhs;
  double error = 0.0;
  double scale = 1.0;  // product of the kernel norms
  std::size_t nodes = 0;
  std::size_t skipped = 0;  // nodes on a boundary singularity
  bool ok = false;
};

// Boundary mean of kappa(., lambda) conj kappa(., lambda2) against
// kappa(lambda2, lambda). Nodes are uniform midpoints when Theta has no
// boundary singularities and graded toward them otherwise (about n in total).
QuadratureCheck kernel_reproducing_check(const ModelKernelSpec& spec, Complex lambda2,
                                         int boundary_n, double tol = 1e-6);

// Pairing of kappa_P(., lambda) with Theta_P kappa_C(., lambda2), expected 0.
QuadratureCheck orthogonal_decomposition_check(const DiscFunction& theta_p,
                                               const DiscFunction& theta_c, Complex lambda,
                                               Complex lambda2, int boundary_n,
                                               double tol = 1e-5);

struct AwEstimate {
  double value = 0.0;
  double sup = 0.0;
  double seminorm = 0.0;
  double witness_x = 0.0;
  double witness_y = 0.0;
};

// Lower estimate of the A_w norm from n boundary nodes: the largest |f| plus
// the largest |f(xi) - f(zeta)| / w(|xi - zeta|) over node pairs with chordal
// distance at most 1/2.
AwEstimate aw_norm_estimate(const std::function<Complex(double)>& trace, const Weight& w,
                            int boundary_n);
AwEstimate aw_norm_estimate(const DiscFunction& f, const Weight& w, int boundary_n);

struct DerivativeGrowth {
  double C_fit = 0.0;
  std::vector<double> by_level;  // running max after each radius level
  AwEstimate aw;
  bool ok = false;
};

// C_fit = max |f'(z)| (1-|z|) / (w(1-|z|) ||f||_Aw) over radii 1 - 2^-j,
// j = 1..levels. ok when the last four levels grow by under 5%.
DerivativeGrowth derivative_growth_check(const DiscFunction& f, const Weight& w, int levels = 24,
                                         int boundary_n = 1024);

struct ContainmentCheck {
  FwNorm fw;
  DerivativeGrowth growth;
  double dini = 0.0;         // int_0^1 w^(1-p)(t) / t dt
  double bound_ratio = 0.0;  // F_{w^p} integral over 2 C_fit ||f||_Aw dini
  bool ok = false;
};

// Throws ParameterError unless 0 < p < 1 - alpha and check_A2(w, alpha) passes.
ContainmentCheck aw_in_fw_check(const DiscFunction& f, const Weight& w, double alpha, double p,
                                int quad_depth = 48);

// Frequency -> coefficient of a trigonometric polynomial.
using TrigPolynomial = std::map<int, Complex>;

TrigPolynomial cauchy_projection(const TrigPolynomial& c);
// Dense coefficients 0..max frequency of an analytic trigonometric polynomial.
std::vector<Complex> analytic_coefficients(const TrigPolynomial& c);
Complex eval_trig(const TrigPolynomial& c, double x);

}  // namespace gst
