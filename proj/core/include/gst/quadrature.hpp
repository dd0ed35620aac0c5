#pragma once

#include <functional>
#include <vector>

namespace gst::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod on a finite interval with a smooth integrand.
Result finite(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

// Double-exponential rule for integrands with integrable endpoint
// singularities on [a, b].
Result endpoint_singular(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-12);

// exp-sinh rule on [0, inf).
Result half_line(const std::function<double(double)>& f, double tol = 1e-12);

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

// Maximizes f on [lo, hi]: uniform scan with `grid` cells, then Brent
// refinement around the best cell.
Extremum maximize(const std::function<double(double)>& f, double lo, double hi, int grid = 400);

// 20-point Gauss-Legendre; exact for polynomials of degree <= 39.
Result fixed_gauss(const std::function<double(double)>& f, double a, double b);

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

// Nodes and weights of the 20-point Gauss-Legendre rule mapped to [a, b].
Rule gauss_rule(double a, double b);

}  // namespace gst::quad
