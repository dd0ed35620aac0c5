#include "gst/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace gst::quad {

Result finite(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return {};
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol, &err);
  return {v, err};
}

Result endpoint_singular(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return {};
  thread_local boost::math::quadrature::tanh_sinh<double> rule(12);
  double err = 0.0;
  double l1 = 0.0;
  const double v = rule.integrate(f, a, b, tol, &err, &l1);
  return {v, err};
}

Result half_line(const std::function<double(double)>& f, double tol) {
  thread_local boost::math::quadrature::exp_sinh<double> rule(12);
  double err = 0.0;
  double l1 = 0.0;
  const double v = rule.integrate(f, tol, &err, &l1);
  return {v, err};
}

Extremum maximize(const std::function<double(double)>& f, double lo, double hi, int grid) {
  const double h = (hi - lo) / grid;
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    const double v = f(lo + i * h);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double a = lo + std::max(0, best - 1) * h;
  const double b = lo + std::min(grid, best + 1) * h;
  auto neg = [&](double x) { return -f(x); };
  const auto [x, nv] = boost::math::tools::brent_find_minima(neg, a, b, 52);
  if (-nv >= best_val) return {x, -nv};
  return {lo + best * h, best_val};
}

Result fixed_gauss(const std::function<double(double)>& f, double a, double b) {
  return {boost::math::quadrature::gauss<double, 20>::integrate(f, a, b), 0.0};
}

Rule gauss_rule(double a, double b) {
  using G = boost::math::quadrature::gauss<double, 20>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  Rule r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.x.push_back(mid - half * x[i]);
    r.w.push_back(half * w[i]);
    r.x.push_back(mid + half * x[i]);
    r.w.push_back(half * w[i]);
  }
  return r;
}

}  // namespace gst::quad
