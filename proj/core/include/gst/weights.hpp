#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gst {

enum class WeightKind {
  power,            // t^alpha
  log_power,        // depth 1: log^{-c}(e/t), depth 2: (1 + log log(e/t))^{-c}
  exp_log,          // exp(-alpha * log^beta(e/t))
  table,            // piecewise linear through (t, w) samples
  exp_inverse,      // exp(-1/t)
  exp_exp_inverse,  // exp(-exp(1/t))
  custom,           // user closure
};

std::string to_string(WeightKind kind);

// A nondecreasing weight on [0, 1] with w(0) = 0, optionally raised to a
// power. Values are immutable; copies share the underlying description.
class Weight {
public:
  static Weight power(double alpha);
  static Weight log_power(double c, int depth = 1);
  static Weight exp_log(double alpha, double beta);
  static Weight table(std::vector<std::pair<double, double>> points);
  static Weight exp_inverse();
  static Weight exp_exp_inverse();
  static Weight custom(std::string name, std::function<double(double)> fn,
                       std::optional<double> lambda_hint = std::nullopt);

  double operator()(double t) const;

  // log w(t) given log t, evaluated without forming t when a closed form
  // exists; returns -inf where w vanishes.
  double log_from_log(double log_t) const;
  double log_at(double t) const;

  // w^p, with lambda hint rescaled to hint / p.
  Weight pow(double p) const;

  WeightKind kind() const { return base_->kind; }
  double exponent() const { return exponent_; }
  double alpha() const { return base_->a; }
  double beta() const { return base_->b; }
  int depth() const { return base_->depth; }
  const std::vector<std::pair<double, double>>& table_points() const { return base_->points; }

  // Largest lambda with w^lambda known to be a modulus of continuity.
  std::optional<double> lambda_hint() const;

  // Closed-form value of int_{u0}^inf w(e^{-u})^a du, i.e. the part of
  // int w^a(t) dt / t below t = e^{-u0}. nullopt when no closed form is known;
  // +inf when the integral diverges.
  std::optional<double> dini_tail(double u0, double a) const;

  std::string describe() const;

private:
  struct Base {
    WeightKind kind = WeightKind::power;
    double a = 1.0;
    double b = 1.0;
    int depth = 1;
    std::vector<std::pair<double, double>> points;
    std::function<double(double)> fn;
    std::optional<double> custom_hint;
    std::string name;
  };

  explicit Weight(std::shared_ptr<const Base> base, double exponent = 1.0)
      : base_(std::move(base)), exponent_(exponent) {}

  double base_log_from_log(double log_t) const;
  double base_value(double t) const;

  std::shared_ptr<const Base> base_;
  double exponent_ = 1.0;
};

struct NamedWeight {
  std::string name;
  Weight weight;
};

// Majorants shipped with the toolkit: powers, log powers and sub-exponential
// exp-log weights. Every entry carries a lambda hint.
std::vector<NamedWeight> builtin_majorants();

// Weights used for the (A1) sweep: t^c, log^{-c}(e/t), loglog^{-c},
// exp(-a log^b(e/t)) over c, a, b in {1/2, 1, 2}.
std::vector<NamedWeight> a1_family();

struct ModulusCheck {
  bool ok = true;
  std::optional<std::pair<double, double>> witness;
  std::string reason;
};

ModulusCheck check_modulus_of_continuity(const Weight& w, int grid_depth);

struct MajorantCheck {
  bool ok = false;
  std::optional<double> lambda;
};

MajorantCheck check_majorant(const Weight& w, const std::vector<double>& lambda_candidates,
                             int grid_depth = 12);

// Largest candidate (or hint) that passes; used to set eta in grid building.
std::optional<double> largest_majorant_lambda(const Weight& w,
                                              const std::vector<double>& lambda_candidates,
                                              int grid_depth = 12);

struct A1Result {
  double ratio_low = 0.0;
  double ratio_high = 0.0;
  bool ok = false;
  int samples = 0;
};

A1Result check_A1(const Weight& w, int depth);

struct A2Result {
  double dini_integral = 0.0;
  double quadrature_part = 0.0;
  double tail_bound = 0.0;
  bool ok = false;
  // Whether w^{1+alpha} passed the modulus check; reported rather than
  // enforced.
  bool power_is_modulus = false;
};

A2Result check_A2(const Weight& w, double alpha, int quad_depth);

struct MonomialSup {
  double sup = 0.0;
  double argmax_r = 0.0;
};

// sup_{0 <= r < 1} r^n w(1 - r).
MonomialSup sup_monomial_weight(const Weight& w, int n);

struct ConditionA {
  double kappa = 0.0;
  double C1 = 0.0;
  bool ok = false;
  bool kappa_unbounded = false;
  std::vector<double> sups;  // sups[n-1] for n = 1..n_max
};

ConditionA check_condition_a(const Weight& w, int n_max);

// max_n sup_t t^n w(1-t) / w(1/n)^kappa over n = 1..n_max.
double condition_a_constant(const Weight& w, int n_max, double kappa);

struct ConditionB {
  double C2 = 0.0;
  bool ok = false;
  std::vector<double> ratios;  // ratios[j-2] at ell = 2^-j
};

ConditionB check_condition_b(const Weight& w, int depth);

// Lower bound log(1/w(g)) <= U(g) from the almost-decreasing property of w^lambda:
// U(g) = (1/lambda)(log(1/g) + log 2) + log(1/w(1)).
double neg_log_weight_upper(const Weight& w, double lambda, double log_g);

}  // namespace gst
