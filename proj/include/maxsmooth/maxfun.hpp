#pragma once

// Pointwise maxima of finitely many univariate functions: evaluation, active
// sets, and the checks that make sense at a local maximizer (vanishing
// derivative, quadratic expansion).

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maxsmooth {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double t) const { return lo <= t && t <= hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
  double width() const { return hi - lo; }
};

enum class Side { left, right };

// A scalar function on a closed interval with derivatives up to `max_order`.
//
// The evaluator receives the side from which the derivative is taken. Smooth
// members ignore it; piecewise members use it to report one-sided values at
// their breakpoints.
class ScalarFunction {
 public:
  using Evaluator = std::function<double(double t, int order, Side side)>;

  ScalarFunction(std::string name, Interval domain, int smoothness_class, int max_order,
                 Evaluator evaluator);

  const std::string& name() const { return name_; }
  const Interval& domain() const { return domain_; }
  int smoothness_class() const { return smoothness_class_; }
  int max_order() const { return max_order_; }

  double eval(double t) const;

  // Two-sided derivative. nullopt when `order` exceeds what the member
  // implements; CapabilityError when the one-sided values disagree.
  std::optional<double> deriv(double t, int order) const;

  std::optional<double> one_sided_deriv(double t, int order, Side side) const;

  // Relative agreement threshold used by deriv() to accept a two-sided value.
  static constexpr double side_match_tolerance = 1e-9;

 private:
  void check_domain(double t) const;

  std::string name_;
  Interval domain_;
  int smoothness_class_;
  int max_order_;
  Evaluator evaluator_;
};

class MaxFunction {
 public:
  MaxFunction(std::vector<ScalarFunction> members, Interval domain);
  // Shared domain defaults to the intersection of the member domains.
  explicit MaxFunction(std::vector<ScalarFunction> members);

  std::size_t size() const { return members_.size(); }
  const std::vector<ScalarFunction>& members() const { return members_; }
  const ScalarFunction& member(std::size_t j) const { return members_.at(j); }
  const Interval& domain() const { return domain_; }

  double operator()(double t) const;

 private:
  std::vector<ScalarFunction> members_;
  Interval domain_;
};

struct MaxValue {
  double value;
  std::vector<std::size_t> argmax;  // zero-based member indices attaining `value`
};

struct ActiveSet {
  double point;
  double level;
  std::vector<std::size_t> indices;
  double tolerance;
};

struct QuadraticModel {
  double center;
  double level;
  double curvature;  // f_max(x + e) ~ level + curvature * e^2
};

struct OneSidedModels {
  QuadraticModel left;
  QuadraticModel right;
};

struct StationarityOptions {
  double threshold = 1e-4;
  std::size_t window = 3;  // number of smallest steps that must be under threshold
};

struct StationarityReport {
  std::vector<double> steps;
  std::vector<double> right_quotients;  // (F(x+e) - F(x)) / e
  std::vector<double> left_quotients;   // (F(x-e) - F(x)) / (-e)
  bool converges_to_zero = false;
};

struct ExpansionReport {
  std::vector<double> steps;  // grid entries actually used (zeros dropped)
  std::vector<double> residuals;
  // Least-squares slope of log residual against log |e|; +inf when every
  // residual vanishes.
  double fitted_order = std::numeric_limits<double>::infinity();
};

MaxValue eval_max(const MaxFunction& f, double t);

double default_active_tolerance(double level);

ActiveSet active_set(const MaxFunction& f, double x, std::optional<double> tol = std::nullopt);

// e_i = 2^-i for i = first..last.
std::vector<double> dyadic_schedule(int first = 1, int last = 40);

StationarityReport stationarity_check(const MaxFunction& f, double x, std::span<const double> steps,
                                      const StationarityOptions& options = {});

// Curvature M = max over active members of f_j''(x) / 2. Requires two-sided
// second derivatives of every active member.
QuadraticModel quadratic_model(const MaxFunction& f, double x);

// Per-side models for members that are only piecewise C^2 at x.
OneSidedModels one_sided_quadratic_models(const MaxFunction& f, double x);

ExpansionReport expansion_residual(const MaxFunction& f, double x, std::span<const double> steps);
ExpansionReport expansion_residual(const MaxFunction& f, const QuadraticModel& model,
                                   std::span<const double> steps);

// Least-squares slope of y against x. Used for order fits.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

// two_piece_c1: f1 = -t^2 (t <= 0), -3t^2 (t > 0); f2 = -2t^2, on [-1, 1].
// remark_sin_pair: t^8 (sin(1/t) - 1) and t^8 (sin(1/(2t)) - 1), C^3 at 0.
// neg_abs: the single member -|t|.
MaxFunction builtin_family(std::string_view name);
std::vector<std::string> builtin_family_names();

// Convenience for polynomial members (coefficients in increasing degree).
ScalarFunction polynomial_function(std::string name, std::vector<double> coeffs, Interval domain);

}  // namespace maxsmooth
