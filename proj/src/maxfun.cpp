#include "maxsmooth/maxfun.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maxsmooth/errors.hpp"

namespace maxsmooth {

ScalarFunction::ScalarFunction(std::string name, Interval domain, int smoothness_class,
                               int max_order, Evaluator evaluator)
    : name_(std::move(name)),
      domain_(domain),
      smoothness_class_(smoothness_class),
      max_order_(max_order),
      evaluator_(std::move(evaluator)) {
  if (!(domain_.lo <= domain_.hi)) throw ArgumentError("ScalarFunction: empty domain");
  if (smoothness_class_ < 0 || max_order_ < 0)
    throw ArgumentError("ScalarFunction: negative order");
  if (!evaluator_) throw ArgumentError("ScalarFunction: missing evaluator");
}

void ScalarFunction::check_domain(double t) const {
  if (!domain_.contains(t))
    throw DomainError("point " + std::to_string(t) + " outside domain of " + name_);
}

double ScalarFunction::eval(double t) const {
  check_domain(t);
  return evaluator_(t, 0, Side::right);
}

std::optional<double> ScalarFunction::one_sided_deriv(double t, int order, Side side) const {
  check_domain(t);
  if (order < 0) throw ArgumentError("negative derivative order");
  if (order > max_order_) return std::nullopt;
  return evaluator_(t, order, side);
}

std::optional<double> ScalarFunction::deriv(double t, int order) const {
  const auto left = one_sided_deriv(t, order, Side::left);
  if (!left) return std::nullopt;
  const double right = *one_sided_deriv(t, order, Side::right);
  const double scale = std::max({1.0, std::abs(*left), std::abs(right)});
  if (std::abs(*left - right) > side_match_tolerance * scale)
    throw CapabilityError(name_ + ": one-sided derivatives of order " + std::to_string(order) +
                          " disagree at t = " + std::to_string(t));
  return right;
}

namespace {

Interval intersect_domains(const std::vector<ScalarFunction>& members) {
  if (members.empty()) throw ArgumentError("MaxFunction needs at least one member");
  Interval d = members.front().domain();
  for (const auto& m : members) {
    d.lo = std::max(d.lo, m.domain().lo);
    d.hi = std::min(d.hi, m.domain().hi);
  }
  if (d.lo > d.hi) throw ArgumentError("MaxFunction: member domains do not overlap");
  return d;
}

}  // namespace

MaxFunction::MaxFunction(std::vector<ScalarFunction> members, Interval domain)
    : members_(std::move(members)), domain_(domain) {
  if (members_.empty()) throw ArgumentError("MaxFunction needs at least one member");
  for (const auto& m : members_)
    if (!m.domain().contains(domain_))
      throw ArgumentError("member " + m.name() + " does not cover the shared domain");
}

MaxFunction::MaxFunction(std::vector<ScalarFunction> members)
    : MaxFunction(members, intersect_domains(members)) {}

double MaxFunction::operator()(double t) const { return eval_max(*this, t).value; }

MaxValue eval_max(const MaxFunction& f, double t) {
  if (!f.domain().contains(t)) throw DomainError("eval_max: point outside shared domain");
  std::vector<double> values(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) values[j] = f.member(j).eval(t);
  MaxValue out{*std::max_element(values.begin(), values.end()), {}};
  for (std::size_t j = 0; j < values.size(); ++j)
    if (values[j] == out.value) out.argmax.push_back(j);
  return out;
}

double default_active_tolerance(double level) { return 1e-10 * (1.0 + std::abs(level)); }

ActiveSet active_set(const MaxFunction& f, double x, std::optional<double> tol) {
  if (!f.domain().contains(x)) throw DomainError("active_set: point outside shared domain");
  if (tol && *tol < 0.0) throw ArgumentError("active_set: negative tolerance");
  ActiveSet out{x, 0.0, {}, 0.0};
  std::vector<double> values(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) values[j] = f.member(j).eval(x);
  out.level = *std::max_element(values.begin(), values.end());
  out.tolerance = tol.value_or(default_active_tolerance(out.level));
  for (std::size_t j = 0; j < values.size(); ++j)
    if (std::abs(values[j] - out.level) <= out.tolerance) out.indices.push_back(j);
  return out;
}

std::vector<double> dyadic_schedule(int first, int last) {
  if (first > last) throw ArgumentError("dyadic_schedule: empty range");
  std::vector<double> steps;
  for (int i = first; i <= last; ++i) steps.push_back(std::ldexp(1.0, -i));
  return steps;
}

StationarityReport stationarity_check(const MaxFunction& f, double x, std::span<const double> steps,
                                      const StationarityOptions& options) {
  if (steps.empty()) throw ArgumentError("stationarity_check: empty step schedule");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0)) throw ArgumentError("stationarity_check: steps must be positive");
    if (i > 0 && !(steps[i] < steps[i - 1]))
      throw ArgumentError("stationarity_check: steps must be strictly decreasing");
  }
  StationarityReport report;
  const double center = f(x);
  for (double e : steps) {
    report.steps.push_back(e);
    report.right_quotients.push_back((f(x + e) - center) / e);
    report.left_quotients.push_back((f(x - e) - center) / (-e));
  }
  const std::size_t window = std::clamp<std::size_t>(options.window, 1, steps.size());
  report.converges_to_zero = true;
  for (std::size_t i = steps.size() - window; i < steps.size(); ++i) {
    const double q = std::max(std::abs(report.right_quotients[i]), std::abs(report.left_quotients[i]));
    if (!(q <= options.threshold)) report.converges_to_zero = false;
  }
  return report;
}

QuadraticModel quadratic_model(const MaxFunction& f, double x) {
  const ActiveSet active = active_set(f, x);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j : active.indices) {
    const auto second = f.member(j).deriv(x, 2);
    if (!second)
      throw CapabilityError("quadratic_model: member " + f.member(j).name() +
                            " has no second derivative");
    best = std::max(best, *second);
  }
  return {x, active.level, 0.5 * best};
}

OneSidedModels one_sided_quadratic_models(const MaxFunction& f, double x) {
  const ActiveSet active = active_set(f, x);
  auto side_curvature = [&](Side side) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j : active.indices) {
      const auto second = f.member(j).one_sided_deriv(x, 2, side);
      if (!second)
        throw CapabilityError("one_sided_quadratic_models: member " + f.member(j).name() +
                              " has no second derivative");
      best = std::max(best, *second);
    }
    return 0.5 * best;
  };
  return {{x, active.level, side_curvature(Side::left)},
          {x, active.level, side_curvature(Side::right)}};
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    return std::numeric_limits<double>::quiet_NaN();
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

ExpansionReport expansion_residual(const MaxFunction& f, const QuadraticModel& model,
                                   std::span<const double> steps) {
  ExpansionReport report;
  std::vector<double> log_e, log_r;
  for (double e : steps) {
    if (e == 0.0) continue;
    const double r = std::abs(f(model.center + e) - model.level - model.curvature * e * e);
    report.steps.push_back(e);
    report.residuals.push_back(r);
    if (r > 0.0) {
      log_e.push_back(std::log(std::abs(e)));
      log_r.push_back(std::log(r));
    }
  }
  if (log_r.empty())
    report.fitted_order = std::numeric_limits<double>::infinity();
  else
    report.fitted_order = least_squares_slope(log_e, log_r);
  return report;
}

ExpansionReport expansion_residual(const MaxFunction& f, double x, std::span<const double> steps) {
  return expansion_residual(f, quadratic_model(f, x), steps);
}

ScalarFunction polynomial_function(std::string name, std::vector<double> coeffs, Interval domain) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  const int degree = static_cast<int>(coeffs.size()) - 1;
  auto evaluator = [coeffs = std::move(coeffs)](double t, int order, Side) {
    // Horner on the order-th derivative coefficients.
    double acc = 0.0;
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= order; --j) {
      double falling = 1.0;
      for (int i = 0; i < order; ++i) falling *= static_cast<double>(j - i);
      acc = acc * t + falling * coeffs[static_cast<std::size_t>(j)];
    }
    return acc;
  };
  return ScalarFunction(std::move(name), domain, std::numeric_limits<int>::max(),
                        std::max(degree, 3), std::move(evaluator));
}

namespace {

ScalarFunction sin_member(std::string name, double a) {
  // t^8 (sin(a/t) - 1) and its first three derivatives; all vanish at t = 0.
  auto evaluator = [a](double t, int order, Side) -> double {
    if (t == 0.0) return 0.0;
    const double s = std::sin(a / t);
    const double c = std::cos(a / t);
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t, t6 = t5 * t;
    switch (order) {
      case 0: return t4 * t4 * (s - 1.0);
      case 1: return 8.0 * t6 * t * (s - 1.0) - a * t6 * c;
      case 2: return 56.0 * t6 * (s - 1.0) - 14.0 * a * t5 * c - a * a * t4 * s;
      case 3:
        return 336.0 * t5 * (s - 1.0) - 126.0 * a * t4 * c - 18.0 * a * a * t3 * s +
               a * a * a * t2 * c;
      default: throw CapabilityError("sin member: order > 3");
    }
  };
  return ScalarFunction(std::move(name), {-1.0, 1.0}, 3, 3, evaluator);
}

}  // namespace

MaxFunction builtin_family(std::string_view name) {
  if (name == "two_piece_c1") {
    auto f1 = [](double t, int order, Side side) -> double {
      const bool left = t < 0.0 || (t == 0.0 && side == Side::left);
      const double a = left ? -1.0 : -3.0;
      switch (order) {
        case 0: return a * t * t;
        case 1: return 2.0 * a * t;
        case 2: return 2.0 * a;
        default: return 0.0;
      }
    };
    return MaxFunction({ScalarFunction("f1", {-1.0, 1.0}, 1, 3, f1),
                        polynomial_function("f2", {0.0, 0.0, -2.0}, {-1.0, 1.0})});
  }
  if (name == "remark_sin_pair") {
    return MaxFunction({sin_member("f1", 1.0), sin_member("f2", 0.5)});
  }
  if (name == "neg_abs") {
    auto f = [](double t, int order, Side side) -> double {
      const bool left = t < 0.0 || (t == 0.0 && side == Side::left);
      switch (order) {
        case 0: return -std::abs(t);
        case 1: return left ? 1.0 : -1.0;
        default: return 0.0;
      }
    };
    return MaxFunction({ScalarFunction("f1", {-1.0, 1.0}, 0, 2, f)});
  }
  throw ArgumentError("unknown builtin family: " + std::string(name));
}

std::vector<std::string> builtin_family_names() {
  return {"two_piece_c1", "remark_sin_pair", "neg_abs"};
}

}  // namespace maxsmooth
