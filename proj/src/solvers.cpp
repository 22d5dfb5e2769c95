#include "maxsmooth/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "maxsmooth/errors.hpp"

namespace maxsmooth {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

double resolve_tol(const SolverOptions& options, double fallback) {
  const double tol = options.tol.value_or(fallback);
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  return tol;
}

SolveReport run_maximizer(const Objective& g, Interval window, const SolverOptions& options, double tol,
                          std::vector<double> extra, double initial_level) {
  LevelSetOptions ls;
  ls.initial_level = initial_level;
  ls.tol = tol;
  ls.samples = options.samples;
  ls.threads = options.threads;
  ls.extra_points = std::move(extra);
  return options.method == Method::levelset ? levelset_maximize(g, window, ls) : grid_maximize(g, window, ls);
}

Eigen::VectorXcd eigenvalues(const CMatrix& a) {
  const Eigen::ComplexEigenSolver<CMatrix> solver(a, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalues did not converge");
  return solver.eigenvalues();
}

// Frequencies are searched through omega = scale * tan(phi), phi in [-pi/2, pi/2],
// so the whole real line including both infinite ends is a compact window.
struct FrequencyMap {
  double scale = 1.0;

  double omega(double phi) const {
    if (phi >= kHalfPi) return kInf;
    if (phi <= -kHalfPi) return -kInf;
    return scale * std::tan(phi);
  }
  double phi(double omega) const { return std::atan(omega / scale); }
};

FrequencyMap frequency_map(const CMatrix& a) {
  const double radius = eigenvalues(a).cwiseAbs().maxCoeff();
  return {radius > 0.0 ? radius : 1.0};
}

// Frequencies near resonances: |Im lambda| and |lambda| for each pole, both signs.
std::vector<double> pole_frequencies(const CMatrix& a) {
  std::vector<double> out{0.0};
  for (const Complex& l : eigenvalues(a))
    for (double w : {std::abs(l.imag()), std::abs(l)}) {
      out.push_back(w);
      out.push_back(-w);
    }
  return out;
}

void map_locations(SolveReport& report, const FrequencyMap& map) {
  for (double& t : report.locations) t = map.omega(t);
  for (auto& c : report.certificates) c.point = map.omega(c.point);
}

}  // namespace

SolveReport hinf_norm(const LtiSystem& sys, const SolverOptions& options) {
  const double tol = resolve_tol(options, kDefaultHinfTol);
  require_stable(sys);
  const auto shared = std::make_shared<const LtiSystem>(sys);
  const ExtremalFunction gain(MatrixFamily::transfer_backed(shared), ExtremalKind::sigma_max);
  const double at_infinity = sigma_max(sys.D());
  const FrequencyMap map = frequency_map(sys.A());

  // Starting level from the static gain, the feedthrough, and the resonances.
  const auto candidates = pole_frequencies(sys.A());
  double gamma0 = at_infinity;
  for (double w : candidates) gamma0 = std::max(gamma0, gain(w));

  // For |omega| > bound, ||(i omega - A)^{-1}|| <= 1 / (|omega| - ||A||) keeps the gain below gamma0.
  Interval window{-kHalfPi, kHalfPi};
  if (gamma0 > at_infinity * (1.0 + 1e-12)) {
    const double bound = spectral_norm(sys.A()) +
                         spectral_norm(sys.B()) * spectral_norm(sys.C()) / (gamma0 - at_infinity);
    const double edge = map.phi(bound);
    window = {-edge, edge};
  }

  const Objective g = [&](double phi) {
    return std::abs(phi) >= kHalfPi ? at_infinity : gain(map.omega(phi));
  };
  std::vector<double> extra;
  for (double w : candidates) extra.push_back(map.phi(w));
  SolveReport report = run_maximizer(g, window, options, tol, std::move(extra), gamma0);
  map_locations(report, map);
  if (at_infinity >= report.optimum) {
    report.optimum = at_infinity;
    report.locations = {kInf};
  }
  return report;
}

RadiusForm parse_radius_form(std::string_view name) {
  if (name == "lambda" || name == "lambda_max") return RadiusForm::lambda_max;
  if (name == "rho") return RadiusForm::rho;
  throw ArgumentError("unknown numerical radius form: " + std::string(name));
}

SolveReport numerical_radius(const CMatrix& a, const SolverOptions& options, RadiusForm form) {
  const double tol = resolve_tol(options, kDefaultRadiusTol);
  if (a.rows() != a.cols() || a.rows() == 0) throw ArgumentError("numerical_radius: matrix must be square");
  const ExtremalKind kind = form == RadiusForm::lambda_max ? ExtremalKind::lambda_max : ExtremalKind::spec_radius;
  const ExtremalFunction g(HermitianFamily::rotated_hermitian_part(a), kind);
  const double period = form == RadiusForm::lambda_max ? 2.0 * std::numbers::pi : std::numbers::pi;

  // Rotating an eigenvalue onto the positive real axis gives a lower bound.
  std::vector<double> guesses{0.0};
  for (const Complex& l : eigenvalues(a))
    if (l != 0.0) guesses.push_back(std::remainder(-std::arg(l), period));
  double center = guesses.front(), best = g(center);
  for (double th : guesses)
    if (const double v = g(th); v > best) best = v, center = th;

  // Periodic objective: a window of one period centred on the best guess.
  const Interval window{center - period / 2.0, center + period / 2.0};
  SolveReport report = run_maximizer([&](double th) { return g(th); }, window, options, tol, guesses, best);
  for (double& th : report.locations) th = std::remainder(th, period);
  return report;
}

SolveReport passivity_gamma(const LtiSystem& sys, double xi, const SolverOptions& options) {
  const double tol = resolve_tol(options, kDefaultMarginTol / 100.0);
  const LtiSystem shift = shifted(sys, xi);
  const CMatrix d = shift.D();
  const double at_infinity = hermitian_eigenvalues(d + d.adjoint()).minCoeff();
  const FrequencyMap map = frequency_map(shift.A());
  const auto shared = std::make_shared<const LtiSystem>(shift);
  const ExtremalFunction lowest(HermitianFamily::callable(
                                   sys.m(),
                                   [shared](double omega) {
                                     const CMatrix gw = transfer_eval(*shared, omega);
                                     return CMatrix(gw + gw.adjoint());
                                   },
                                   "passivity"),
                               ExtremalKind::lambda_min);
  const Objective g = [&](double phi) {
    return -(std::abs(phi) >= kHalfPi ? at_infinity : lowest(map.omega(phi)));
  };
  std::vector<double> extra{-kHalfPi};
  double level = g(-kHalfPi);
  for (double w : pole_frequencies(shift.A())) {
    extra.push_back(map.phi(w));
    level = std::max(level, g(extra.back()));
  }
  SolveReport report = run_maximizer(g, {-kHalfPi, kHalfPi}, options, tol, std::move(extra), level);
  report.optimum = -report.optimum;
  report.curvature = -report.curvature;
  for (auto& c : report.certificates) c.value = -c.value;
  map_locations(report, map);
  // An infimum approached only as |omega| grows is reported at infinity.
  if (at_infinity <= report.optimum) {
    report.optimum = at_infinity;
    report.locations = {kInf};
  }
  return report;
}

SolveReport passivity_margin(const LtiSystem& sys, const SolverOptions& options) {
  const double tol = resolve_tol(options, kDefaultMarginTol);
  if (sys.m() != sys.p()) throw PreconditionError("passivity needs a square transfer matrix (m = p)");
  require_stable(sys);
  SolverOptions inner = options;
  inner.tol = tol / 100.0;

  SolveReport report;
  // nullopt: A + xi/2 I is not stable, counted as not passive.
  auto gamma = [&](double xi) -> std::optional<double> {
    if (!is_stable(shifted(sys, xi).A())) return std::nullopt;
    const SolveReport r = passivity_gamma(sys, xi, inner);
    report.evaluations += r.evaluations;
    report.certificates.push_back({xi, r.optimum});
    return r.optimum;
  };
  auto positive = [](const std::optional<double>& v) { return v && *v > 0.0; };

  const auto g0 = gamma(0.0);
  if (!positive(g0)) throw PreconditionError("system is not strictly passive at xi = 0");

  // Grow the bracket geometrically until passivity is lost.
  double lo = 0.0, hi = 1.0;
  double g_lo = *g0;
  std::optional<double> g_hi = gamma(hi);
  for (int grow = 0; positive(g_hi); ++grow) {
    if (grow > 60) throw NumericalError("passivity margin: no sign change found");
    lo = hi, g_lo = *g_hi;
    hi *= 2.0;
    g_hi = gamma(hi);
  }
  report.iterations.push_back({lo, hi - lo});

  // Safeguarded secant: the step comes from the two latest values, clamped
  // strictly inside the bracket; bisect when the bracket stalls.
  double x_prev = 0.0, g_prev = *g0;
  double x_last = lo, g_last = g_lo;
  double root = lo, g_root = g_lo;
  double width_before = hi - lo;
  report.status = SolveStatus::max_iterations;
  for (int it = 0; it < 200; ++it) {
    const double w = hi - lo;
    double candidate = 0.5 * (lo + hi);
    if (g_hi && *g_hi != g_lo) {
      candidate = lo - g_lo * (hi - lo) / (*g_hi - g_lo);
    } else if (g_last != g_prev && x_last != x_prev) {
      candidate = x_last - g_last * (x_last - x_prev) / (g_last - g_prev);
    }
    if (it % 3 == 2 && hi - lo > 0.5 * width_before) candidate = 0.5 * (lo + hi);
    if (it % 3 == 2) width_before = hi - lo;
    if (!std::isfinite(candidate)) candidate = 0.5 * (lo + hi);
    candidate = std::clamp(candidate, lo + 0.01 * w, hi - 0.01 * w);

    const auto gc = gamma(candidate);
    report.iterations.push_back({candidate, w});
    report.history.push_back(candidate);
    if (gc) {
      x_prev = x_last, g_prev = g_last;
      x_last = candidate, g_last = *gc;
    }
    if (positive(gc)) {
      lo = candidate, g_lo = *gc;
    } else {
      hi = candidate, g_hi = gc;
    }
    if (gc && std::abs(*gc) <= tol) {
      root = candidate, g_root = *gc;
      report.status = SolveStatus::converged;
      break;
    }
    if (hi - lo <= 1e-3 * tol * std::max(1.0, std::abs(lo))) {
      root = lo, g_root = g_lo;
      report.status = SolveStatus::converged;
      break;
    }
  }
  report.optimum = root;
  report.locations = {root};
  report.residual = std::abs(g_root);
  if (report.history.size() >= 4) {
    report.history.push_back(root);
    report.empirical_order = empirical_order(report.history);
  }

  // Any sign pattern other than + below the root and - above means more than one root.
  const double span = std::max(hi, 2.0 * root);
  for (int j = 1; j <= 8; ++j) {
    const double xi = span * j / 9.0;
    if (std::abs(xi - root) <= 10.0 * tol) continue;
    const bool pos = positive(gamma(xi));
    if (pos != (xi < root)) report.status = SolveStatus::multiple_roots;
  }
  return report;
}

}  // namespace maxsmooth
