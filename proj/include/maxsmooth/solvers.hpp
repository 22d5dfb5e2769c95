#pragma once

// Global maximization of univariate functions by level sets, and the three
// applications built on it: the H-infinity norm, the numerical radius, and
// the passivity margin.

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "maxsmooth/eigfamily.hpp"
#include "maxsmooth/lti.hpp"
#include "maxsmooth/maxfun.hpp"
#include "maxsmooth/report.hpp"

namespace maxsmooth {

using Objective = std::function<double(double)>;

struct LevelSetOptions {
  double tol = 1e-8;
  int samples = 1024;  // initial uniform samples over the window
  int max_iterations = 100;
  int threads = 1;
  std::vector<double> extra_points;  // evaluated alongside the uniform samples
  // Starting level gamma_0; the samples then only locate crossings. Unset:
  // the best sample value.
  std::optional<double> initial_level;
};

// Level-set iteration: find every interval where g >= gamma_k by bisection
// against the sample set, move gamma to the best interval midpoint, stop when
// the level rises by at most tol. The winning peak is then polished with
// Brent's method and the other sampled peaks are checked. `g` must be pure.
SolveReport levelset_maximize(const Objective& g, Interval window, const LevelSetOptions& options = {});

// Dense uniform sampling (16x the level-set sample count) and a Brent polish.
SolveReport grid_maximize(const Objective& g, Interval window, const LevelSetOptions& options = {});

enum class Method { levelset, grid };
Method parse_method(std::string_view name);

struct SolverOptions {
  std::optional<double> tol;  // unset: per-solver default
  Method method = Method::levelset;
  int samples = 1024;
  int threads = 1;
};

inline constexpr double kDefaultHinfTol = 1e-8;
inline constexpr double kDefaultRadiusTol = 1e-8;
inline constexpr double kDefaultMarginTol = 1e-6;

// max over real omega of sigma_max(G(i omega)). Locations are frequencies;
// +inf when the supremum is only approached as |omega| grows.
// PreconditionError when A is not asymptotically stable.
SolveReport hinf_norm(const LtiSystem& sys, const SolverOptions& options = {});

enum class RadiusForm { lambda_max, rho };
RadiusForm parse_radius_form(std::string_view name);

// max over theta of lambda_max((e^{i theta} A + e^{-i theta} A*) / 2) over a full
// period, or of the spectral radius of the same matrix over half a period.
// Locations are angles.
SolveReport numerical_radius(const CMatrix& a, const SolverOptions& options = {},
                             RadiusForm form = RadiusForm::lambda_max);

// min over real omega of lambda_min(G_xi(i omega)* + G_xi(i omega)) for the
// shifted system; the limit |omega| -> inf is included. The location is the
// minimizing frequency. Stability of the shifted A is not required.
SolveReport passivity_gamma(const LtiSystem& sys, double xi, const SolverOptions& options = {});

// Root of xi -> passivity_gamma(xi). Shifts that make A + xi/2 I unstable count
// as not passive. PreconditionError when m != p, when A is unstable, or when
// passivity_gamma(0) <= 0.
SolveReport passivity_margin(const LtiSystem& sys, const SolverOptions& options = {});

}  // namespace maxsmooth
