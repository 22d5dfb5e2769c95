#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maxsmooth {

enum class SolveStatus {
  converged,
  endpoint,        // optimum sits on the boundary of the search bracket
  flat,            // objective constant over the sampled window
  max_iterations,
  multiple_roots,  // more than one sign change seen while bracketing
};

std::string_view status_name(SolveStatus status);

struct IterationRecord {
  double level = 0.0;  // gamma_k for level-set steps, xi_k for the outer root-find
  double width = 0.0;  // total width of the tracked brackets at this step
};

struct Certificate {
  double point = 0.0;
  double value = 0.0;
};

struct SolveReport {
  double optimum = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> locations;
  std::vector<IterationRecord> iterations;
  std::vector<Certificate> certificates;
  std::vector<double> history;  // sequence fed to empirical_order
  double empirical_order = std::numeric_limits<double>::quiet_NaN();
  double curvature = std::numeric_limits<double>::quiet_NaN();  // second derivative at the optimum
  double residual = std::numeric_limits<double>::quiet_NaN();   // |objective| at a returned root
  std::size_t evaluations = 0;
  SolveStatus status = SolveStatus::converged;
};

// Median of log e_{k+1} / log e_k over the last `window` ratios, with the final
// entry of `history` as the limit. Errors below 8 eps |limit| are dropped; NaN
// when no ratio survives. ArgumentError for fewer than 4 entries.
double empirical_order(std::span<const double> history, std::size_t window = 3);

}  // namespace maxsmooth
