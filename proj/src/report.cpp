#include "maxsmooth/report.hpp"

#include <algorithm>
#include <cmath>

#include "maxsmooth/errors.hpp"

namespace maxsmooth {

std::string_view status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::endpoint: return "endpoint";
    case SolveStatus::flat: return "flat";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::multiple_roots: return "multiple_roots";
  }
  return "unknown";
}

double empirical_order(std::span<const double> history, std::size_t window) {
  if (history.size() < 4) throw ArgumentError("empirical_order: need at least 4 iterates");
  if (window == 0) throw ArgumentError("empirical_order: empty window");
  const double limit = history.back();
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(limit);
  std::vector<double> errors;
  for (std::size_t k = 0; k + 1 < history.size(); ++k) errors.push_back(std::abs(history[k] - limit));

  auto usable = [&](double e) { return e > floor && e > 0.0 && e < 1.0; };
  std::vector<double> ratios;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k)
    if (usable(errors[k]) && usable(errors[k + 1]))
      ratios.push_back(std::log(errors[k + 1]) / std::log(errors[k]));
  if (ratios.empty()) return std::numeric_limits<double>::quiet_NaN();

  const std::size_t take = std::min(window, ratios.size());
  std::vector<double> tail(ratios.end() - static_cast<std::ptrdiff_t>(take), ratios.end());
  std::sort(tail.begin(), tail.end());
  const std::size_t mid = tail.size() / 2;
  return tail.size() % 2 == 1 ? tail[mid] : 0.5 * (tail[mid - 1] + tail[mid]);
}

}  // namespace maxsmooth
