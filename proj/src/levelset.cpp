#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "maxsmooth/errors.hpp"
#include "maxsmooth/solvers.hpp"

namespace maxsmooth {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kSafeguardPeaks = 8;
constexpr int kMaxRestarts = 4;

struct Sample {
  double t;
  double v;
};

std::vector<double> evaluate_all(const Objective& g, const std::vector<double>& ts, int threads) {
  std::vector<double> out(ts.size());
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1,
                                                      std::max<std::size_t>(ts.size(), 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < ts.size(); ++i) out[i] = g(ts[i]);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < ts.size(); i += workers) out[i] = g(ts[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

void validate(const Interval& window, const LevelSetOptions& options) {
  if (!(window.lo < window.hi) || !std::isfinite(window.lo) || !std::isfinite(window.hi))
    throw ArgumentError("search window must be a finite interval with lo < hi");
  if (!(options.tol > 0.0)) throw ArgumentError("tolerance must be positive");
  if (options.samples < 2) throw ArgumentError("need at least 2 samples");
  if (options.max_iterations < 1) throw ArgumentError("need at least one iteration");
}

class SampleSet {
 public:
  SampleSet(const Objective& g, Interval window, int count, const std::vector<double>& extra, int threads,
            std::size_t& evaluations)
      : g_(g), evaluations_(evaluations) {
    std::vector<double> ts;
    for (int i = 0; i <= count; ++i) ts.push_back(window.lo + window.width() * i / count);
    ts.back() = window.hi;
    for (double t : extra)
      if (window.contains(t)) ts.push_back(t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    const auto vs = evaluate_all(g, ts, threads);
    evaluations_ += ts.size();
    for (std::size_t i = 0; i < ts.size(); ++i) points_.push_back({ts[i], vs[i]});
  }

  const std::vector<Sample>& points() const { return points_; }

  double eval(double t) {
    ++evaluations_;
    return g_(t);
  }

  void insert(double t, double v) {
    auto it = std::lower_bound(points_.begin(), points_.end(), t,
                               [](const Sample& s, double x) { return s.t < x; });
    if (it != points_.end() && it->t == t) return;
    points_.insert(it, {t, v});
  }

  const Sample& best() const {
    return *std::max_element(points_.begin(), points_.end(),
                             [](const Sample& a, const Sample& b) { return a.v < b.v; });
  }

 private:
  const Objective& g_;
  std::size_t& evaluations_;
  std::vector<Sample> points_;
};

// Bisects [below, above] (g(below) < gamma <= g(above)) down to `xtol`;
// returns the end on the superlevel side.
Sample bisect_crossing(SampleSet& set, Sample below, Sample above, double gamma, double xtol) {
  while (std::abs(above.t - below.t) > xtol) {
    const double mid = 0.5 * (above.t + below.t);
    if (mid == above.t || mid == below.t) break;
    const double v = set.eval(mid);
    (v >= gamma ? above : below) = {mid, v};
  }
  return above;
}

struct Component {
  double lo;
  double hi;
};

std::vector<Component> superlevel_components(SampleSet& set, double gamma, double xtol) {
  std::vector<Component> out;
  std::vector<Sample> crossings;
  const auto pts = set.points();  // crossings are inserted only after the scan
  std::size_t i = 0;
  while (i < pts.size()) {
    if (pts[i].v < gamma) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < pts.size() && pts[j + 1].v >= gamma) ++j;
    const Sample left = i == 0 ? pts[i] : bisect_crossing(set, pts[i - 1], pts[i], gamma, xtol);
    const Sample right = j + 1 == pts.size() ? pts[j] : bisect_crossing(set, pts[j + 1], pts[j], gamma, xtol);
    crossings.push_back(left);
    crossings.push_back(right);
    out.push_back({left.t, right.t});
    i = j + 1;
  }
  for (const auto& c : crossings) set.insert(c.t, c.v);
  return out;
}

// Indices of discrete local maxima of the sample sequence, best first.
std::vector<std::size_t> sampled_peaks(const std::vector<Sample>& pts) {
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const bool left_ok = i == 0 || pts[i].v >= pts[i - 1].v;
    const bool right_ok = i + 1 == pts.size() || pts[i].v >= pts[i + 1].v;
    if (left_ok && right_ok) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return pts[a].v > pts[b].v; });
  return peaks;
}

SolveReport polish(const Objective& g, const std::vector<Sample>& pts, std::size_t i, double xtol) {
  const double lo = pts[i == 0 ? 0 : i - 1].t;
  const double hi = pts[i + 1 == pts.size() ? i : i + 1].t;
  if (!(lo < hi)) {
    SolveReport r;
    r.optimum = pts[i].v;
    r.locations = {pts[i].t};
    r.status = SolveStatus::endpoint;
    return r;
  }
  SolveReport r = maximize_bracket(g, lo, hi, xtol);
  if (pts[i].v > r.optimum) {
    r.optimum = pts[i].v;
    r.locations = {pts[i].t};
  }
  return r;
}

bool is_flat(const std::vector<Sample>& pts) {
  double lo = pts.front().v, hi = pts.front().v;
  for (const auto& s : pts) {
    lo = std::min(lo, s.v);
    hi = std::max(hi, s.v);
  }
  return hi - lo <= 16.0 * kEps * std::max(1.0, std::abs(hi));
}

void finish_on_boundary(SolveReport& report, const Interval& window) {
  const double at = report.locations.front();
  if (at == window.lo || at == window.hi) report.status = SolveStatus::endpoint;
}

}  // namespace

SolveReport levelset_maximize(const Objective& g, Interval window, const LevelSetOptions& options) {
  validate(window, options);
  SolveReport report;
  SampleSet set(g, window, options.samples, options.extra_points, options.threads, report.evaluations);
  const double xtol = std::max(1e-14 * window.width(), 4.0 * kEps * std::max(std::abs(window.lo), std::abs(window.hi)));

  if (is_flat(set.points())) {
    const Sample& best = set.best();
    report.optimum = best.v;
    report.locations = {best.t};
    report.certificates.push_back({best.t, best.v});
    report.iterations.push_back({best.v, window.width()});
    report.status = SolveStatus::flat;
    return report;
  }

  double gamma = set.best().v;
  if (options.initial_level) {
    if (!(*options.initial_level <= gamma)) throw ArgumentError("initial level exceeds every sample");
    gamma = *options.initial_level;
  }
  report.history.push_back(gamma);
  report.status = SolveStatus::max_iterations;
  int iterations = 0;
  for (int restart = 0; restart <= kMaxRestarts; ++restart) {
    for (; iterations < options.max_iterations; ++iterations) {
      const auto components = superlevel_components(set, gamma, xtol);
      double width = 0.0;
      double next = gamma;
      for (const auto& c : components) {
        width += c.hi - c.lo;
        const double mid = 0.5 * (c.lo + c.hi);
        const double v = set.eval(mid);
        set.insert(mid, v);
        report.certificates.push_back({mid, v});
        next = std::max(next, v);
      }
      report.iterations.push_back({gamma, width});
      const double rise = next - gamma;
      gamma = next;
      if (rise <= options.tol) {
        report.status = SolveStatus::converged;
        break;
      }
      report.history.push_back(gamma);
    }

    // Polish the winning peak, then look for sampled peaks that beat it.
    const auto& pts = set.points();
    const auto peaks = sampled_peaks(pts);
    SolveReport best = polish(g, pts, peaks.front(), xtol);
    report.evaluations += best.evaluations;
    bool improved = false;
    for (std::size_t k = 1; k < peaks.size() && k <= kSafeguardPeaks; ++k) {
      SolveReport other = polish(g, pts, peaks[k], xtol);
      report.evaluations += other.evaluations;
      if (other.optimum > best.optimum + options.tol) {
        best = other;
        improved = true;
      }
    }
    const double t_best = best.locations.front();
    set.insert(t_best, best.optimum);
    report.optimum = std::max(best.optimum, gamma);
    report.locations = {best.optimum >= gamma ? t_best : set.best().t};
    report.curvature = best.curvature;
    if (!improved || restart == kMaxRestarts || iterations >= options.max_iterations) break;
    gamma = best.optimum;
    report.history.push_back(gamma);
  }
  report.certificates.push_back({report.locations.front(), report.optimum});
  report.history.push_back(report.optimum);
  if (report.history.size() >= 4) report.empirical_order = empirical_order(report.history);
  if (report.status == SolveStatus::converged) finish_on_boundary(report, window);
  return report;
}

SolveReport grid_maximize(const Objective& g, Interval window, const LevelSetOptions& options) {
  validate(window, options);
  SolveReport report;
  SampleSet set(g, window, 16 * options.samples, options.extra_points, options.threads, report.evaluations);
  const auto& pts = set.points();
  const auto peaks = sampled_peaks(pts);
  const double xtol = std::max(1e-14 * window.width(), 4.0 * kEps * std::max(std::abs(window.lo), std::abs(window.hi)));
  report.iterations.push_back({set.best().v, window.width()});
  if (is_flat(pts)) {
    report.optimum = set.best().v;
    report.locations = {set.best().t};
    report.status = SolveStatus::flat;
    report.certificates.push_back({report.locations.front(), report.optimum});
    return report;
  }
  SolveReport best = polish(g, pts, peaks.front(), xtol);
  report.evaluations += best.evaluations;
  for (std::size_t k = 1; k < peaks.size() && k <= kSafeguardPeaks; ++k) {
    SolveReport other = polish(g, pts, peaks[k], xtol);
    report.evaluations += other.evaluations;
    if (other.optimum > best.optimum) best = other;
  }
  report.optimum = best.optimum;
  report.locations = best.locations;
  report.curvature = best.curvature;
  report.history = best.history;
  report.empirical_order = best.empirical_order;
  report.certificates.push_back({report.locations.front(), report.optimum});
  report.status = SolveStatus::converged;
  finish_on_boundary(report, window);
  return report;
}

Method parse_method(std::string_view name) {
  if (name == "levelset") return Method::levelset;
  if (name == "grid") return Method::grid;
  throw ArgumentError("unknown method: " + std::string(name));
}

}  // namespace maxsmooth
