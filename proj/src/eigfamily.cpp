#include "maxsmooth/eigfamily.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxsmooth/errors.hpp"

namespace maxsmooth {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

CMatrix symmetrize(const CMatrix& h) { return 0.5 * (h + h.adjoint()); }

CMatrix horner(const std::vector<CMatrix>& coeffs, double t) {
  CMatrix acc = coeffs.back();
  for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

}  // namespace

MatrixFamily::MatrixFamily(Eigen::Index rows, Eigen::Index cols, Callable fn, std::string label)
    : rows_(rows), cols_(cols), fn_(std::move(fn)), label_(std::move(label)) {
  if (rows_ < 1 || cols_ < 1) throw ArgumentError("MatrixFamily: dimensions must be positive");
  if (!fn_) throw ArgumentError("MatrixFamily: missing evaluator");
}

MatrixFamily MatrixFamily::polynomial(std::vector<CMatrix> coeffs) {
  if (coeffs.empty()) throw ArgumentError("MatrixFamily: no coefficients");
  const Eigen::Index rows = coeffs.front().rows(), cols = coeffs.front().cols();
  for (const auto& c : coeffs)
    if (c.rows() != rows || c.cols() != cols)
      throw ArgumentError("MatrixFamily: coefficient shapes differ");
  return MatrixFamily(rows, cols, [coeffs = std::move(coeffs)](double t) { return horner(coeffs, t); },
                      "polynomial");
}

MatrixFamily MatrixFamily::transfer_backed(std::shared_ptr<const LtiSystem> sys) {
  if (!sys) throw ArgumentError("MatrixFamily: null system");
  const Eigen::Index rows = sys->p(), cols = sys->m();
  return MatrixFamily(rows, cols, [sys = std::move(sys)](double omega) { return transfer_eval(*sys, omega); },
                      "transfer");
}

MatrixFamily MatrixFamily::callable(Eigen::Index rows, Eigen::Index cols, Callable fn, std::string label) {
  return MatrixFamily(rows, cols, std::move(fn), std::move(label));
}

HermitianFamily::HermitianFamily(Eigen::Index n, HermitianRep rep, Callable fn, std::string label)
    : n_(n), rep_(rep), fn_(std::move(fn)), label_(std::move(label)) {
  if (n_ < 1) throw ArgumentError("HermitianFamily: dimension must be positive");
  if (!fn_) throw ArgumentError("HermitianFamily: missing evaluator");
}

HermitianFamily HermitianFamily::polynomial(std::vector<CMatrix> coeffs) {
  if (coeffs.empty()) throw ArgumentError("HermitianFamily: no coefficients");
  const Eigen::Index n = coeffs.front().rows();
  for (const auto& c : coeffs) {
    if (c.rows() != n || c.cols() != n) throw ArgumentError("HermitianFamily: coefficients must be n x n");
    if (c != c.adjoint()) throw ArgumentError("HermitianFamily: coefficient is not Hermitian");
  }
  HermitianFamily out(n, HermitianRep::polynomial, [coeffs](double t) { return horner(coeffs, t); },
                      "polynomial");
  out.coeffs_ = std::move(coeffs);
  return out;
}

HermitianFamily HermitianFamily::rotated_diagonal(CMatrix u, std::vector<Curve> curves) {
  const Eigen::Index n = u.rows();
  if (u.cols() != n || static_cast<Eigen::Index>(curves.size()) != n)
    throw ArgumentError("rotated_diagonal: U must be n x n with n curves");
  const CMatrix defect = u.adjoint() * u - CMatrix::Identity(n, n);
  if (defect.norm() > 1e-12 * static_cast<double>(n))
    throw ArgumentError("rotated_diagonal: U is not unitary");
  auto fn = [u, curves](double t) {
    Eigen::VectorXcd d(u.rows());
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = curves[static_cast<std::size_t>(i)](t);
    return symmetrize(u * d.asDiagonal() * u.adjoint());
  };
  HermitianFamily out(n, HermitianRep::rotated_diagonal, std::move(fn), "rotated_diagonal");
  out.curves_ = std::move(curves);
  return out;
}

HermitianFamily HermitianFamily::gram(MatrixFamily a) {
  const bool tall = a.rows() >= a.cols();
  const Eigen::Index n = tall ? a.cols() : a.rows();
  auto fn = [a = std::move(a), tall](double t) {
    const CMatrix m = a(t);
    return symmetrize(tall ? CMatrix(m.adjoint() * m) : CMatrix(m * m.adjoint()));
  };
  return HermitianFamily(n, HermitianRep::gram, std::move(fn), "gram");
}

HermitianFamily HermitianFamily::rotated_hermitian_part(CMatrix a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw ArgumentError("rotated_hermitian_part: matrix must be square");
  const Eigen::Index n = a.rows();
  auto fn = [a = std::move(a)](double theta) {
    const Complex phase = std::polar(1.0, theta);
    return symmetrize(0.5 * (phase * a + std::conj(phase) * a.adjoint()));
  };
  return HermitianFamily(n, HermitianRep::callable, std::move(fn), "rotated_hermitian_part");
}

HermitianFamily HermitianFamily::callable(Eigen::Index n, Callable fn, std::string label) {
  if (!fn) throw ArgumentError("HermitianFamily: missing evaluator");
  auto wrapped = [n, fn = std::move(fn)](double t) {
    CMatrix h = fn(t);
    if (h.rows() != n || h.cols() != n) throw ArgumentError("HermitianFamily: evaluator returned wrong shape");
    return symmetrize(h);
  };
  return HermitianFamily(n, HermitianRep::callable, std::move(wrapped), std::move(label));
}

HermitianFamily HermitianFamily::negated() const {
  HermitianFamily out(n_, rep_, [fn = fn_](double t) { return CMatrix(-fn(t)); }, "-" + label_);
  for (const auto& c : coeffs_) out.coeffs_.push_back(-c);
  out.curves_ = curves_;
  out.curves_negated_ = !curves_negated_;
  return out;
}

std::optional<std::vector<double>> HermitianFamily::curve_values(double t) const {
  if (curves_.empty()) return std::nullopt;
  std::vector<double> out;
  for (const auto& c : curves_) out.push_back(curves_negated_ ? -c(t) : c(t));
  return out;
}

std::string_view kind_name(ExtremalKind kind) {
  switch (kind) {
    case ExtremalKind::lambda_max: return "lambda_max";
    case ExtremalKind::lambda_min: return "lambda_min";
    case ExtremalKind::spec_radius: return "spec_radius";
    case ExtremalKind::inner_spec_radius: return "inner_spec_radius";
    case ExtremalKind::sigma_max: return "sigma_max";
    case ExtremalKind::sigma_min: return "sigma_min";
  }
  return "unknown";
}

ExtremalKind parse_kind(std::string_view name) {
  for (auto k : {ExtremalKind::lambda_max, ExtremalKind::lambda_min, ExtremalKind::spec_radius,
                 ExtremalKind::inner_spec_radius, ExtremalKind::sigma_max, ExtremalKind::sigma_min})
    if (kind_name(k) == name) return k;
  throw ArgumentError("unknown extremal kind: " + std::string(name));
}

bool is_min_kind(ExtremalKind kind) {
  return kind == ExtremalKind::lambda_min || kind == ExtremalKind::inner_spec_radius ||
         kind == ExtremalKind::sigma_min;
}

namespace {

bool is_sigma_kind(ExtremalKind kind) {
  return kind == ExtremalKind::sigma_max || kind == ExtremalKind::sigma_min;
}

// Values among which the extremal one is chosen: eigenvalues, |eigenvalues|,
// or singular values, depending on the kind.
Eigen::VectorXd candidate_values(ExtremalKind kind, const Eigen::VectorXd& ev) {
  switch (kind) {
    case ExtremalKind::lambda_max:
    case ExtremalKind::lambda_min: return ev;
    case ExtremalKind::spec_radius:
    case ExtremalKind::inner_spec_radius: return ev.cwiseAbs();
    case ExtremalKind::sigma_max:
    case ExtremalKind::sigma_min: return ev.cwiseMax(0.0).cwiseSqrt();
  }
  return ev;
}

double extremal_of(ExtremalKind kind, const Eigen::VectorXd& ev) {
  const Eigen::VectorXd v = candidate_values(kind, ev);
  switch (kind) {
    case ExtremalKind::lambda_max:
    case ExtremalKind::spec_radius:
    case ExtremalKind::sigma_max: return v.maxCoeff();
    case ExtremalKind::lambda_min:
    case ExtremalKind::sigma_min: return v.minCoeff();
    case ExtremalKind::inner_spec_radius: {
      const double smallest = v.minCoeff();
      return smallest <= kSingularTolerance * v.maxCoeff() ? 0.0 : smallest;
    }
  }
  return v.maxCoeff();
}

}  // namespace

ExtremalFunction::ExtremalFunction(HermitianFamily family, ExtremalKind kind)
    : family_(std::move(family)), kind_(kind) {
  if (is_sigma_kind(kind_)) throw ArgumentError("sigma kinds need a MatrixFamily");
}

ExtremalFunction::ExtremalFunction(MatrixFamily family, ExtremalKind kind)
    : family_(HermitianFamily::gram(std::move(family))), kind_(kind) {
  if (!is_sigma_kind(kind_)) throw ArgumentError("lambda and rho kinds need a HermitianFamily");
}

double ExtremalFunction::operator()(double t) const {
  return extremal_of(kind_, hermitian_eigenvalues(family_(t)));
}

double ExtremalFunction::matrix_norm(double t) const {
  const Eigen::VectorXd ev = hermitian_eigenvalues(family_(t));
  const double norm = ev.cwiseAbs().maxCoeff();
  return is_sigma_kind(kind_) ? std::sqrt(norm) : norm;
}

int ExtremalFunction::cluster_size(double t) const {
  const Eigen::VectorXd ev = hermitian_eigenvalues(family_(t));
  const Eigen::VectorXd v = candidate_values(kind_, ev);
  const double target = extremal_of(kind_, ev);
  const double tol = kClusterTolerance * v.cwiseAbs().maxCoeff();
  return static_cast<int>(((v.array() - target).abs() <= tol).count());
}

double eval_extremal(const ExtremalFunction& f, double t) { return f(t); }

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& h) {
  const Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  return solver.eigenvalues();
}

double sigma_max(const CMatrix& a) {
  const CMatrix gram = a.rows() >= a.cols() ? CMatrix(a.adjoint() * a) : CMatrix(a * a.adjoint());
  return std::sqrt(std::max(0.0, hermitian_eigenvalues(symmetrize(gram)).maxCoeff()));
}

double sigma_min(const CMatrix& a) {
  const CMatrix gram = a.rows() >= a.cols() ? CMatrix(a.adjoint() * a) : CMatrix(a * a.adjoint());
  return std::sqrt(std::max(0.0, hermitian_eigenvalues(symmetrize(gram)).minCoeff()));
}

std::string_view probe_status_name(ProbeStatus status) {
  switch (status) {
    case ProbeStatus::smooth: return "smooth";
    case ProbeStatus::nonsmooth: return "nonsmooth";
    case ProbeStatus::assumption_violated: return "assumption_violated";
  }
  return "unknown";
}

ProbeReport smoothness_probe(const ExtremalFunction& f, double x, const ProbeOptions& options) {
  if (options.first_exponent < 0 || options.first_exponent >= options.last_exponent)
    throw ArgumentError("smoothness_probe: bad step schedule");
  ProbeReport report;
  report.point = x;
  report.value = f(x);
  const double norm = f.matrix_norm(x);
  report.scale = std::max(std::abs(report.value), norm);
  report.step_floor = std::ldexp(1.0, -options.last_exponent);
  report.cluster_size = f.cluster_size(x);

  // Absolute rounding error of one evaluation of the extremal value.
  const double n = static_cast<double>(f.family().dim());
  const double noise = 8.0 * n * kEps * std::max(report.scale, kEps);
  const double budget = options.noise_fraction * options.match_tolerance;

  for (int i = options.first_exponent; i <= options.last_exponent; ++i) {
    const double h = std::ldexp(1.0, -i);
    const double r1 = f(x + h), r2 = f(x + 2.0 * h);
    const double l1 = f(x - h), l2 = f(x - 2.0 * h);
    ProbeRow row;
    row.step = h;
    row.first_right = (r1 - report.value) / h;
    row.first_left = (report.value - l1) / h;
    row.second_right = (report.value - 2.0 * r1 + r2) / (h * h);
    row.second_left = (report.value - 2.0 * l1 + l2) / (h * h);
    row.central_first = (r1 - l1) / (2.0 * h);
    row.central_second = (r1 - 2.0 * report.value + l1) / (h * h);
    const double magnitude = std::max(std::abs(row.second_left), std::abs(row.second_right));
    row.reliable = 4.0 * noise / (h * h) <= budget * (1.0 + magnitude);
    report.rows.push_back(row);
  }

  // Smallest step pair (h, h/2) with both rows reliable; fall back to the largest steps.
  std::size_t pick = 0;
  for (std::size_t i = 0; i + 1 < report.rows.size(); ++i)
    if (report.rows[i].reliable && report.rows[i + 1].reliable) pick = i;
  const ProbeRow& coarse = report.rows[pick];
  const ProbeRow& fine = report.rows[pick + 1];
  report.used_step = fine.step;
  report.fd_first_left = 2.0 * fine.first_left - coarse.first_left;
  report.fd_first_right = 2.0 * fine.first_right - coarse.first_right;
  report.fd_second_left = 2.0 * fine.second_left - coarse.second_left;
  report.fd_second_right = 2.0 * fine.second_right - coarse.second_right;

  for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
    const ProbeRow& a = report.rows[i];
    const ProbeRow& b = report.rows[i + 1];
    if (!a.reliable || !b.reliable) continue;
    const double dt = a.step - b.step;
    report.lipschitz_estimate = std::max({report.lipschitz_estimate,
                                          std::abs(a.second_left - b.second_left) / dt,
                                          std::abs(a.second_right - b.second_right) / dt});
  }

  const auto agree = [&](double left, double right) {
    const double scale = std::max(std::abs(left), std::abs(right));
    return std::abs(left - right) <= options.match_tolerance * (1.0 + scale);
  };
  const bool needs_nonzero =
      f.kind() == ExtremalKind::sigma_min || f.kind() == ExtremalKind::inner_spec_radius;
  if (needs_nonzero && report.value <= 1e-8 * norm) {
    report.status = ProbeStatus::assumption_violated;
  } else if (agree(report.fd_first_left, report.fd_first_right) &&
             agree(report.fd_second_left, report.fd_second_right)) {
    report.status = ProbeStatus::smooth;
  } else {
    report.status = ProbeStatus::nonsmooth;
  }
  report.smooth = report.status == ProbeStatus::smooth;
  return report;
}

SolveReport maximize_bracket(const std::function<double(double)>& g, double a, double b, double tol) {
  if (!(a < b)) throw ArgumentError("bracket must satisfy a < b");
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  constexpr double kGolden = 0.3819660112501051;
  constexpr int kMaxIterations = 500;
  SolveReport report;
  const double lo0 = a, hi0 = b;
  auto h = [&](double t) {
    ++report.evaluations;
    return -g(t);
  };

  double x = a + kGolden * (b - a);
  double w = x, v = x;
  double fx = h(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  report.history.push_back(x);
  int iteration = 0;
  for (; iteration < kMaxIterations; ++iteration) {
    const double xm = 0.5 * (a + b);
    const double tol1 = 2.0 * kEps * std::abs(x) + tol / 3.0;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    bool golden = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = xm >= x ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = x >= xm ? a - x : b - x;
      d = kGolden * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + (d >= 0.0 ? tol1 : -tol1);
    const double fu = h(u);
    if (fu <= fx) {
      (u >= x ? a : b) = x;
      v = w, fv = fw;
      w = x, fw = fx;
      x = u, fx = fu;
      report.history.push_back(x);
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w, fv = fw;
        w = u, fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u, fv = fu;
      }
    }
  }

  double best = x, best_value = -fx;
  report.status = iteration == kMaxIterations ? SolveStatus::max_iterations : SolveStatus::converged;
  for (double end : {lo0, hi0}) {
    const double value = g(end);
    ++report.evaluations;
    if (value >= best_value && (value > best_value || std::abs(best - end) <= 2.0 * tol)) {
      best = end;
      best_value = value;
      report.status = SolveStatus::endpoint;
    }
  }
  report.optimum = best_value;
  report.locations = {best};
  report.certificates.push_back({best, best_value});
  if (report.history.back() != best) report.history.push_back(best);
  if (report.history.size() >= 4) report.empirical_order = empirical_order(report.history);

  const double step = std::min({1e-4 * std::max(1.0, std::abs(best)), best - lo0, hi0 - best});
  if (report.status != SolveStatus::endpoint && step > 1e-7) {
    report.curvature = (g(best + step) - 2.0 * best_value + g(best - step)) / (step * step);
    report.evaluations += 2;
  }
  return report;
}

SolveReport local_refine(const ExtremalFunction& f, double a, double b, double tol) {
  if (!(a < b)) throw ArgumentError("local_refine: bracket must satisfy a < b");
  const double sign = is_min_kind(f.kind()) ? -1.0 : 1.0;
  SolveReport report = maximize_bracket([&](double t) { return sign * f(t); }, a, b, tol);
  report.optimum *= sign;
  report.curvature *= sign;
  for (auto& c : report.certificates) c.value *= sign;
  return report;
}

HermitianFamily random_hermitian_family(std::uint64_t seed, int n, int degree) {
  if (n < 1 || degree < 0) throw ArgumentError("random_hermitian_family: need n >= 1, degree >= 0");
  Rng rng(seed);
  std::vector<CMatrix> coeffs;
  for (int d = 0; d <= degree; ++d) {
    CMatrix h(n, n);
    for (int i = 0; i < n; ++i) {
      h(i, i) = rng.normal();
      for (int j = i + 1; j < n; ++j) {
        h(i, j) = rng.complex_normal();
        h(j, i) = std::conj(h(i, j));
      }
    }
    coeffs.push_back(std::move(h));
  }
  return HermitianFamily::polynomial(std::move(coeffs));
}

MatrixFamily random_matrix_family(std::uint64_t seed, int rows, int cols, int degree) {
  if (rows < 1 || cols < 1 || degree < 0)
    throw ArgumentError("random_matrix_family: need positive dimensions, degree >= 0");
  Rng rng(seed);
  std::vector<CMatrix> coeffs;
  for (int d = 0; d <= degree; ++d) {
    CMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) a(i, j) = rng.complex_normal();
    coeffs.push_back(std::move(a));
  }
  return MatrixFamily::polynomial(std::move(coeffs));
}

}  // namespace maxsmooth
