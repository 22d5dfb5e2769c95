#pragma once

// Univariate analytic matrix families and their extremal eigenvalue and
// singular value functions.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxsmooth/lti.hpp"
#include "maxsmooth/maxfun.hpp"
#include "maxsmooth/report.hpp"
#include "maxsmooth/rng.hpp"

namespace maxsmooth {

class MatrixFamily {
 public:
  using Callable = std::function<CMatrix(double)>;

  // A(t) = sum_j coeffs[j] t^j; all coefficients share one shape.
  static MatrixFamily polynomial(std::vector<CMatrix> coeffs);
  // A(t) = G(i t).
  static MatrixFamily transfer_backed(std::shared_ptr<const LtiSystem> sys);
  static MatrixFamily callable(Eigen::Index rows, Eigen::Index cols, Callable fn,
                               std::string label = "callable");

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  const std::string& label() const { return label_; }
  CMatrix operator()(double t) const { return fn_(t); }

 private:
  MatrixFamily(Eigen::Index rows, Eigen::Index cols, Callable fn, std::string label);

  Eigen::Index rows_, cols_;
  Callable fn_;
  std::string label_;
};

enum class HermitianRep { polynomial, rotated_diagonal, gram, callable };

class HermitianFamily {
 public:
  using Callable = std::function<CMatrix(double)>;
  using Curve = std::function<double(double)>;

  // Each coefficient must be exactly Hermitian.
  static HermitianFamily polynomial(std::vector<CMatrix> coeffs);
  // U diag(curves(t)) U*; U must be unitary to 1e-12.
  static HermitianFamily rotated_diagonal(CMatrix u, std::vector<Curve> curves);
  // A(t)* A(t) when rows >= cols, else A(t) A(t)*.
  static HermitianFamily gram(MatrixFamily a);
  // Hermitian part of e^{i theta} A: (e^{i theta} A + e^{-i theta} A*) / 2.
  static HermitianFamily rotated_hermitian_part(CMatrix a);
  // `fn` must return Hermitian matrices; the result is symmetrized.
  static HermitianFamily callable(Eigen::Index n, Callable fn, std::string label = "callable");

  HermitianFamily negated() const;

  Eigen::Index dim() const { return n_; }
  HermitianRep rep() const { return rep_; }
  const std::string& label() const { return label_; }
  CMatrix operator()(double t) const { return fn_(t); }

  // Polynomial coefficients (empty for other representations).
  const std::vector<CMatrix>& coefficients() const { return coeffs_; }
  // Stored eigencurve values for rotated_diagonal families.
  std::optional<std::vector<double>> curve_values(double t) const;

 private:
  HermitianFamily(Eigen::Index n, HermitianRep rep, Callable fn, std::string label);

  Eigen::Index n_;
  HermitianRep rep_;
  Callable fn_;
  std::string label_;
  std::vector<CMatrix> coeffs_;
  std::vector<Curve> curves_;
  bool curves_negated_ = false;
};

enum class ExtremalKind { lambda_max, lambda_min, spec_radius, inner_spec_radius, sigma_max, sigma_min };

std::string_view kind_name(ExtremalKind kind);
ExtremalKind parse_kind(std::string_view name);
// Kinds whose natural extremizers are minimizers.
bool is_min_kind(ExtremalKind kind);

class ExtremalFunction {
 public:
  // lambda and rho kinds; ArgumentError for sigma kinds.
  ExtremalFunction(HermitianFamily family, ExtremalKind kind);
  // sigma kinds; ArgumentError otherwise.
  ExtremalFunction(MatrixFamily family, ExtremalKind kind);

  ExtremalKind kind() const { return kind_; }
  const HermitianFamily& family() const { return family_; }
  double operator()(double t) const;

  // Number of eigenvalues (singular values for sigma kinds) within
  // kClusterTolerance * ||H(t)|| of the extremal one.
  int cluster_size(double t) const;
  // ||A(t)||_2 for sigma kinds, ||H(t)||_2 otherwise.
  double matrix_norm(double t) const;

 private:
  HermitianFamily family_;  // the Gram family for sigma kinds
  ExtremalKind kind_;
};

inline constexpr double kClusterTolerance = 1e-10;
inline constexpr double kSingularTolerance = 1e-12;

double eval_extremal(const ExtremalFunction& f, double t);

// Sorted eigenvalues of a Hermitian matrix.
Eigen::VectorXd hermitian_eigenvalues(const CMatrix& h);
// Largest singular value through the Gram matrix.
double sigma_max(const CMatrix& a);
double sigma_min(const CMatrix& a);

enum class ProbeStatus { smooth, nonsmooth, assumption_violated };
std::string_view probe_status_name(ProbeStatus status);

struct ProbeOptions {
  int first_exponent = 2;   // steps h = 2^-first .. 2^-last
  int last_exponent = 26;   // step floor 2^-26
  double match_tolerance = 1e-4;
  double noise_fraction = 0.1;  // a step is reliable when rounding noise < fraction * tolerance
};

struct ProbeRow {
  double step = 0.0;
  double first_left = 0.0;    // (f(x) - f(x-h)) / h
  double first_right = 0.0;   // (f(x+h) - f(x)) / h
  double second_left = 0.0;   // (f(x) - 2 f(x-h) + f(x-2h)) / h^2
  double second_right = 0.0;  // (f(x) - 2 f(x+h) + f(x+2h)) / h^2
  double central_first = 0.0;
  double central_second = 0.0;
  bool reliable = false;
};

struct ProbeReport {
  double point = 0.0;
  double value = 0.0;
  double scale = 0.0;  // max(|f(x)|, ||H(x)||)
  std::vector<ProbeRow> rows;
  // Richardson-extrapolated one-sided values at the smallest reliable step.
  double fd_first_left = 0.0;
  double fd_first_right = 0.0;
  double fd_second_left = 0.0;
  double fd_second_right = 0.0;
  double used_step = 0.0;
  double step_floor = 0.0;
  double lipschitz_estimate = 0.0;
  int cluster_size = 1;
  ProbeStatus status = ProbeStatus::nonsmooth;
  bool smooth = false;
};

ProbeReport smoothness_probe(const ExtremalFunction& f, double x, const ProbeOptions& options = {});

// Brent's method (golden section with parabolic steps) maximizing `g` on [a, b].
// Location accuracy is limited to about sqrt(eps) |t| by rounding.
SolveReport maximize_bracket(const std::function<double(double)>& g, double a, double b, double tol);

// Maximizes max-kinds and minimizes min-kinds over the bracket.
SolveReport local_refine(const ExtremalFunction& f, double a, double b, double tol = 1e-10);


HermitianFamily random_hermitian_family(std::uint64_t seed, int n, int degree);
MatrixFamily random_matrix_family(std::uint64_t seed, int rows, int cols, int degree);

}  // namespace maxsmooth
