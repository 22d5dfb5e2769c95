#pragma once

// The piecewise-polynomial pair (f1, f2 = f1(-t)) whose maximum has an
// isolated maximizer at 0 yet fails to be differentiable at every crossing
// t_k = 3 * 2^-(k+2).
//
// On [l_{k+1}, l_k] with l_k = 2^-k, f1 is a polynomial p_k of degree 2q+3
// that matches -t^2 through order q at both endpoints, agrees with -t^2 at the
// midpoint t_k, and has slope s_k * (-2 t_k) there. On [-1, 0], f1 = -t^2.
//
// Coefficients are exact rationals. Double-precision evaluation goes through
// the deviation p_k + t^2 written in the centered local variable
// u = t / l_{k+1} - 3/2, which keeps every piece well scaled no matter how
// deep k goes.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "maxsmooth/maxfun.hpp"

namespace maxsmooth {

using Rational = boost::multiprecision::cpp_rational;

// 2^e as an exact rational; e may be negative.
Rational pow2(int e);
double to_double(const Rational& r);

enum class SlopeKind { quarter_decay, half_decay, constant_two, general_q, custom };

class SlopeSequence {
 public:
  using ExcessRule = std::function<Rational(int k)>;

  static SlopeSequence quarter_decay();  // s_k = 1 + 2^-2k
  static SlopeSequence half_decay();     // s_k = 1 + 2^-k
  static SlopeSequence constant_two();  // s_k = 2
  // Conjectured rule for C^q: 1 + 2^-(k+1) when q = 1, else 1 + 2^-((q-1)k).
  static SlopeSequence general_q(int q);
  static SlopeSequence custom(std::string label, ExcessRule excess);

  // Accepts "a", "b", "two", "q=<n>".
  static SlopeSequence parse(std::string_view text);

  SlopeKind kind() const { return kind_; }
  int q() const { return q_; }
  const std::string& label() const { return label_; }

  // s_k - 1, exact. Kept separately because 1 + 2^-2k is not a double for k > 26.
  Rational excess(int k) const;
  Rational value(int k) const { return 1 + excess(k); }

 private:
  SlopeSequence(SlopeKind kind, int q, std::string label, ExcessRule excess);

  SlopeKind kind_;
  int q_;
  std::string label_;
  ExcessRule excess_;
};

class DyadicGrid {
 public:
  explicit DyadicGrid(int k_max);
  int k_max() const { return k_max_; }
  static double breakpoint(int k);  // l_k = 2^-k
  static double midpoint(int k);    // t_k = 3 * 2^-(k+2)
  static Rational exact_breakpoint(int k);
  static Rational exact_midpoint(int k);

 private:
  int k_max_;
};

// Integers z_j of the closed-form coefficients, index j = 0..9.
struct CoefficientTable {
  static constexpr std::array<std::int64_t, 10> z = {
      4608, -61440, 359424, -1210368, 2585088, -3631104, 3354624, -1966080, 663552, -98304};
};

enum class Provenance { vandermonde_solve, closed_form };
enum class ClosedFormVariant { quarter_decay, half_decay };

struct PkPolynomial {
  int k = 0;
  int q = 3;
  std::vector<Rational> coeffs;  // monomial basis, c_0 .. c_{2q+3}
  Provenance provenance = Provenance::vandermonde_solve;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Rational eval_exact(const Rational& t, int order = 0) const;
};

// Exact Hermite-type solve: orders 0..q match -t^2 at l_{k+1} and l_k, value
// matches at t_k, slope is s_k * (-2 t_k) at t_k.
PkPolynomial solve_pk(int k, const Rational& slope, int q = 3);

// c_j = z_j 2^((j-4)k) (variant a) or z_j 2^((j-3)k) (variant b), minus 1 when j = 2.
PkPolynomial closed_form_coeffs(int k, ClosedFormVariant variant);

// Residuals of the 2q+4 defining constraints, in exact arithmetic. Order:
// orders 0..q at l_{k+1}, orders 0..q at l_k, value at t_k, slope at t_k.
std::vector<Rational> constraint_residuals_exact(const PkPolynomial& p, const Rational& slope);

class CounterexampleFunction {
 public:
  explicit CounterexampleFunction(SlopeSequence slopes, int k_max = 40, int q = 3);

  const DyadicGrid& grid() const { return grid_; }
  int k_max() const { return grid_.k_max(); }
  int q() const { return q_; }
  const SlopeSequence& slopes() const { return slopes_; }
  const PkPolynomial& piece(int k) const;

  // Order-th derivative of f1. At t = l_k returns the right piece; at t = 0
  // returns the left-tail values. ResolutionError for 0 < t < l_{kmax+1}.
  double f(double t, int order = 0) const;
  double f_one_sided(double t, int order, Side side) const;
  double fmax(double t) const;

  // Piece k's polynomial at arbitrary t (not restricted to its interval).
  double piece_deriv(int k, double t, int order) const;
  // Order-th derivative of p_k + t^2 only.
  double piece_deviation(int k, double t, int order) const;

  // Which piece owns t in (0, 1]: piece k owns [l_{k+1}, l_k), piece 0 also owns 1.
  int piece_index(double t) const;

  Rational f_exact(const Rational& t) const;
  Rational fmax_exact(const Rational& t) const;

  // The 2q+4 constraint residuals of piece k evaluated in double.
  std::vector<double> constraint_residuals(int k) const;

 private:
  struct Piece {
    PkPolynomial poly;
    std::vector<double> centered;  // deviation coefficients in u
  };

  void check_resolution(double t) const;
  int piece_index_exact(const Rational& t) const;

  SlopeSequence slopes_;
  DyadicGrid grid_;
  int q_;
  std::vector<Piece> pieces_;
};

double eval_f(const CounterexampleFunction& fn, double t, int order = 0);
double eval_fmax(const CounterexampleFunction& fn, double t);

// Right minus left derivative of f_max at t_k.
double kink_gap(const CounterexampleFunction& fn, int k);

struct BreakpointJump {
  int k = 0;             // breakpoint l_{k+1}, shared by pieces k and k+1
  double point = 0.0;
  std::vector<double> jumps;  // per derivative order, scaled by max(1, |(-t^2)^(n)|)
};

struct SmoothnessReport {
  int k_first = 0;
  int k_last = 0;
  int order = 3;
  std::vector<BreakpointJump> per_breakpoint_jumps;
  // sup |f1^(order) - (-t^2)^(order)| per interval; equals sup |f1'''| for order 3.
  std::vector<double> sup_deriv;
  std::vector<double> sup_first_deviation;  // sup |f1' + 2t| per interval
  double max_jump = 0.0;
  bool jumps_ok = false;
  bool sup_nonincreasing = false;
  bool c3_plausible = false;  // jumps ok and sup trend decays below 5% of its first value
};

inline constexpr int kGridPointsPerInterval = 1000;
inline constexpr double kJumpTolerance = 1e-8;
inline constexpr double kDecayRatio = 0.05;

SmoothnessReport verify_smoothness(const CounterexampleFunction& fn, int k_first, int k_last,
                                   int order);
SmoothnessReport verify_c3(const CounterexampleFunction& fn, int k_first, int k_last);

// Upper bound on p_k'(l_{k+1} zeta) for zeta in [1, 2] under quarter_decay slopes.
double isolation_bound(int k);
Rational isolation_bound_exact(int k);

struct IsolationReport {
  bool decreasing = true;
  bool negative = true;
  std::optional<int> first_nonmonotone_piece;
  bool isolated() const { return decreasing && negative; }
};

IsolationReport check_isolated_max(const CounterexampleFunction& fn, int k_start, int k_end);
bool verify_isolated_max(const CounterexampleFunction& fn, int k_start, int k_end);

struct GeneralizeRow {
  int k = 0;
  double slope_excess = 0.0;
  double sup_deriv = 0.0;           // sup |f1^(q)| on the interval
  double midpoint_slope_residual = 0.0;
  bool decreasing = false;
};

struct GeneralizeReport {
  int q = 0;
  std::string slope_label;
  std::vector<GeneralizeRow> rows;
  double max_jump = 0.0;  // orders 0..q, scaled
  bool sup_decays = false;
  bool all_decreasing = false;
};

GeneralizeReport generalize_q(int q, int k_first, int k_last,
                              std::optional<SlopeSequence> slope_rule = std::nullopt);

enum class Figure { f1_only, f1_and_f2, derivs_a, derivs_b, fmax_and_derivs };

Figure parse_figure(std::string_view name);
std::string_view figure_name(Figure figure);
SlopeSequence figure_slopes(Figure figure);

// Writes a CSV table (header row, 17 significant digits). Returns rows written.
std::size_t emit_plot_data(Figure figure, int resolution, std::ostream& sink,
                           std::optional<SlopeSequence> slopes = std::nullopt, int k_max = 40);

// The pair {f1, f2} as a MaxFunction on [-1, 1].
MaxFunction as_max_function(std::shared_ptr<const CounterexampleFunction> fn);

}  // namespace maxsmooth
