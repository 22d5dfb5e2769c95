#include "maxsmooth/counterexample.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "maxsmooth/errors.hpp"

namespace maxsmooth {

namespace mp = boost::multiprecision;

Rational pow2(int e) {
  if (e >= 0) return Rational(mp::cpp_int(1) << e);
  return Rational(1) / Rational(mp::cpp_int(1) << -e);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

// j (j-1) ... (j-order+1)
std::int64_t falling(int j, int order) {
  std::int64_t out = 1;
  for (int i = 0; i < order; ++i) out *= (j - i);
  return out;
}

Rational rational_power(const Rational& base, int e) {
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

// Derivatives of -t^2.
double base_deriv(double t, int order) {
  switch (order) {
    case 0: return -t * t;
    case 1: return -2.0 * t;
    case 2: return -2.0;
    default: return 0.0;
  }
}

Rational base_deriv_exact(const Rational& t, int order) {
  switch (order) {
    case 0: return -t * t;
    case 1: return -2 * t;
    case 2: return Rational(-2);
    default: return Rational(0);
  }
}

void check_q(int q) {
  if (q < 1) throw ArgumentError("q must be >= 1");
}

}  // namespace

SlopeSequence::SlopeSequence(SlopeKind kind, int q, std::string label, ExcessRule excess)
    : kind_(kind), q_(q), label_(std::move(label)), excess_(std::move(excess)) {}

SlopeSequence SlopeSequence::quarter_decay() {
  return {SlopeKind::quarter_decay, 3, "1+2^-2k", [](int k) { return pow2(-2 * k); }};
}

SlopeSequence SlopeSequence::half_decay() {
  return {SlopeKind::half_decay, 3, "1+2^-k", [](int k) { return pow2(-k); }};
}

SlopeSequence SlopeSequence::constant_two() {
  return {SlopeKind::constant_two, 3, "2", [](int) { return Rational(1); }};
}

SlopeSequence SlopeSequence::general_q(int q) {
  check_q(q);
  if (q == 1) return {SlopeKind::general_q, 1, "1+2^-(k+1)", [](int k) { return pow2(-(k + 1)); }};
  return {SlopeKind::general_q, q, "1+2^-" + std::to_string(q - 1) + "k",
          [q](int k) { return pow2(-(q - 1) * k); }};
}

SlopeSequence SlopeSequence::custom(std::string label, ExcessRule excess) {
  if (!excess) throw ArgumentError("custom slope rule is empty");
  return {SlopeKind::custom, 3, std::move(label), std::move(excess)};
}

SlopeSequence SlopeSequence::parse(std::string_view text) {
  if (text == "a") return quarter_decay();
  if (text == "b") return half_decay();
  if (text == "two") return constant_two();
  if (text.starts_with("q=")) {
    int q = 0;
    const auto digits = text.substr(2);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && q >= 1) return general_q(q);
  }
  throw ArgumentError("unknown slope sequence '" + std::string(text) + "' (expected a, b, two, q=<n>)");
}

Rational SlopeSequence::excess(int k) const {
  if (k < 0) throw ArgumentError("slope index must be >= 0");
  return excess_(k);
}

DyadicGrid::DyadicGrid(int k_max) : k_max_(k_max) {
  if (k_max < 0) throw ArgumentError("k_max must be >= 0");
}

double DyadicGrid::breakpoint(int k) { return std::ldexp(1.0, -k); }
double DyadicGrid::midpoint(int k) { return std::ldexp(3.0, -(k + 2)); }
Rational DyadicGrid::exact_breakpoint(int k) { return pow2(-k); }
Rational DyadicGrid::exact_midpoint(int k) { return 3 * pow2(-(k + 2)); }

Rational PkPolynomial::eval_exact(const Rational& t, int order) const {
  Rational acc = 0;
  for (int j = degree(); j >= order; --j)
    acc = acc * t + Rational(falling(j, order)) * coeffs[static_cast<std::size_t>(j)];
  return acc;
}

PkPolynomial solve_pk(int k, const Rational& slope, int q) {
  if (k < 0) throw ArgumentError("solve_pk: k must be >= 0");
  if (slope <= 0) throw ArgumentError("solve_pk: slope factor must be positive");
  check_q(q);
  const int n = 2 * q + 4;
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n),
                                       std::vector<Rational>(static_cast<std::size_t>(n + 1)));
  int row = 0;
  auto add_row = [&](const Rational& t, int order, const Rational& rhs) {
    auto& r = a[static_cast<std::size_t>(row++)];
    for (int j = order; j < n; ++j)
      r[static_cast<std::size_t>(j)] = Rational(falling(j, order)) * rational_power(t, j - order);
    r[static_cast<std::size_t>(n)] = rhs;
  };
  for (const Rational& node : {DyadicGrid::exact_breakpoint(k + 1), DyadicGrid::exact_breakpoint(k)})
    for (int order = 0; order <= q; ++order) add_row(node, order, base_deriv_exact(node, order));
  const Rational mid = DyadicGrid::exact_midpoint(k);
  add_row(mid, 0, -mid * mid);
  add_row(mid, 1, slope * (-2 * mid));

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)] == 0) ++pivot;
    if (pivot == n) throw NumericalError("solve_pk: singular constraint system");
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
    const auto& prow = a[static_cast<std::size_t>(col)];
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      auto& target = a[static_cast<std::size_t>(r)];
      if (target[static_cast<std::size_t>(col)] == 0) continue;
      const Rational factor = target[static_cast<std::size_t>(col)] / prow[static_cast<std::size_t>(col)];
      for (int c = col; c <= n; ++c)
        target[static_cast<std::size_t>(c)] -= factor * prow[static_cast<std::size_t>(c)];
    }
  }
  PkPolynomial p{k, q, {}, Provenance::vandermonde_solve};
  p.coeffs.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    p.coeffs[static_cast<std::size_t>(j)] =
        a[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] / a[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
  return p;
}

PkPolynomial closed_form_coeffs(int k, ClosedFormVariant variant) {
  if (k < 0) throw ArgumentError("closed_form_coeffs: k must be >= 0");
  const int shift = variant == ClosedFormVariant::quarter_decay ? 4 : 3;
  PkPolynomial p{k, 3, {}, Provenance::closed_form};
  for (int j = 0; j < 10; ++j) {
    Rational c = Rational(CoefficientTable::z[static_cast<std::size_t>(j)]) * pow2((j - shift) * k);
    if (j == 2) c -= 1;
    p.coeffs.push_back(c);
  }
  return p;
}

std::vector<Rational> constraint_residuals_exact(const PkPolynomial& p, const Rational& slope) {
  std::vector<Rational> out;
  for (const Rational& node : {DyadicGrid::exact_breakpoint(p.k + 1), DyadicGrid::exact_breakpoint(p.k)})
    for (int order = 0; order <= p.q; ++order)
      out.push_back(p.eval_exact(node, order) - base_deriv_exact(node, order));
  const Rational mid = DyadicGrid::exact_midpoint(p.k);
  out.push_back(p.eval_exact(mid, 0) + mid * mid);
  out.push_back(p.eval_exact(mid, 1) - slope * (-2 * mid));
  return out;
}

CounterexampleFunction::CounterexampleFunction(SlopeSequence slopes, int k_max, int q)
    : slopes_(std::move(slopes)), grid_(k_max), q_(q) {
  check_q(q);
  pieces_.reserve(static_cast<std::size_t>(k_max + 1));
  for (int k = 0; k <= k_max; ++k) {
    Piece piece;
    if (q == 3 && slopes_.kind() == SlopeKind::quarter_decay)
      piece.poly = closed_form_coeffs(k, ClosedFormVariant::quarter_decay);
    else if (q == 3 && slopes_.kind() == SlopeKind::half_decay)
      piece.poly = closed_form_coeffs(k, ClosedFormVariant::half_decay);
    else
      piece.poly = solve_pk(k, slopes_.value(k), q);

    // Deviation p_k + t^2 in zeta = t / l_{k+1}, then Taylor-shifted to u = zeta - 3/2.
    const int n = piece.poly.degree() + 1;
    const Rational scale = pow2(-(k + 1));
    std::vector<Rational> in_zeta(static_cast<std::size_t>(n));
    Rational scale_pow = 1;
    for (int j = 0; j < n; ++j) {
      Rational c = piece.poly.coeffs[static_cast<std::size_t>(j)];
      if (j == 2) c += 1;
      in_zeta[static_cast<std::size_t>(j)] = c * scale_pow;
      scale_pow *= scale;
    }
    const Rational shift(3, 2);
    piece.centered.resize(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
      Rational acc = 0;
      Rational binom = 1;  // C(j, m)
      Rational shift_pow = 1;
      for (int j = m; j < n; ++j) {
        acc += in_zeta[static_cast<std::size_t>(j)] * binom * shift_pow;
        binom = binom * (j + 1) / (j + 1 - m);
        shift_pow *= shift;
      }
      piece.centered[static_cast<std::size_t>(m)] = to_double(acc);
    }
    pieces_.push_back(std::move(piece));
  }
}

const PkPolynomial& CounterexampleFunction::piece(int k) const {
  if (k < 0 || k > k_max()) throw ResolutionError("piece index " + std::to_string(k) + " not materialized");
  return pieces_[static_cast<std::size_t>(k)].poly;
}

double CounterexampleFunction::piece_deviation(int k, double t, int order) const {
  if (k < 0 || k > k_max()) throw ResolutionError("piece index " + std::to_string(k) + " not materialized");
  const auto& b = pieces_[static_cast<std::size_t>(k)].centered;
  const double u = std::ldexp(t, k + 1) - 1.5;
  double acc = 0.0;
  for (int m = static_cast<int>(b.size()) - 1; m >= order; --m)
    acc = acc * u + static_cast<double>(falling(m, order)) * b[static_cast<std::size_t>(m)];
  return std::ldexp(acc, (k + 1) * order);
}

double CounterexampleFunction::piece_deriv(int k, double t, int order) const {
  return base_deriv(t, order) + piece_deviation(k, t, order);
}

void CounterexampleFunction::check_resolution(double t) const {
  if (t > 0.0 && t < DyadicGrid::breakpoint(k_max() + 1))
    throw ResolutionError("point " + std::to_string(t) + " lies below l_" + std::to_string(k_max() + 1) +
                          "; raise k_max");
}

int CounterexampleFunction::piece_index(double t) const {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("piece_index: t must lie in (0, 1]");
  check_resolution(t);
  int e = 0;
  std::frexp(t, &e);
  return std::max(0, -e);
}

double CounterexampleFunction::f(double t, int order) const {
  if (!(t >= -1.0 && t <= 1.0)) throw DomainError("counterexample defined on [-1, 1]");
  if (order < 0) throw ArgumentError("negative derivative order");
  if (t <= 0.0) return base_deriv(t, order);
  return piece_deriv(piece_index(t), t, order);
}

double CounterexampleFunction::f_one_sided(double t, int order, Side side) const {
  if (side == Side::left && t > 0.0 && t <= 1.0) {
    int e = 0;
    const double mantissa = std::frexp(t, &e);
    if (mantissa == 0.5 && t < 1.0) {
      // t = l_j; the piece on its left is j.
      const int j = 1 - e;
      if (j > k_max()) throw ResolutionError("left piece of breakpoint not materialized; raise k_max");
      return piece_deriv(j, t, order);
    }
  }
  return f(t, order);
}

double CounterexampleFunction::fmax(double t) const { return std::max(f(t), f(-t)); }

int CounterexampleFunction::piece_index_exact(const Rational& t) const {
  int k = piece_index(to_double(t));
  while (k > 0 && t >= DyadicGrid::exact_breakpoint(k)) --k;
  while (t < DyadicGrid::exact_breakpoint(k + 1)) ++k;
  if (k > k_max()) throw ResolutionError("point lies below the materialized pieces; raise k_max");
  return k;
}

Rational CounterexampleFunction::f_exact(const Rational& t) const {
  if (t < -1 || t > 1) throw DomainError("counterexample defined on [-1, 1]");
  if (t <= 0) return -t * t;
  return piece(piece_index_exact(t)).eval_exact(t);
}

Rational CounterexampleFunction::fmax_exact(const Rational& t) const {
  return std::max(f_exact(t), f_exact(-t));
}

std::vector<double> CounterexampleFunction::constraint_residuals(int k) const {
  std::vector<double> out;
  for (double node : {DyadicGrid::breakpoint(k + 1), DyadicGrid::breakpoint(k)})
    for (int order = 0; order <= q_; ++order)
      out.push_back(std::abs(piece_deriv(k, node, order) - base_deriv(node, order)));
  const double mid = DyadicGrid::midpoint(k);
  out.push_back(std::abs(piece_deriv(k, mid, 0) + mid * mid));
  const double slope = to_double(slopes_.value(k));
  out.push_back(std::abs(piece_deriv(k, mid, 1) - slope * (-2.0 * mid)));
  return out;
}

double eval_f(const CounterexampleFunction& fn, double t, int order) { return fn.f(t, order); }

double eval_fmax(const CounterexampleFunction& fn, double t) { return fn.fmax(t); }

double kink_gap(const CounterexampleFunction& fn, int k) {
  if (k < 0 || k > fn.k_max()) throw ResolutionError("kink_gap: piece not materialized");
  // f1' - f2' at t_k is exactly the deviation slope; the max function switches
  // from the steeper member on the left to the shallower one on the right.
  return std::abs(fn.piece_deviation(k, DyadicGrid::midpoint(k), 1));
}

namespace {

void check_range(const CounterexampleFunction& fn, int k_first, int k_last) {
  if (k_first < 0 || k_first > k_last || k_last > fn.k_max())
    throw ArgumentError("piece range must satisfy 0 <= k_first <= k_last <= k_max");
}

template <typename F>
void for_each_grid_point(int k, F&& visit) {
  const double lo = DyadicGrid::breakpoint(k + 1);
  const double hi = DyadicGrid::breakpoint(k);
  for (int i = 0; i < kGridPointsPerInterval; ++i) {
    const double t = i + 1 == kGridPointsPerInterval
                         ? hi
                         : lo + (hi - lo) * static_cast<double>(i) / (kGridPointsPerInterval - 1);
    visit(t);
  }
}

bool piece_decreasing(const CounterexampleFunction& fn, int k) {
  double previous = std::numeric_limits<double>::infinity();
  bool ok = true;
  for_each_grid_point(k, [&](double t) {
    const double v = fn.piece_deriv(k, t, 0);
    if (!(v < previous)) ok = false;
    previous = v;
  });
  return ok;
}

}  // namespace

SmoothnessReport verify_smoothness(const CounterexampleFunction& fn, int k_first, int k_last,
                                   int order) {
  check_range(fn, k_first, k_last);
  if (order < 0) throw ArgumentError("negative derivative order");
  SmoothnessReport report;
  report.k_first = k_first;
  report.k_last = k_last;
  report.order = order;

  for (int k = k_first; k < k_last; ++k) {
    BreakpointJump jump{k, DyadicGrid::breakpoint(k + 1), {}};
    for (int n = 0; n <= order; ++n) {
      const double scale = std::max(1.0, std::abs(base_deriv(jump.point, n)));
      const double diff =
          std::abs(fn.piece_deviation(k, jump.point, n) - fn.piece_deviation(k + 1, jump.point, n));
      jump.jumps.push_back(diff / scale);
      report.max_jump = std::max(report.max_jump, diff / scale);
    }
    report.per_breakpoint_jumps.push_back(std::move(jump));
  }
  report.jumps_ok = report.max_jump <= kJumpTolerance;

  for (int k = k_first; k <= k_last; ++k) {
    double sup = 0.0, sup_first = 0.0;
    for_each_grid_point(k, [&](double t) {
      sup = std::max(sup, std::abs(fn.piece_deviation(k, t, order)));
      sup_first = std::max(sup_first, std::abs(fn.piece_deviation(k, t, 1)));
    });
    report.sup_deriv.push_back(sup);
    report.sup_first_deviation.push_back(sup_first);
  }
  report.sup_nonincreasing = true;
  for (std::size_t i = 1; i < report.sup_deriv.size(); ++i)
    if (report.sup_deriv[i] > report.sup_deriv[i - 1] * (1.0 + 1e-9)) report.sup_nonincreasing = false;
  report.c3_plausible = report.jumps_ok && report.sup_nonincreasing &&
                        report.sup_deriv.back() <= kDecayRatio * report.sup_deriv.front();
  return report;
}

SmoothnessReport verify_c3(const CounterexampleFunction& fn, int k_first, int k_last) {
  return verify_smoothness(fn, k_first, k_last, 3);
}

Rational isolation_bound_exact(int k) {
  if (k < 0) throw ArgumentError("isolation_bound: k must be >= 0");
  const auto& z = CoefficientTable::z;
  auto z_tilde = [&](int j) { return Rational(j) * Rational(z[static_cast<std::size_t>(j)]) * pow2(1 - j); };
  Rational inner = Rational(z[2]) - pow2(2 * k);
  for (int j : {1, 3, 5, 7, 9}) inner += z_tilde(j);
  for (int j : {4, 6, 8}) inner += z_tilde(j) * pow2(j - 1);
  return inner * pow2(-3 * k);
}

double isolation_bound(int k) { return to_double(isolation_bound_exact(k)); }

IsolationReport check_isolated_max(const CounterexampleFunction& fn, int k_start, int k_end) {
  check_range(fn, k_start, k_end);
  IsolationReport report;
  for (int k = k_start; k <= k_end; ++k) {
    if (!piece_decreasing(fn, k)) {
      report.decreasing = false;
      if (!report.first_nonmonotone_piece) report.first_nonmonotone_piece = k;
    }
  }
  for (int k = 0; k <= k_end; ++k)
    for_each_grid_point(k, [&](double t) {
      if (!(fn.piece_deriv(k, t, 0) < 0.0)) report.negative = false;
    });
  return report;
}

bool verify_isolated_max(const CounterexampleFunction& fn, int k_start, int k_end) {
  return check_isolated_max(fn, k_start, k_end).isolated();
}

GeneralizeReport generalize_q(int q, int k_first, int k_last, std::optional<SlopeSequence> slope_rule) {
  if (q < 1 || q > 5) throw ArgumentError("generalize_q: q must lie in 1..5");
  const SlopeSequence slopes = slope_rule.value_or(SlopeSequence::general_q(q));
  const CounterexampleFunction fn(slopes, k_last, q);
  const SmoothnessReport smooth = verify_smoothness(fn, k_first, k_last, q);

  GeneralizeReport report;
  report.q = q;
  report.slope_label = slopes.label();
  report.max_jump = smooth.max_jump;
  report.all_decreasing = true;
  for (int k = k_first; k <= k_last; ++k) {
    GeneralizeRow row;
    row.k = k;
    const Rational excess = slopes.excess(k);
    row.slope_excess = to_double(excess);
    row.sup_deriv = smooth.sup_deriv[static_cast<std::size_t>(k - k_first)];
    const double mid = DyadicGrid::midpoint(k);
    const double target = to_double(excess) * (-2.0 * mid);
    const double got = fn.piece_deviation(k, mid, 1);
    row.midpoint_slope_residual = target != 0.0 ? std::abs(got - target) / std::abs(target) : std::abs(got);
    row.decreasing = piece_decreasing(fn, k);
    report.all_decreasing = report.all_decreasing && row.decreasing;
    report.rows.push_back(row);
  }
  report.sup_decays = smooth.sup_nonincreasing &&
                      smooth.sup_deriv.back() <= kDecayRatio * smooth.sup_deriv.front();
  return report;
}

Figure parse_figure(std::string_view name) {
  for (Figure f : {Figure::f1_only, Figure::f1_and_f2, Figure::derivs_a, Figure::derivs_b,
                   Figure::fmax_and_derivs})
    if (figure_name(f) == name) return f;
  throw ArgumentError("unknown figure '" + std::string(name) + "'");
}

std::string_view figure_name(Figure figure) {
  switch (figure) {
    case Figure::f1_only: return "f1_only";
    case Figure::f1_and_f2: return "f1_and_f2";
    case Figure::derivs_a: return "derivs_a";
    case Figure::derivs_b: return "derivs_b";
    case Figure::fmax_and_derivs: return "fmax_and_derivs";
  }
  return "";
}

SlopeSequence figure_slopes(Figure figure) {
  switch (figure) {
    case Figure::f1_only:
    case Figure::f1_and_f2: return SlopeSequence::constant_two();
    case Figure::derivs_a: return SlopeSequence::half_decay();
    case Figure::derivs_b:
    case Figure::fmax_and_derivs: return SlopeSequence::quarter_decay();
  }
  return SlopeSequence::quarter_decay();
}

namespace {

std::string piece_tag(const CounterexampleFunction& fn, double t) {
  if (t <= 0.0) return "tail";
  return fn.piece_index(t) % 2 == 0 ? "pk_even" : "pk_odd";
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::size_t emit_plot_data(Figure figure, int resolution, std::ostream& sink,
                           std::optional<SlopeSequence> slopes, int k_max) {
  if (resolution < 2) throw ArgumentError("emit_plot_data: resolution must be >= 2");
  const CounterexampleFunction fn(slopes.value_or(figure_slopes(figure)), k_max);

  switch (figure) {
    case Figure::f1_only: sink << "t,value,piece_tag\n"; break;
    case Figure::f1_and_f2: sink << "t,f1,f2,f1_tag,f2_tag\n"; break;
    case Figure::derivs_a:
    case Figure::derivs_b: sink << "t,value,d1,d2,d3,piece_tag\n"; break;
    case Figure::fmax_and_derivs: sink << "t,value,d1,d2,piece_tag\n"; break;
  }
  std::size_t rows = 0;
  for (int i = 0; i < resolution; ++i) {
    const double t = i + 1 == resolution ? 1.0 : -1.0 + 2.0 * static_cast<double>(i) / (resolution - 1);
    std::string line = fmt17(t);
    switch (figure) {
      case Figure::f1_only:
        line += "," + fmt17(fn.f(t)) + "," + piece_tag(fn, t);
        break;
      case Figure::f1_and_f2:
        line += "," + fmt17(fn.f(t)) + "," + fmt17(fn.f(-t)) + "," + piece_tag(fn, t) + "," +
                piece_tag(fn, -t);
        break;
      case Figure::derivs_a:
      case Figure::derivs_b:
        for (int order = 0; order <= 3; ++order) line += "," + fmt17(fn.f(t, order));
        line += "," + piece_tag(fn, t);
        break;
      case Figure::fmax_and_derivs: {
        // f2^(n)(t) = (-1)^n f1^(n)(-t); ties go to f1.
        const bool first = fn.f(t) >= fn.f(-t);
        for (int order = 0; order <= 2; ++order) {
          const double v = first ? fn.f(t, order) : (order % 2 ? -1.0 : 1.0) * fn.f(-t, order);
          line += "," + fmt17(v);
        }
        line += "," + piece_tag(fn, first ? t : -t);
        break;
      }
    }
    sink << line << '\n';
    ++rows;
  }
  if (!sink) throw std::ios_base::failure("emit_plot_data: write failed");
  return rows;
}

MaxFunction as_max_function(std::shared_ptr<const CounterexampleFunction> fn) {
  if (!fn) throw ArgumentError("as_max_function: null counterexample");
  const int q = fn->q();
  const int degree = 2 * q + 3;
  auto f1 = [fn](double t, int order, Side side) { return fn->f_one_sided(t, order, side); };
  auto f2 = [fn](double t, int order, Side side) {
    const Side mirrored = side == Side::left ? Side::right : Side::left;
    return (order % 2 ? -1.0 : 1.0) * fn->f_one_sided(-t, order, mirrored);
  };
  return MaxFunction({ScalarFunction("f1", {-1.0, 1.0}, q, degree, f1),
                      ScalarFunction("f2", {-1.0, 1.0}, q, degree, f2)});
}

}  // namespace maxsmooth
