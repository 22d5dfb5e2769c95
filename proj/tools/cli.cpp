#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "maxsmooth/counterexample.hpp"
#include "maxsmooth/eigfamily.hpp"
#include "maxsmooth/errors.hpp"
#include "maxsmooth/lti.hpp"
#include "maxsmooth/maxfun.hpp"
#include "maxsmooth/report.hpp"
#include "maxsmooth/solvers.hpp"

#ifndef MAXSMOOTH_VERSION
#define MAXSMOOTH_VERSION "0.0.0"
#endif

namespace maxsmooth::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

// Non-finite doubles become strings; JSON has no literal for them.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json nums(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

std::string rational_string(const Rational& r) { return r.str(); }

CMatrix parse_matrix(const json& node, const std::string& name) {
  if (!node.is_array() || node.empty() || !node.front().is_array())
    throw ArgumentError(name + " must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(node.size());
  const auto cols = static_cast<Eigen::Index>(node.front().size());
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = node[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ArgumentError(name + " rows differ in length");
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& e = row[static_cast<std::size_t>(j)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ArgumentError(name + " entries must be [re, im]");
      out(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ArgumentError(path + ": " + e.what());
  }
}

// Shared state of one invocation: manifest fields and the output sink.
struct Context {
  Context(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  std::ostream& out;
  std::ostream& err;
  std::string subcommand;
  json options = json::object();
  json inputs = json::array();
  Clock::time_point start = Clock::now();
  bool timing = true;

  void add_input(const std::string& path) { inputs.push_back({{"path", path}, {"sha256", sha256_file(path)}}); }

  json manifest() const {
    json m{{"tool", "maxsmooth"},
           {"version", MAXSMOOTH_VERSION},
           {"subcommand", subcommand},
           {"options", options},
           {"inputs", inputs}};
    if (timing) m["timing_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
    return m;
  }
};

void record_options(Context& ctx, const CLI::App& app) {
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    // The destination does not change the content.
    if (name == "help" || name == "out") continue;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      ctx.options[name] = results.size() == 1 ? json(results.front()) : json(results);
    } else if (!opt->get_default_str().empty()) {
      ctx.options[name] = opt->get_default_str();
    }
  }
}

// Writes to --out when given, otherwise to the context stream.
class Sink {
 public:
  Sink(std::ostream& fallback, const std::string& path) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ArgumentError("cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void emit_json(Context& ctx, json doc, const std::string& path) {
  doc["manifest"] = ctx.manifest();
  Sink sink(ctx.out, path);
  *sink << doc.dump(2) << '\n';
}

// CSV files carry the manifest as a single leading '#' comment line.
void emit_csv_manifest(Context& ctx, std::ostream& os) { os << "# manifest: " << ctx.manifest().dump() << '\n'; }

// Text values are rounded to the decimal places the tolerance supports.
std::string at_tolerance(double value, double tol) {
  if (!std::isfinite(value)) return num(value).dump();
  const int places = std::clamp(static_cast<int>(std::ceil(-std::log10(tol))), 0, 17);
  std::ostringstream os;
  os << std::fixed << std::setprecision(places) << value;
  std::string s = os.str();
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

json report_json(const SolveReport& r) {
  json iterations = json::array();
  for (const auto& it : r.iterations) iterations.push_back({{"level", num(it.level)}, {"width", num(it.width)}});
  json best = nullptr;
  for (const auto& c : r.certificates)
    if (best.is_null() || c.value > best["value"].get<double>()) best = {{"point", num(c.point)}, {"value", c.value}};
  return {{"optimum", num(r.optimum)},
          {"locations", nums(r.locations)},
          {"status", std::string(status_name(r.status))},
          {"iterations", iterations},
          {"history", nums(r.history)},
          {"empirical_order", num(r.empirical_order)},
          {"curvature", num(r.curvature)},
          {"residual", num(r.residual)},
          {"evaluations", r.evaluations},
          {"certificate_count", r.certificates.size()},
          {"best_certificate", best}};
}

struct SolverArgs {
  std::string in;
  std::string out;
  std::optional<double> tol;
  std::string method = "levelset";
  std::string report = "text";
  std::string form = "lambda_max";
  int samples = 1024;
  int threads = 1;
};

void add_solver_options(CLI::App* app, SolverArgs& a, bool with_form) {
  app->add_option("--in", a.in, "input JSON file")->required();
  app->add_option("--out", a.out, "output file (default: standard output)");
  app->add_option("--tol", a.tol, "absolute tolerance (positive)");
  app->add_option("--method", a.method, "levelset or grid")->capture_default_str();
  app->add_option("--report", a.report, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app->add_option("--samples", a.samples, "initial uniform samples")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--threads", a.threads, "threads for sampling sweeps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  if (with_form)
    app->add_option("--form", a.form, "lambda_max over a full period or rho over half")->capture_default_str();
}

SolverOptions solver_options(const SolverArgs& a) {
  SolverOptions o;
  o.tol = a.tol;
  o.method = parse_method(a.method);
  o.samples = a.samples;
  o.threads = a.threads;
  return o;
}

void emit_solver_report(Context& ctx, const SolverArgs& a, const SolveReport& r, double default_tol) {
  if (a.report == "json") {
    emit_json(ctx, report_json(r), a.out);
  } else if (a.report == "csv") {
    Sink sink(ctx.out, a.out);
    emit_csv_manifest(ctx, *sink);
    *sink << "iteration,level,width\n" << std::setprecision(17);
    for (std::size_t i = 0; i < r.iterations.size(); ++i)
      *sink << i << ',' << r.iterations[i].level << ',' << r.iterations[i].width << '\n';
  } else {
    Sink sink(ctx.out, a.out);
    *sink << at_tolerance(r.optimum, a.tol.value_or(default_tol)) << '\n';
  }
}

CMatrix read_square_matrix(const std::string& path) {
  const json doc = read_json_file(path);
  if (!doc.is_object() || !doc.contains("A")) throw ArgumentError(path + ": expected an object with key \"A\"");
  CMatrix a = parse_matrix(doc["A"], "A");
  if (a.rows() != a.cols()) throw ArgumentError("A must be square");
  if (!a.allFinite()) throw ArgumentError("A is not finite");
  return a;
}

// --- counterexample -------------------------------------------------------

struct CounterexampleArgs {
  std::string sk = "a";
  int kmax = 25;
  int kfirst = 5;
  int q = 3;
  std::string figure;
  int resolution = 2001;
  std::string out;
};

json smoothness_json(const SmoothnessReport& r) {
  json jumps = json::array();
  for (const auto& b : r.per_breakpoint_jumps) jumps.push_back({{"k", b.k}, {"point", b.point}, {"jumps", nums(b.jumps)}});
  return {{"k_first", r.k_first},
          {"k_last", r.k_last},
          {"order", r.order},
          {"sup_deriv", nums(r.sup_deriv)},
          {"sup_first_deviation", nums(r.sup_first_deviation)},
          {"breakpoint_jumps", jumps},
          {"max_jump", num(r.max_jump)},
          {"jumps_ok", r.jumps_ok},
          {"sup_nonincreasing", r.sup_nonincreasing},
          {"c3_plausible", r.c3_plausible}};
}

void run_verify(Context& ctx, const CounterexampleArgs& a) {
  if (a.kmax < a.kfirst) throw ArgumentError("--kmax must be >= --kfirst");
  const CounterexampleFunction fn(SlopeSequence::parse(a.sk), a.kmax);
  const SmoothnessReport c3 = verify_c3(fn, a.kfirst, a.kmax);

  json isolation = nullptr;
  bool isolated = false;
  constexpr int kIsolationStart = 13;
  if (a.kmax >= kIsolationStart) {
    const IsolationReport iso = check_isolated_max(fn, kIsolationStart, a.kmax);
    isolated = iso.isolated();
    json bounds = json::array();
    for (int k = kIsolationStart; k <= a.kmax; ++k) bounds.push_back({{"k", k}, {"bound", isolation_bound(k)}});
    isolation = {{"k_start", kIsolationStart},
                 {"k_end", a.kmax},
                 {"decreasing", iso.decreasing},
                 {"negative", iso.negative},
                 {"first_nonmonotone_piece", iso.first_nonmonotone_piece ? json(*iso.first_nonmonotone_piece) : json()},
                 {"bounds", bounds}};
  }

  json kinks = json::array();
  for (int k = 0; k <= a.kmax; ++k) {
    const double expected = to_double(fn.slopes().excess(k)) * 2.0 * DyadicGrid::midpoint(k);
    kinks.push_back({{"k", k}, {"t", DyadicGrid::midpoint(k)}, {"gap", kink_gap(fn, k)}, {"expected", expected}});
  }

  double max_residual = 0.0;
  for (int k = 0; k <= a.kmax; ++k)
    for (double r : fn.constraint_residuals(k)) max_residual = std::max(max_residual, std::abs(r));

  emit_json(ctx,
            {{"slopes", fn.slopes().label()},
             {"kmax", a.kmax},
             {"c3_plausible", c3.c3_plausible},
             {"isolated", a.kmax >= kIsolationStart ? json(isolated) : json()},
             {"max_constraint_residual", max_residual},
             {"smoothness", smoothness_json(c3)},
             {"isolation", isolation},
             {"kinks", kinks}},
            a.out);
}

void run_plot(Context& ctx, const CounterexampleArgs& a, bool sk_given) {
  const Figure figure = parse_figure(a.figure);
  Sink sink(ctx.out, a.out);
  emit_csv_manifest(ctx, *sink);
  std::optional<SlopeSequence> slopes;
  if (sk_given) slopes = SlopeSequence::parse(a.sk);
  emit_plot_data(figure, a.resolution, *sink, slopes);
}

void run_coeffs(Context& ctx, const CounterexampleArgs& a) {
  const CounterexampleFunction fn(SlopeSequence::parse(a.sk), a.kmax, a.q);
  Sink sink(ctx.out, a.out);
  emit_csv_manifest(ctx, *sink);
  *sink << "k,j,exact,value\n" << std::setprecision(17);
  for (int k = 0; k <= a.kmax; ++k) {
    const auto& coeffs = fn.piece(k).coeffs;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      *sink << k << ',' << j << ',' << rational_string(coeffs[j]) << ',' << to_double(coeffs[j]) << '\n';
  }
}

void run_generalize(Context& ctx, const CounterexampleArgs& a, bool sk_given) {
  std::optional<SlopeSequence> slopes;
  if (sk_given) slopes = SlopeSequence::parse(a.sk);
  const GeneralizeReport r = generalize_q(a.q, a.kfirst, a.kmax, slopes);
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"k", row.k},
                    {"slope_excess", row.slope_excess},
                    {"sup_deriv", num(row.sup_deriv)},
                    {"midpoint_slope_residual", num(row.midpoint_slope_residual)},
                    {"decreasing", row.decreasing}});
  emit_json(ctx,
            {{"q", r.q},
             {"slopes", r.slope_label},
             {"rows", rows},
             {"max_jump", num(r.max_jump)},
             {"sup_decays", r.sup_decays},
             {"all_decreasing", r.all_decreasing}},
            a.out);
}

// --- maxfun-demo ---------------------------------------------------------

void run_maxfun_demo(Context& ctx, const std::string& family, double point, const std::string& out) {
  const MaxFunction f = family == "counterexample"
                            ? as_max_function(std::make_shared<const CounterexampleFunction>(SlopeSequence::quarter_decay()))
                            : builtin_family(family);
  const MaxValue value = eval_max(f, point);
  const ActiveSet active = active_set(f, point);
  const auto schedule = dyadic_schedule(1, 30);
  const StationarityReport st = stationarity_check(f, point, schedule);

  json model;
  std::optional<QuadraticModel> two_sided;
  try {
    two_sided = quadratic_model(f, point);
    model = {{"kind", "two_sided"}, {"curvature", num(two_sided->curvature)}};
  } catch (const CapabilityError&) {
    const OneSidedModels sides = one_sided_quadratic_models(f, point);
    model = {{"kind", "one_sided"},
             {"left_curvature", num(sides.left.curvature)},
             {"right_curvature", num(sides.right.curvature)}};
  }
  json expansion = nullptr;
  if (two_sided) {
    const ExpansionReport e = expansion_residual(f, *two_sided, dyadic_schedule(2, 20));
    expansion = {{"steps", nums(e.steps)}, {"residuals", nums(e.residuals)}, {"fitted_order", num(e.fitted_order)}};
  }
  emit_json(ctx,
            {{"family", family},
             {"point", point},
             {"value", num(value.value)},
             {"argmax", value.argmax},
             {"active_set", active.indices},
             {"stationarity",
              {{"steps", nums(st.steps)},
               {"right_quotients", nums(st.right_quotients)},
               {"left_quotients", nums(st.left_quotients)},
               {"converges_to_zero", st.converges_to_zero}}},
             {"model", model},
             {"expansion", expansion}},
            out);
}

// --- probe ---------------------------------------------------------------

ExtremalFunction read_family(const std::string& path, std::optional<std::string> kind_override) {
  const json doc = read_json_file(path);
  if (!doc.is_object() || !doc.contains("coefficients") || !doc["coefficients"].is_array() ||
      doc["coefficients"].empty())
    throw ArgumentError(path + ": expected an object with a non-empty \"coefficients\" array");
  std::vector<CMatrix> coeffs;
  for (std::size_t j = 0; j < doc["coefficients"].size(); ++j)
    coeffs.push_back(parse_matrix(doc["coefficients"][j], "coefficients[" + std::to_string(j) + "]"));
  const std::string kind_text = kind_override.value_or(doc.value("kind", std::string("lambda_max")));
  const ExtremalKind kind = parse_kind(kind_text);
  if (kind == ExtremalKind::sigma_max || kind == ExtremalKind::sigma_min)
    return ExtremalFunction(MatrixFamily::polynomial(std::move(coeffs)), kind);
  return ExtremalFunction(HermitianFamily::polynomial(std::move(coeffs)), kind);
}

json probe_json(const ProbeReport& p) {
  json rows = json::array();
  for (const auto& r : p.rows)
    rows.push_back({{"step", r.step},
                    {"first_left", num(r.first_left)},
                    {"first_right", num(r.first_right)},
                    {"second_left", num(r.second_left)},
                    {"second_right", num(r.second_right)},
                    {"central_first", num(r.central_first)},
                    {"central_second", num(r.central_second)},
                    {"reliable", r.reliable}});
  return {{"point", p.point},
          {"value", num(p.value)},
          {"scale", num(p.scale)},
          {"fd_first_left", num(p.fd_first_left)},
          {"fd_first_right", num(p.fd_first_right)},
          {"fd_second_left", num(p.fd_second_left)},
          {"fd_second_right", num(p.fd_second_right)},
          {"used_step", num(p.used_step)},
          {"step_floor", p.step_floor},
          {"lipschitz_estimate", num(p.lipschitz_estimate)},
          {"cluster_size", p.cluster_size},
          {"status", std::string(probe_status_name(p.status))},
          {"smooth", p.smooth},
          {"rows", rows}};
}

}  // namespace

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> md(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!md || EVP_DigestInit_ex(md.get(), EVP_sha256(), nullptr) != 1) throw NumericalError("SHA-256 unavailable");
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(md.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(md.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Max functions, eigenvalue extremal functions and level-set solvers", "maxsmooth");
  app.require_subcommand(1);
  app.set_version_flag("--version", MAXSMOOTH_VERSION);
  Context ctx(out, err);

  // counterexample
  CounterexampleArgs ce;
  auto* counter = app.add_subcommand("counterexample", "piecewise-polynomial pair with kinks at every crossing");
  counter->require_subcommand(1);
  auto* verify = counter->add_subcommand("verify", "C^3 evidence, isolated maximizer and kink gaps as JSON");
  auto* plot = counter->add_subcommand("plot", "CSV plot data for one figure");
  auto* coeffs = counter->add_subcommand("coeffs", "exact piece coefficients as CSV");
  auto* generalize = counter->add_subcommand("generalize", "C^q variant of the construction as JSON");
  CLI::Option* sk_opts[4];
  CLI::App* leaves[] = {verify, plot, coeffs, generalize};
  for (int i = 0; i < 4; ++i) {
    sk_opts[i] = leaves[i]->add_option("--sk", ce.sk, "slope rule: a, b, two or q=<n>")->capture_default_str();
    leaves[i]->add_option("--out", ce.out, "output file (default: standard output)");
  }
  verify->add_option("--kmax", ce.kmax, "deepest piece")->check(CLI::NonNegativeNumber)->capture_default_str();
  verify->add_option("--kfirst", ce.kfirst, "first piece of the C^3 scan")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  plot->add_option("--figure", ce.figure, "f1_only, f1_and_f2, derivs_a, derivs_b or fmax_and_derivs")->required();
  plot->add_option("--resolution", ce.resolution, "rows over [-1, 1]")->capture_default_str();
  coeffs->add_option("--kmax", ce.kmax, "deepest piece")->check(CLI::NonNegativeNumber)->capture_default_str();
  coeffs->add_option("--q", ce.q, "smoothness order")->capture_default_str();
  generalize->add_option("--q", ce.q, "smoothness order 1..5")->required();
  generalize->add_option("--kfirst", ce.kfirst, "first piece")->capture_default_str();
  generalize->add_option("--kmax", ce.kmax, "last piece")->capture_default_str();

  // maxfun-demo
  std::string family = "two_piece_c1";
  double point = 0.0;
  std::string demo_out;
  auto* demo = app.add_subcommand("maxfun-demo", "stationarity and quadratic models of a built-in max function");
  demo->add_option("--family", family, "two_piece_c1, remark_sin_pair, neg_abs or counterexample")
      ->capture_default_str();
  demo->add_option("--point", point, "evaluation point")->capture_default_str();
  demo->add_option("--out", demo_out, "output file (default: standard output)");

  // probe
  std::string probe_in, probe_out;
  std::optional<double> probe_point;
  std::vector<double> bracket;
  std::optional<std::string> probe_kind;
  auto* probe = app.add_subcommand("probe", "finite-difference smoothness probe of an extremal function");
  probe->add_option("--in", probe_in, "family JSON: {\"coefficients\": [...], \"kind\": ...}")->required();
  auto* point_opt = probe->add_option("--point", probe_point, "probe point");
  auto* bracket_opt = probe->add_option("--bracket", bracket, "refine inside [a, b] first")->expected(2)->delimiter(',');
  point_opt->excludes(bracket_opt);
  probe->add_option("--kind", probe_kind, "extremal kind, overriding the file");
  probe->add_option("--out", probe_out, "output file (default: standard output)");

  // solvers
  SolverArgs hinf_args, numrad_args, pass_args;
  auto* hinf = app.add_subcommand("hinf", "H-infinity norm of a stable LTI system");
  add_solver_options(hinf, hinf_args, false);
  auto* numrad = app.add_subcommand("numrad", "numerical radius of a square matrix (key \"A\")");
  add_solver_options(numrad, numrad_args, true);
  auto* passivity = app.add_subcommand("passivity", "passivity margin of a square LTI system");
  add_solver_options(passivity, pass_args, false);

  // gen-system
  std::uint64_t seed = 42;
  int n = 6, m = 2, p = 2;
  bool unstable = false, real_entries = false;
  double margin = 0.5;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-system", "random LTI system as JSON");
  gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
  gen->add_option("--n", n, "states")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--m", m, "inputs")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--p", p, "outputs")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_flag("--unstable", unstable, "skip the stabilizing shift");
  gen->add_option("--margin", margin, "stability margin of the shift")->capture_default_str();
  gen->add_flag("--real", real_entries, "real Gaussian entries instead of complex");
  gen->add_option("--out", gen_out, "output file (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (counter->parsed()) {
      CLI::App* leaf = counter->get_subcommands().front();
      ctx.subcommand = "counterexample " + leaf->get_name();
      record_options(ctx, *leaf);
      const bool sk_given = sk_opts[0]->count() + sk_opts[1]->count() + sk_opts[2]->count() + sk_opts[3]->count() > 0;
      if (leaf == verify) run_verify(ctx, ce);
      if (leaf == plot) run_plot(ctx, ce, sk_given);
      if (leaf == coeffs) run_coeffs(ctx, ce);
      if (leaf == generalize) run_generalize(ctx, ce, sk_given);
    } else if (demo->parsed()) {
      ctx.subcommand = "maxfun-demo";
      record_options(ctx, *demo);
      run_maxfun_demo(ctx, family, point, demo_out);
    } else if (probe->parsed()) {
      ctx.subcommand = "probe";
      record_options(ctx, *probe);
      ctx.add_input(probe_in);
      const ExtremalFunction f = read_family(probe_in, probe_kind);
      json doc;
      double at = probe_point.value_or(0.0);
      if (!bracket.empty()) {
        const SolveReport refined = local_refine(f, bracket[0], bracket[1]);
        doc["refine"] = report_json(refined);
        at = refined.locations.front();
      }
      doc["kind"] = std::string(kind_name(f.kind()));
      doc["probe"] = probe_json(smoothness_probe(f, at));
      emit_json(ctx, doc, probe_out);
    } else if (hinf->parsed()) {
      ctx.subcommand = "hinf";
      record_options(ctx, *hinf);
      ctx.add_input(hinf_args.in);
      const SolveReport r = hinf_norm(read_lti_file(hinf_args.in), solver_options(hinf_args));
      emit_solver_report(ctx, hinf_args, r, kDefaultHinfTol);
    } else if (numrad->parsed()) {
      ctx.subcommand = "numrad";
      record_options(ctx, *numrad);
      ctx.add_input(numrad_args.in);
      const SolveReport r = numerical_radius(read_square_matrix(numrad_args.in), solver_options(numrad_args),
                                             parse_radius_form(numrad_args.form));
      emit_solver_report(ctx, numrad_args, r, kDefaultRadiusTol);
    } else if (passivity->parsed()) {
      ctx.subcommand = "passivity";
      record_options(ctx, *passivity);
      ctx.add_input(pass_args.in);
      const SolveReport r = passivity_margin(read_lti_file(pass_args.in), solver_options(pass_args));
      emit_solver_report(ctx, pass_args, r, kDefaultMarginTol);
    } else if (gen->parsed()) {
      ctx.subcommand = "gen-system";
      record_options(ctx, *gen);
      ctx.timing = false;  // identical seeds must give identical files
      const LtiSystem sys = random_system(seed, n, m, p, !unstable, margin, !real_entries);
      std::stringstream buf;
      write_lti_json(sys, buf);
      json doc = json::parse(buf);
      doc["manifest"] = ctx.manifest();
      Sink sink(out, gen_out);
      *sink << doc.dump(1) << '\n';
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResolutionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapabilityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace maxsmooth::cli
