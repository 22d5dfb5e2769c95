#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "cli.hpp"
#include "maxsmooth/lti.hpp"

using namespace maxsmooth;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("maxsmooth_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kJordan = R"({"A": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]})";
const char* kUnstable = R"({"A": [[[0.5, 0]]], "B": [[[1, 0]]], "C": [[[1, 0]]], "D": [[[0, 0]]]})";
const char* kScalarPassive = R"({"A": [[[-1, 0]]], "B": [[[1, 0]]], "C": [[[1, 0]]], "D": [[[1, 0]]]})";
const char* kLowpass = R"({"A": [[[-1, 0]]], "B": [[[1, 0]]], "C": [[[1, 0]]], "D": [[[0, 0]]]})";

}  // namespace

TEST_CASE("counterexample verify reports C3 evidence and isolation") {
  const auto r = invoke({"counterexample", "verify", "--sk", "a", "--kmax", "25"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["c3_plausible"] == true);
  CHECK(doc["isolated"] == true);
  CHECK(doc["max_constraint_residual"].get<double>() <= 1e-9);
  CHECK(doc["manifest"]["subcommand"] == "counterexample verify");
  CHECK(doc["manifest"]["options"]["kmax"] == "25");
  CHECK(doc["manifest"].contains("timing_seconds"));

  const auto b = invoke({"counterexample", "verify", "--sk", "b", "--kmax", "20"});
  REQUIRE(b.code == 0);
  CHECK(json::parse(b.out)["c3_plausible"] == false);
  CHECK(invoke({"counterexample", "verify", "--sk", "zz"}).code == 2);
  CHECK(json::parse(invoke({"counterexample", "verify", "--kmax", "8"}).out)["isolated"].is_null());
}

TEST_CASE("counterexample plot writes a rectangular CSV with a manifest line") {
  const std::string path = (scratch() / "fig.csv").string();
  const auto r = invoke({"counterexample", "plot", "--figure", "derivs_b", "--resolution", "501", "--out", path});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line.starts_with("# manifest: "));
  CHECK(json::parse(line.substr(12))["subcommand"] == "counterexample plot");
  std::getline(in, line);
  const auto columns = std::count(line.begin(), line.end(), ',');
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == columns);
  }
  CHECK(rows == 501);
  CHECK(invoke({"counterexample", "plot", "--figure", "nope"}).code == 2);
  CHECK(invoke({"counterexample", "plot"}).code == 2);
}

TEST_CASE("counterexample coeffs and generalize") {
  const auto c = invoke({"counterexample", "coeffs", "--kmax", "0"});
  REQUIRE(c.code == 0);
  CHECK(c.out.find("0,9,-98304,") != std::string::npos);
  CHECK(c.out.find("0,2,359423,") != std::string::npos);
  const auto g = invoke({"counterexample", "generalize", "--q", "2", "--kfirst", "5", "--kmax", "12"});
  REQUIRE(g.code == 0);
  CHECK(json::parse(g.out)["rows"].size() == 8);
  CHECK(invoke({"counterexample", "generalize", "--q", "9"}).code == 2);
}

TEST_CASE("numrad prints the Jordan block radius") {
  const std::string path = write_file("jordan2.json", kJordan);
  const auto r = invoke({"numrad", "--in", path, "--tol", "1e-10"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.5\n");
  CHECK(invoke({"numrad", "--in", path, "--tol", "1e-10", "--form", "rho"}).out == "0.5\n");

  const auto j = invoke({"numrad", "--in", path, "--report", "json"});
  REQUIRE(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(std::abs(doc["optimum"].get<double>() - 0.5) <= 1e-8);
  CHECK(doc["manifest"]["inputs"][0]["sha256"] == cli::sha256_file(path));
  CHECK(invoke({"numrad", "--in", path, "--form", "mu"}).code == 2);
  CHECK(invoke({"numrad", "--in", path, "--tol", "-1"}).code == 2);
}

TEST_CASE("hinf rejects unstable systems with exit code 2") {
  const auto r = invoke({"hinf", "--in", write_file("unstable.json", kUnstable)});
  CHECK(r.code == 2);
  CHECK(r.err.find("A not asymptotically stable") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("hinf, passivity and CSV iteration tables") {
  const std::string lowpass = write_file("lowpass.json", kLowpass);
  CHECK(invoke({"hinf", "--in", lowpass}).out == "1\n");
  CHECK(invoke({"hinf", "--in", lowpass, "--method", "grid"}).out == "1\n");
  CHECK(invoke({"hinf", "--in", lowpass, "--method", "newton"}).code == 2);

  const auto csv = invoke({"hinf", "--in", lowpass, "--report", "csv"});
  REQUIRE(csv.code == 0);
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line.starts_with("# manifest: "));
  std::getline(lines, line);
  CHECK(line == "iteration,level,width");

  const std::string passive = write_file("passive.json", kScalarPassive);
  const auto p = invoke({"passivity", "--in", passive, "--report", "json"});
  REQUIRE(p.code == 0);
  CHECK(std::abs(json::parse(p.out)["optimum"].get<double>() - 2.0) <= 1e-4);
  const auto not_passive = invoke({"passivity", "--in", lowpass});
  CHECK(not_passive.code == 2);
  CHECK(not_passive.err.find("not strictly passive") != std::string::npos);
}

TEST_CASE("gen-system is deterministic, round-trips and is stable") {
  const std::string a = (scratch() / "a.json").string(), b = (scratch() / "b.json").string();
  REQUIRE(invoke({"gen-system", "--seed", "42", "--n", "6", "--m", "2", "--p", "2", "--out", a}).code == 0);
  REQUIRE(invoke({"gen-system", "--seed", "42", "--n", "6", "--m", "2", "--p", "2", "--out", b}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(cli::sha256_file(a) == cli::sha256_file(b));

  const LtiSystem sys = read_lti_file(a);
  const LtiSystem ref = random_system(42, 6, 2, 2, true);
  CHECK(sys.A() == ref.A());
  CHECK(sys.B() == ref.B());
  CHECK(sys.C() == ref.C());
  CHECK(sys.D() == ref.D());
  CHECK(is_stable(sys.A()));
  CHECK(json::parse(slurp(a))["manifest"]["subcommand"] == "gen-system");

  const std::string real = (scratch() / "real.json").string();
  REQUIRE(invoke({"gen-system", "--seed", "3", "--real", "--out", real}).code == 0);
  CHECK(read_lti_file(real).A().imag().isZero(0.0));

  const std::string loose = (scratch() / "loose.json").string();
  REQUIRE(invoke({"gen-system", "--seed", "42", "--unstable", "--out", loose}).code == 0);
  const LtiSystem raw = read_lti_file(loose);
  if (!is_stable(raw.A())) CHECK(invoke({"hinf", "--in", loose}).code == 2);
  CHECK(invoke({"gen-system", "--n", "0"}).code == 2);
}

TEST_CASE("probe and maxfun-demo") {
  const std::string fam = write_file(
      "split.json", R"({"coefficients": [[[[0,0],[0,0]],[[0,0],[0,0]]], [[[1,0],[0,0]],[[0,0],[-1,0]]]]})");
  const auto kink = invoke({"probe", "--in", fam, "--point", "0"});
  REQUIRE(kink.code == 0);
  const json k = json::parse(kink.out);
  CHECK(k["probe"]["smooth"] == false);
  CHECK(k["probe"]["fd_first_left"].get<double>() == doctest::Approx(-1.0));

  const std::string bump = write_file("bump.json", R"({"coefficients": [[[[-1,0]]], [[[2,0]]], [[[-1,0]]]]})");
  const auto refined = invoke({"probe", "--in", bump, "--bracket", "0,2"});
  REQUIRE(refined.code == 0);
  const json rj = json::parse(refined.out);
  CHECK(rj["probe"]["smooth"] == true);
  CHECK(std::abs(rj["refine"]["locations"][0].get<double>() - 1.0) <= 1e-6);
  CHECK(invoke({"probe", "--in", bump, "--kind", "sigma_max"}).code == 0);
  CHECK(invoke({"probe", "--in", bump, "--kind", "lambda_mid"}).code == 2);
  CHECK(invoke({"probe", "--in", (scratch() / "missing.json").string()}).code == 2);

  const auto demo = invoke({"maxfun-demo", "--family", "two_piece_c1"});
  REQUIRE(demo.code == 0);
  const json d = json::parse(demo.out);
  CHECK(d["model"]["kind"] == "one_sided");
  CHECK(d["model"]["left_curvature"].get<double>() == -1.0);
  CHECK(d["model"]["right_curvature"].get<double>() == -2.0);
  CHECK(d["stationarity"]["converges_to_zero"] == true);
  CHECK(invoke({"maxfun-demo", "--family", "counterexample"}).code == 0);
  CHECK(invoke({"maxfun-demo", "--family", "nope"}).code == 2);
}

TEST_CASE("argument grammar") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"hinf"}).code == 2);
  CHECK(invoke({"hinf", "--in", "x.json", "--bogus"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"--version"}).out.find("0.1.0") != std::string::npos);
}

TEST_CASE("sha256 of a known string") {
  CHECK(cli::sha256_file(write_file("abc.txt", "abc")) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("the installed binary honours the exit-code contract") {
  const char* bin = std::getenv("MAXSMOOTH_BIN");
  if (bin == nullptr) return;
  const std::string unstable = write_file("unstable_bin.json", kUnstable);
  const std::string errfile = (scratch() / "stderr.txt").string();
  const int status = std::system((std::string(bin) + " hinf --in " + unstable + " > /dev/null 2> " + errfile).c_str());
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(slurp(errfile).find("A not asymptotically stable") != std::string::npos);
  const std::string outfile = (scratch() / "stdout.txt").string();
  const std::string jordan = write_file("jordan_bin.json", kJordan);
  const int ok = std::system((std::string(bin) + " numrad --in " + jordan + " --tol 1e-10 > " + outfile).c_str());
  CHECK(WEXITSTATUS(ok) == 0);
  CHECK(slurp(outfile) == "0.5\n");
}
