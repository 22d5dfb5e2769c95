#include "maxsmooth/lti.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "maxsmooth/errors.hpp"
#include "maxsmooth/rng.hpp"

namespace maxsmooth {

namespace {

constexpr double kPoleRcond = 1e-14;

void require_shape(const CMatrix& m, Eigen::Index rows, Eigen::Index cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols)
    throw ArgumentError(std::string("LtiSystem: ") + name + " has shape " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                        std::to_string(rows) + "x" + std::to_string(cols));
  if (!m.allFinite()) throw ArgumentError(std::string("LtiSystem: ") + name + " is not finite");
}

CMatrix parse_matrix(const nlohmann::json& node, const char* name) {
  if (!node.is_array()) throw ArgumentError(std::string("LTI json: ") + name + " must be an array");
  const auto rows = static_cast<Eigen::Index>(node.size());
  if (rows == 0) throw ArgumentError(std::string("LTI json: ") + name + " is empty");
  const auto cols = static_cast<Eigen::Index>(node.front().size());
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = node[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ArgumentError(std::string("LTI json: ") + name + " rows differ in length");
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& entry = row[static_cast<std::size_t>(j)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
        throw ArgumentError(std::string("LTI json: ") + name + " entries must be [re, im]");
      out(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return out;
}

nlohmann::json dump_matrix(const CMatrix& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

LtiSystem::LtiSystem(CMatrix a, CMatrix b, CMatrix c, CMatrix d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_.rows() == 0 || b_.cols() == 0 || c_.rows() == 0)
    throw ArgumentError("LtiSystem: dimensions must be positive");
  require_shape(a_, a_.rows(), a_.rows(), "A");
  require_shape(b_, a_.rows(), b_.cols(), "B");
  require_shape(c_, c_.rows(), a_.rows(), "C");
  require_shape(d_, c_.rows(), b_.cols(), "D");
}

double spectral_abscissa(const CMatrix& a) {
  const Eigen::ComplexEigenSolver<CMatrix> solver(a, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalues of A did not converge");
  return solver.eigenvalues().real().maxCoeff();
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

bool is_stable(const CMatrix& a, double rel) { return spectral_abscissa(a) < -rel * spectral_norm(a); }

void require_stable(const LtiSystem& sys) {
  if (!is_stable(sys.A())) throw PreconditionError("A not asymptotically stable");
}

CMatrix transfer_eval(const LtiSystem& sys, Complex s) {
  CMatrix pencil = -sys.A();
  pencil.diagonal().array() += s;
  const Eigen::PartialPivLU<CMatrix> lu(pencil);
  const double rcond = lu.rcond();
  if (!(rcond > kPoleRcond))
    throw PoleError("transfer matrix evaluated at a pole (s = " + std::to_string(s.real()) + " + " +
                    std::to_string(s.imag()) + "i)");
  CMatrix g = sys.C() * lu.solve(sys.B()) + sys.D();
  if (!g.allFinite()) throw PoleError("transfer matrix not finite");
  return g;
}

CMatrix transfer_eval(const LtiSystem& sys, double omega) {
  return transfer_eval(sys, Complex(0.0, omega));
}

LtiSystem shifted(const LtiSystem& sys, double xi) {
  if (sys.m() != sys.p()) throw PreconditionError("shifted system needs m = p");
  CMatrix a = sys.A();
  a.diagonal().array() += xi / 2.0;
  CMatrix d = sys.D();
  d.diagonal().array() -= xi / 2.0;
  return LtiSystem(std::move(a), sys.B(), sys.C(), std::move(d));
}

LtiSystem read_lti_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError(std::string("LTI json: ") + e.what());
  }
  if (!doc.is_object()) throw ArgumentError("LTI json: top level must be an object");
  for (const char* key : {"A", "B", "C", "D"})
    if (!doc.contains(key)) throw ArgumentError(std::string("LTI json: missing key ") + key);
  return LtiSystem(parse_matrix(doc["A"], "A"), parse_matrix(doc["B"], "B"),
                   parse_matrix(doc["C"], "C"), parse_matrix(doc["D"], "D"));
}

LtiSystem read_lti_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  return read_lti_json(in);
}

void write_lti_json(const LtiSystem& sys, std::ostream& out) {
  nlohmann::json doc;
  doc["A"] = dump_matrix(sys.A());
  doc["B"] = dump_matrix(sys.B());
  doc["C"] = dump_matrix(sys.C());
  doc["D"] = dump_matrix(sys.D());
  out << doc.dump(1) << '\n';
}

LtiSystem random_system(std::uint64_t seed, int n, int m, int p, bool stable, double margin,
                        bool complex_entries) {
  if (n < 1 || m < 1 || p < 1) throw ArgumentError("random_system: dimensions must be >= 1");
  if (stable && !(margin > 0.0)) throw ArgumentError("random_system: margin must be positive");
  Rng rng(seed);
  auto fill = [&](Eigen::Index rows, Eigen::Index cols) {
    CMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j)
        out(i, j) = complex_entries ? rng.complex_normal() : Complex(rng.normal(), 0.0);
    return out;
  };
  CMatrix a = fill(n, n);
  CMatrix b = fill(n, m);
  CMatrix c = fill(p, n);
  CMatrix d = fill(p, m);
  if (stable) a.diagonal().array() -= spectral_abscissa(a) + margin;
  return LtiSystem(std::move(a), std::move(b), std::move(c), std::move(d));
}

}  // namespace maxsmooth
