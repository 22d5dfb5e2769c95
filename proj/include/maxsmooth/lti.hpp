#pragma once

// Continuous-time state-space systems x' = Ax + Bu, y = Cx + Du and their
// transfer matrices G(s) = C (sI - A)^{-1} B + D.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace maxsmooth {

using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

class LtiSystem {
 public:
  LtiSystem(CMatrix a, CMatrix b, CMatrix c, CMatrix d);

  const CMatrix& A() const { return a_; }
  const CMatrix& B() const { return b_; }
  const CMatrix& C() const { return c_; }
  const CMatrix& D() const { return d_; }
  Eigen::Index n() const { return a_.rows(); }
  Eigen::Index m() const { return b_.cols(); }
  Eigen::Index p() const { return c_.rows(); }

 private:
  CMatrix a_, b_, c_, d_;
};

// Largest real part of the spectrum of A.
double spectral_abscissa(const CMatrix& a);

// Every eigenvalue satisfies Re < -rel * ||A||_2.
bool is_stable(const CMatrix& a, double rel = 1e-12);
void require_stable(const LtiSystem& sys);

// G(s) via an LU solve of (sI - A) X = B. PoleError when the solve is singular.
CMatrix transfer_eval(const LtiSystem& sys, Complex s);
// G(i omega).
CMatrix transfer_eval(const LtiSystem& sys, double omega);

// A + xi/2 I and D - xi/2 I; requires m = p.
LtiSystem shifted(const LtiSystem& sys, double xi);

double spectral_norm(const CMatrix& m);

LtiSystem read_lti_json(std::istream& in);
LtiSystem read_lti_file(const std::string& path);
void write_lti_json(const LtiSystem& sys, std::ostream& out);

// Gaussian entries, real or complex with unit variance. When `stable`, A is
// shifted by -(abscissa + margin) I.
LtiSystem random_system(std::uint64_t seed, int n, int m, int p, bool stable, double margin = 0.5,
                        bool complex_entries = true);

}  // namespace maxsmooth
