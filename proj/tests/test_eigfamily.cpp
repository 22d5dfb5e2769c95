#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maxsmooth/eigfamily.hpp"
#include "maxsmooth/errors.hpp"
#include "oracles.hpp"

using namespace maxsmooth;

namespace {

CMatrix diag2(double a, double b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// diag(t, -t).
HermitianFamily split_pair() { return HermitianFamily::polynomial({CMatrix::Zero(2, 2), diag2(1, -1)}); }

CMatrix fixed_unitary() {
  const double c = std::cos(0.7), s = std::sin(0.7);
  CMatrix u(2, 2);
  u << Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0);
  return u;
}

// U diag(-t^2, -t^2 + t^3) U*: lambda_max = -t^2 + max(0, t^3), double eigenvalue at 0.
HermitianFamily designed_pair() {
  return HermitianFamily::rotated_diagonal(
      fixed_unitary(), {[](double t) { return -t * t; }, [](double t) { return -t * t + t * t * t; }});
}

}  // namespace

TEST_CASE("eval_extremal examples") {
  CHECK(eval_extremal(ExtremalFunction(split_pair(), ExtremalKind::lambda_max), 0.3) == doctest::Approx(0.3));
  CHECK(eval_extremal(ExtremalFunction(split_pair(), ExtremalKind::spec_radius), -2.0) == doctest::Approx(2.0));
  CHECK(eval_extremal(ExtremalFunction(split_pair(), ExtremalKind::inner_spec_radius), 0.0) == 0.0);
  const auto scalar = MatrixFamily::polynomial({CMatrix::Zero(1, 1), CMatrix::Ones(1, 1)});
  CHECK(eval_extremal(ExtremalFunction(scalar, ExtremalKind::sigma_min), 0.0) == 0.0);
  CHECK(eval_extremal(ExtremalFunction(scalar, ExtremalKind::sigma_max), -0.25) == doctest::Approx(0.25));
}

TEST_CASE("kind and representation mismatches are rejected") {
  const auto scalar = MatrixFamily::polynomial({CMatrix::Ones(1, 1)});
  CHECK_THROWS_AS(ExtremalFunction(split_pair(), ExtremalKind::sigma_max), ArgumentError);
  CHECK_THROWS_AS(ExtremalFunction(scalar, ExtremalKind::lambda_max), ArgumentError);
  CMatrix bad(2, 2);
  bad << 1, 2, 3, 4;
  CHECK_THROWS_AS(HermitianFamily::polynomial({bad}), ArgumentError);
  CHECK_THROWS_AS(HermitianFamily::rotated_diagonal(2.0 * CMatrix::Identity(2, 2), {[](double) { return 0.0; },
                                                                                     [](double) { return 0.0; }}),
                  ArgumentError);
  CHECK_THROWS_AS(parse_kind("lambda_mid"), ArgumentError);
  CHECK(parse_kind("sigma_min") == ExtremalKind::sigma_min);
}

TEST_CASE("transfer-backed families raise at poles") {
  auto sys = std::make_shared<const LtiSystem>(CMatrix::Zero(1, 1), CMatrix::Ones(1, 1), CMatrix::Ones(1, 1),
                                               CMatrix::Zero(1, 1));
  const ExtremalFunction gain(MatrixFamily::transfer_backed(sys), ExtremalKind::sigma_max);
  CHECK_THROWS_AS(gain(0.0), PoleError);
  CHECK(gain(2.0) == doctest::Approx(0.5));
}

TEST_CASE("spectral radius identities on random families") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto h = random_hermitian_family(seed, 6, 2);
    const ExtremalFunction mx(h, ExtremalKind::lambda_max), mn(h, ExtremalKind::lambda_min),
        rho(h, ExtremalKind::spec_radius), inner(h, ExtremalKind::inner_spec_radius);
    const ExtremalFunction neg_max(h.negated(), ExtremalKind::lambda_max);
    for (int i = 0; i <= 20; ++i) {
      const double t = -1.0 + 0.1 * i;
      CHECK(rho(t) == std::max(mx(t), -mn(t)));
      CHECK(mn(t) == -neg_max(t));
      const CMatrix inv = h(t).inverse();
      const double rho_inv = Eigen::ComplexEigenSolver<CMatrix>(inv, false).eigenvalues().cwiseAbs().maxCoeff();
      CHECK(inner(t) * rho_inv == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(mx(t) == doctest::Approx(oracle::lambda_max_general(h(t))).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("Gram-family sigma_max equals direct SVD") {
  for (std::uint64_t seed = 11; seed <= 16; ++seed) {
    for (auto [rows, cols] : {std::pair{5, 3}, std::pair{3, 5}, std::pair{4, 4}}) {
      const auto a = random_matrix_family(seed, rows, cols, 3);
      const ExtremalFunction smax(a, ExtremalKind::sigma_max), smin(a, ExtremalKind::sigma_min);
      for (int i = 0; i <= 10; ++i) {
        const double t = -1.0 + 0.2 * i;
        const Eigen::VectorXd sv = Eigen::JacobiSVD<CMatrix>(a(t)).singularValues();
        CHECK(std::abs(smax(t) - sv(0)) <= 1e-10 * sv(0));
        CHECK(smin(t) == doctest::Approx(sv(sv.size() - 1)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("rotated_diagonal lambda_max equals the largest stored curve") {
  const auto h = designed_pair();
  const ExtremalFunction mx(h, ExtremalKind::lambda_max), mn(h, ExtremalKind::lambda_min);
  for (int i = 0; i <= 40; ++i) {
    const double t = -1.0 + 0.05 * i;
    const auto curves = *h.curve_values(t);
    CHECK(std::abs(mx(t) - std::max(curves[0], curves[1])) <= 1e-12);
    CHECK(std::abs(mn(t) - std::min(curves[0], curves[1])) <= 1e-12);
    CHECK(*h.negated().curve_values(t) == std::vector<double>{-curves[0], -curves[1]});
  }
  CHECK(ExtremalFunction(h, ExtremalKind::lambda_max).cluster_size(0.0) == 2);
  CHECK(ExtremalFunction(h, ExtremalKind::lambda_max).cluster_size(0.5) == 1);
}

TEST_CASE("smoothness_probe examples") {
  const auto designed = smoothness_probe(ExtremalFunction(designed_pair(), ExtremalKind::lambda_max), 0.0);
  CHECK(designed.smooth);
  CHECK(designed.status == ProbeStatus::smooth);
  CHECK(designed.fd_second_left == doctest::Approx(-2.0).epsilon(1e-3));
  CHECK(designed.fd_second_right == doctest::Approx(-2.0).epsilon(1e-3));
  CHECK(designed.cluster_size == 2);

  const auto kink = smoothness_probe(ExtremalFunction(split_pair(), ExtremalKind::lambda_max), 0.0);
  CHECK_FALSE(kink.smooth);
  CHECK(kink.status == ProbeStatus::nonsmooth);
  CHECK(kink.fd_first_left == doctest::Approx(-1.0));
  CHECK(kink.fd_first_right == doctest::Approx(1.0));

  CMatrix c(1, 1);
  c(0, 0) = -2.0;
  const auto scalar = HermitianFamily::polynomial({CMatrix::Zero(1, 1), CMatrix::Zero(1, 1), c});
  const auto quad = smoothness_probe(ExtremalFunction(scalar, ExtremalKind::lambda_max), 0.0);
  CHECK(quad.smooth);
  CHECK(quad.fd_second_left == doctest::Approx(-4.0).epsilon(1e-6));
  CHECK(quad.fd_second_right == doctest::Approx(-4.0).epsilon(1e-6));
  CHECK(quad.step_floor == std::ldexp(1.0, -26));
  CHECK(quad.lipschitz_estimate < 1e-3);

  const auto line = MatrixFamily::polynomial({CMatrix::Zero(1, 1), CMatrix::Ones(1, 1)});
  CHECK(smoothness_probe(ExtremalFunction(line, ExtremalKind::sigma_min), 0.0).status ==
        ProbeStatus::assumption_violated);
}

// Generic polynomial families have lambda_max without interior maxima on [-1, 1];
// a -8 t^2 I drift moves every eigenvalue equally and creates one.
HermitianFamily drifted(std::uint64_t seed) {
  auto coeffs = random_hermitian_family(seed, 8, 3).coefficients();
  coeffs[2] -= 8.0 * CMatrix::Identity(8, 8);
  return HermitianFamily::polynomial(std::move(coeffs));
}

TEST_CASE("smoothness_probe passes at maximizers of random families") {
  int found = 0;
  for (std::uint64_t seed = 100; seed < 105; ++seed) {
    const ExtremalFunction f(drifted(seed), ExtremalKind::lambda_max);
    const int n = 400;
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = f(-1.0 + 2.0 * i / n);
    for (int i = 1; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      if (v[u] < v[u - 1] || v[u] < v[u + 1]) continue;
      const double a = -1.0 + 2.0 * (i - 1) / n, b = -1.0 + 2.0 * (i + 1) / n;
      const auto r = local_refine(f, a, b);
      if (r.status != SolveStatus::converged) continue;
      const auto probe = smoothness_probe(f, r.locations.front());
      CHECK(probe.smooth);
      ++found;
    }
  }
  CHECK(found >= 5);
}

TEST_CASE("local_refine examples") {
  CMatrix one = CMatrix::Ones(1, 1);
  const auto bump = HermitianFamily::polynomial({-one, 2.0 * one, -one});
  const auto r = local_refine(ExtremalFunction(bump, ExtremalKind::lambda_max), 0.0, 2.0, 1e-10);
  CHECK(r.status == SolveStatus::converged);
  CHECK(std::abs(r.locations.front() - 1.0) <= 1e-7);
  CHECK(r.optimum == doctest::Approx(0.0).scale(1.0));

  const auto d = local_refine(ExtremalFunction(designed_pair(), ExtremalKind::lambda_max), -0.5, 0.5, 1e-10);
  CHECK(d.status == SolveStatus::converged);
  CHECK(std::abs(d.locations.front()) <= 1e-6);
  CHECK(d.curvature == doctest::Approx(-2.0).epsilon(1e-2));
  CHECK(d.history.size() >= 2);

  const auto e = local_refine(ExtremalFunction(split_pair().negated(), ExtremalKind::lambda_min), -1.0, 1.0);
  CHECK(e.status == SolveStatus::endpoint);
  CHECK(std::abs(std::abs(e.locations.front()) - 1.0) <= 1e-6);

  CHECK_THROWS_AS(local_refine(ExtremalFunction(bump, ExtremalKind::lambda_max), 1.0, 1.0), ArgumentError);
}

TEST_CASE("random families are deterministic and Hermitian") {
  const auto a = random_hermitian_family(9, 8, 3), b = random_hermitian_family(9, 8, 3);
  REQUIRE(a.coefficients().size() == 4);
  for (std::size_t j = 0; j < 4; ++j) CHECK(a.coefficients()[j] == b.coefficients()[j]);
  CHECK(random_hermitian_family(10, 8, 3).coefficients()[0] != a.coefficients()[0]);
  const auto m1 = random_matrix_family(3, 4, 2, 1), m2 = random_matrix_family(3, 4, 2, 1);
  CHECK(m1(0.37) == m2(0.37));

  Rng rng(123);
  int positive_gaps = 0;
  for (int i = 0; i < 100; ++i) {
    const double t = 2.0 * rng.uniform() - 1.0;
    const CMatrix h = a(t);
    CHECK((h - h.adjoint()).norm() <= 1e-13 * h.norm());
    const Eigen::VectorXd ev = hermitian_eigenvalues(h);
    double gap = INFINITY;
    for (Eigen::Index j = 1; j < ev.size(); ++j) gap = std::min(gap, ev(j) - ev(j - 1));
    positive_gaps += gap > 0.0;
  }
  CHECK(positive_gaps == 100);
  CHECK_THROWS_AS(random_hermitian_family(1, 0, 1), ArgumentError);
}

TEST_CASE("maximize_bracket converges on a smooth peak") {
  const auto r = maximize_bracket([](double t) { return std::cos(t - 0.4); }, -1.0, 2.0, 1e-10);
  CHECK(r.status == SolveStatus::converged);
  CHECK(r.optimum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(r.locations.front() - 0.4) <= 1e-7);
  CHECK(r.curvature == doctest::Approx(-1.0).epsilon(1e-3));
}
