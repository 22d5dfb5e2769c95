#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maxsmooth/counterexample.hpp"
#include "maxsmooth/errors.hpp"
#include "maxsmooth/maxfun.hpp"

using namespace maxsmooth;

namespace {

MaxFunction polys(std::vector<std::vector<double>> members) {
  std::vector<ScalarFunction> out;
  int i = 1;
  for (auto& c : members) out.push_back(polynomial_function("f" + std::to_string(i++), c, {-1.0, 1.0}));
  return MaxFunction(std::move(out));
}

}  // namespace

TEST_CASE("eval_max returns the value and every index attaining it") {
  const auto both = polys({{0, 0, -1}, {0, 0, -2}});
  const auto v0 = eval_max(both, 0.0);
  CHECK(v0.value == 0.0);
  CHECK(v0.argmax == std::vector<std::size_t>{0, 1});

  const auto two = builtin_family("two_piece_c1");
  const auto left = eval_max(two, -1.0);
  CHECK(left.value == -1.0);
  CHECK(left.argmax == std::vector<std::size_t>{0});
  const auto right = eval_max(two, 1.0);
  CHECK(right.value == -2.0);
  CHECK(right.argmax == std::vector<std::size_t>{1});

  CHECK_THROWS_AS(eval_max(two, 1.5), DomainError);
}

TEST_CASE("eval_max dominates every member") {
  const auto f = polys({{0.1, -0.3, -1}, {0, 0.5, -2, 0.7}, {-0.2, 0, 0, 1}});
  for (int i = 0; i <= 200; ++i) {
    const double t = -1.0 + i / 100.0;
    const auto v = eval_max(f, t);
    bool hit = false;
    for (std::size_t j = 0; j < f.size(); ++j) {
      CHECK(v.value >= f.member(j).eval(t));
      hit = hit || v.value == f.member(j).eval(t);
    }
    CHECK(hit);
  }
}

TEST_CASE("active_set membership follows the tolerance") {
  const auto two = builtin_family("two_piece_c1");
  const auto a = active_set(two, 0.0, 1e-12);
  CHECK(a.level == 0.0);
  CHECK(a.indices == std::vector<std::size_t>{0, 1});

  const auto separated = polys({{0, 0, -1}, {-1, 0, -2}});
  CHECK(active_set(separated, 0.0, 1e-12).indices == std::vector<std::size_t>{0});
  CHECK(default_active_tolerance(0.0) == doctest::Approx(1e-10));
  CHECK_THROWS_AS(active_set(separated, 0.0, -1.0), ArgumentError);

  // Counterexample members cross at every midpoint t_k.
  auto fn = std::make_shared<const CounterexampleFunction>(SlopeSequence::quarter_decay(), 20);
  const auto pair = as_max_function(fn);
  for (int k : {0, 3, 9, 15})
    CHECK(active_set(pair, DyadicGrid::midpoint(k)).indices == std::vector<std::size_t>{0, 1});
}

TEST_CASE("stationarity_check separates C1 maximizers from kinks") {
  const auto schedule = dyadic_schedule(1, 20);
  CHECK(schedule.size() == 20);
  CHECK(schedule.front() == 0.5);

  const auto smooth = stationarity_check(builtin_family("two_piece_c1"), 0.0, schedule);
  CHECK(smooth.converges_to_zero);
  CHECK(std::abs(smooth.right_quotients.back()) < 1e-5);

  const auto kink = stationarity_check(builtin_family("neg_abs"), 0.0, schedule);
  CHECK_FALSE(kink.converges_to_zero);
  CHECK(kink.right_quotients.back() == -1.0);
  CHECK(kink.left_quotients.back() == 1.0);

  const auto line = stationarity_check(polys({{0, 1}}), 0.0, schedule);
  CHECK_FALSE(line.converges_to_zero);
  CHECK(line.right_quotients.back() == doctest::Approx(1.0));

  CHECK_THROWS_AS(stationarity_check(polys({{0}}), 0.0, std::vector<double>{}), ArgumentError);
  CHECK_THROWS_AS(stationarity_check(polys({{0}}), 0.0, std::vector<double>{0.1, 0.2}), ArgumentError);
}

TEST_CASE("quadratic_model takes half the largest active second derivative") {
  CHECK(quadratic_model(polys({{0, 0, -2}}), 0.0).curvature == -2.0);
  CHECK(quadratic_model(polys({{0, 0, -1}, {0, 0, -2}}), 0.0).curvature == -1.0);
  CHECK(quadratic_model(builtin_family("remark_sin_pair"), 0.0).curvature == 0.0);
}

TEST_CASE("two_piece_c1 has only one-sided models at 0") {
  const auto two = builtin_family("two_piece_c1");
  CHECK_THROWS_AS(quadratic_model(two, 0.0), CapabilityError);
  const auto sides = one_sided_quadratic_models(two, 0.0);
  CHECK(sides.left.curvature == -1.0);
  CHECK(sides.right.curvature == -2.0);

  // Brute-force fit of f_max(e) = M e^2 on each side.
  for (double e : {-1e-2, -1e-3, -1e-4}) CHECK(two(e) / (e * e) == doctest::Approx(-1.0));
  for (double e : {1e-2, 1e-3, 1e-4}) CHECK(two(e) / (e * e) == doctest::Approx(-2.0));

  // Second quotients tend to -2 from the left and -4 from the right.
  for (double e : dyadic_schedule(4, 20)) {
    CHECK(2.0 * (two(-e) - two(0.0)) / (e * e) == doctest::Approx(-2.0));
    CHECK(2.0 * (two(e) - two(0.0)) / (e * e) == doctest::Approx(-4.0));
  }
}

TEST_CASE("expansion_residual fits the order of the remainder") {
  const auto schedule = dyadic_schedule(2, 20);
  const auto exact = expansion_residual(polys({{0, 0, -2}}), 0.0, schedule);
  CHECK(std::isinf(exact.fitted_order));
  for (double r : exact.residuals) CHECK(r == 0.0);

  const auto cubic = expansion_residual(polys({{0, 0, -1, 1}, {0, 0, -1, -1}}), 0.0, schedule);
  CHECK(cubic.fitted_order == doctest::Approx(3.0).epsilon(0.2 / 3.0));
  for (std::size_t i = 0; i < cubic.steps.size(); ++i)
    CHECK(cubic.residuals[i] == doctest::Approx(std::pow(cubic.steps[i], 3)));

  // Zero entries of the grid are skipped.
  const std::vector<double> with_zero{0.0, 0.5, 0.25};
  CHECK(expansion_residual(polys({{0, 0, -1, 1}}), 0.0, with_zero).steps.size() == 2);

  // Counterexample pair at 0, sampled at u = -1/4 inside each piece where f_max = p_k > -t^2.
  auto fn = std::make_shared<const CounterexampleFunction>(SlopeSequence::quarter_decay(), 40);
  const auto pair = as_max_function(fn);
  const auto model = quadratic_model(pair, 0.0);
  CHECK(model.curvature == -1.0);
  std::vector<double> grid;
  for (int k = 3; k <= 25; ++k) grid.push_back(1.25 * DyadicGrid::breakpoint(k + 1));
  const auto ce = expansion_residual(pair, model, grid);
  CHECK(ce.fitted_order >= 2.0);
}

TEST_CASE("builtin families evaluate by direct substitution") {
  const auto two = builtin_family("two_piece_c1");
  CHECK(two.member(0).eval(-1.0) == -1.0);
  CHECK(two.member(1).eval(-1.0) == -2.0);
  CHECK(two.member(0).eval(1.0) == -3.0);
  CHECK(two.member(1).eval(1.0) == -2.0);

  const auto sin_pair = builtin_family("remark_sin_pair");
  const double t = 1.0 / std::numbers::pi;
  CHECK(sin_pair.member(0).eval(t) == doctest::Approx(-std::pow(t, 8)).epsilon(1e-12));
  for (int order = 0; order <= 3; ++order) CHECK(*sin_pair.member(0).deriv(0.0, order) == 0.0);

  CHECK(builtin_family("neg_abs")(0.0) == 0.0);
  CHECK(builtin_family_names().size() == 3);
  CHECK_THROWS_AS(builtin_family("nope"), ArgumentError);
}

TEST_CASE("sin pair derivatives match central differences") {
  const auto sin_pair = builtin_family("remark_sin_pair");
  for (std::size_t j = 0; j < 2; ++j) {
    const auto& f = sin_pair.member(j);
    for (double t : {0.3, -0.45, 0.8}) {
      const double h = 1e-5;
      for (int order = 1; order <= 3; ++order) {
        const double fd = (*f.deriv(t + h, order - 1) - *f.deriv(t - h, order - 1)) / (2.0 * h);
        CHECK(*f.deriv(t, order) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
      }
    }
    CHECK_FALSE(f.deriv(0.2, 4).has_value());
  }
}

TEST_CASE("deriv reports disagreeing sides as a capability error") {
  const auto kink = builtin_family("neg_abs");
  CHECK_THROWS_AS(kink.member(0).deriv(0.0, 1), CapabilityError);
  CHECK(*kink.member(0).one_sided_deriv(0.0, 1, Side::left) == 1.0);
  CHECK(*kink.member(0).one_sided_deriv(0.0, 1, Side::right) == -1.0);
  CHECK(kink.member(0).deriv(0.5, 0).value() == -0.5);
}

TEST_CASE("construction rejects malformed families") {
  CHECK_THROWS_AS(MaxFunction(std::vector<ScalarFunction>{}), ArgumentError);
  auto narrow = polynomial_function("g", {0}, {-0.5, 0.5});
  CHECK_THROWS_AS(MaxFunction({narrow}, Interval{-1.0, 1.0}), ArgumentError);
  CHECK(MaxFunction({narrow, polynomial_function("h", {1}, {-1, 1})}).domain().hi == 0.5);
  CHECK_THROWS_AS(ScalarFunction("bad", {1.0, 0.0}, 1, 1, [](double, int, Side) { return 0.0; }), ArgumentError);
  CHECK_THROWS_AS(dyadic_schedule(5, 2), ArgumentError);
}
