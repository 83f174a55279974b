#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "belltime/quadrature.hpp"

using namespace belltime;
using std::numbers::pi;

TEST_CASE("midpoint rule on smooth integrands") {
  const QuadratureResult r1 = integrate_midpoint([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r1.value == Catch::Approx(1.0 / 3.0).margin(1e-9));

  const QuadratureResult r2 = integrate_midpoint([](double x) { return std::sin(x); }, 0.0, pi);
  CHECK(r2.value == Catch::Approx(2.0).margin(1e-8));

  const QuadratureResult r3 =
      integrate_midpoint([](double x) { return std::exp(-x); }, 0.0, 3.0);
  CHECK(r3.value == Catch::Approx(1.0 - std::exp(-3.0)).margin(1e-8));
}

TEST_CASE("constant integrand converges immediately") {
  const QuadratureResult r = integrate_midpoint([](double) { return 0.5; }, 0.0, 2.0);
  CHECK(r.value == Catch::Approx(1.0));
  CHECK(r.refinements == 1);
}

TEST_CASE("empty interval integrates to zero") {
  const QuadratureResult r = integrate_midpoint([](double) { return 7.0; }, 1.5, 1.5);
  CHECK(r.value == 0.0);
}

TEST_CASE("piecewise-constant integrand with a midpoint-aligned break is exact") {
  // break at the interval midpoint: with an even subinterval count every cell
  // lies entirely on one side
  auto f = [](double x) { return x < 1.0 ? 0.25 : 0.75; };
  const QuadratureResult r = integrate_midpoint(f, 0.0, 2.0);
  CHECK(r.value == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("options validated") {
  QuadratureOptions bad;
  bad.initial_subintervals = 0;
  CHECK_THROWS_AS(integrate_midpoint([](double) { return 1.0; }, 0.0, 1.0, bad),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate_midpoint([](double) { return 1.0; }, 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("refinement budget exhaustion is reported") {
  QuadratureOptions tight;
  tight.rel_tol = 1e-15;
  tight.abs_tol = 0.0;
  tight.max_refinements = 3;
  // oscillation too fast for the tiny budget
  auto f = [](double x) { return std::sin(300.0 * x); };
  CHECK_THROWS_AS(integrate_midpoint(f, 0.0, 1.0, tight), quadrature_error);
}
