#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "emsr/constants.hpp"
#include "emsr/quadrature.hpp"

using namespace emsr;

TEST_CASE("finite interval: polynomials and oscillatory integrands") {
  auto cube = [](double x) { return x * x * x - 2.0 * x + 1.0; };
  const QuadratureResult r1 = integrate(cube, -1.0, 3.0);
  // exact: x^4/4 - x^2 + x over [-1, 3] = 16
  CHECK(r1.value == doctest::Approx(16.0).epsilon(1e-12));

  const QuadratureResult r2 =
      integrate([](double x) { return std::sin(41.0 * x); }, 0.0, pi);
  CHECK(r2.value == doctest::Approx(2.0 / 41.0).epsilon(1e-9));
}

TEST_CASE("real line: gaussian and dipole-kernel shapes") {
  const QuadratureResult g = integrate_real_line(
      [](double z) { return std::exp(-z * z); }, 1.0);
  CHECK(g.value == doctest::Approx(std::sqrt(pi)).epsilon(1e-10));

  // integral of d/(d^2+z^2)^{3/2} dz = 2/d
  for (double d : {1e-10, 1e-9, 2.5e-9, 1e-8}) {
    const QuadratureResult r = integrate_real_line(
        [d](double z) { return d / std::pow(d * d + z * z, 1.5); }, d);
    CHECK(r.value == doctest::Approx(2.0 / d).epsilon(1e-10));
  }

  // integral of dz/(d^2+z^2)^{5/2} = 4/(3 d^4)
  const double d = 3e-10;
  const QuadratureResult r5 = integrate_real_line(
      [d](double z) { return 1.0 / std::pow(d * d + z * z, 2.5); }, d);
  CHECK(r5.value == doctest::Approx(4.0 / (3.0 * std::pow(d, 4))).epsilon(1e-10));
}

TEST_CASE("odd integrand vanishes") {
  const QuadratureResult r = integrate_real_line(
      [](double z) { return z / std::pow(1.0 + z * z, 2.0); }, 1.0);
  CHECK(std::abs(r.value) < 1e-15);
}

TEST_CASE("evaluation budget raises ConvergenceError with an estimate") {
  QuadratureOptions opts;
  opts.rel_tol = 1e-16;  // unreachable for a kinked integrand
  opts.max_evaluations = 200;
  bool threw = false;
  try {
    integrate([](double x) { return std::abs(x - 0.3333); }, -1.0, 1.0, opts);
  } catch (const ConvergenceError& err) {
    threw = true;
    // the estimate carried out is already close to the true value 1.1111...
    CHECK(err.estimate() == doctest::Approx(1.11108889).epsilon(1e-3));
    CHECK(err.error() > 0.0);
  }
  CHECK(threw);
}

TEST_CASE("zero-width interval") {
  const QuadratureResult r = integrate([](double x) { return x; }, 2.0, 2.0);
  CHECK(r.value == 0.0);
}
