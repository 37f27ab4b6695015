#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gausslab/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace gausslab;

TEST_CASE("Gauss-Hermite integrates normal moments exactly") {
  const QuadratureRule& rule = gauss_hermite(8);
  CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(1e-13));

  auto moment = [&](int k) {
    double s = 0.0;
    for (int i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * std::pow(rule.nodes[i], k);
    return s;
  };
  CHECK(moment(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(moment(2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(moment(4) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(moment(6) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(moment(8) == doctest::Approx(105.0).epsilon(1e-12));
  // odd degree 15 is still within exactness; roundoff only (node powers ~1e10)
  CHECK(std::abs(moment(15)) < 1e-5);
}

TEST_CASE("Gauss-Legendre on the unit interval") {
  const QuadratureRule& rule = gauss_legendre_unit(6);
  CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(1e-13));
  auto integral = [&](auto f) {
    double s = 0.0;
    for (int i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * f(rule.nodes[i]);
    return s;
  };
  CHECK(integral([](double x) { return x; }) == doctest::Approx(0.5));
  CHECK(integral([](double x) { return x * x; }) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  for (int i = 0; i < rule.nodes.size(); ++i) {
    CHECK(rule.nodes[i] > 0.0);
    CHECK(rule.nodes[i] < 1.0);
  }
}

TEST_CASE("adaptive normal integration") {
  double gaussian_exp = integrate_normal([](double v) { return std::exp(v); });
  CHECK(gaussian_exp == doctest::Approx(std::exp(0.5)).epsilon(1e-12));

  // E|v|^3 = 2 sqrt(2/pi)
  double abs_cube = integrate_normal_kinked(
      [](double v) { return std::abs(v) * v * v; }, {0.0});
  CHECK(abs_cube ==
        doctest::Approx(2.0 * std::sqrt(2.0 / std::numbers::pi))
            .epsilon(1e-11));

  // E|v| = sqrt(2/pi)
  double abs_first =
      integrate_normal_kinked([](double v) { return std::abs(v); }, {0.0});
  CHECK(abs_first ==
        doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-11));

  // |v - 1/2| has mean via the shifted closed form
  double shifted = integrate_normal_kinked(
      [](double v) { return std::abs(v - 0.5); }, {0.5});
  double mu = 0.5;
  double closed = std::sqrt(2.0 / std::numbers::pi) * std::exp(-mu * mu / 2.0) +
                  mu * std::erf(mu / std::sqrt(2.0));
  CHECK(shifted == doctest::Approx(closed).epsilon(1e-11));
}

TEST_CASE("rule caching returns identical objects") {
  const QuadratureRule& a = gauss_hermite(16);
  const QuadratureRule& b = gauss_hermite(16);
  CHECK(&a == &b);
}
