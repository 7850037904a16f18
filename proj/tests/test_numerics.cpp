// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>

#include "doctest.h"
#include "risnet/numerics.hpp"
#include "risnet/rng.hpp"

using namespace risnet;
using numerics::QuadratureConfig;
using CD = std::complex<double>;

TEST_SUITE_BEGIN("numerics");

namespace {

void check_integral(double got, double want) {
  CHECK(std::fabs(got - want) <= std::max(1e-9, 1e-6 * std::fabs(want)));
}

}  // namespace

TEST_CASE("closed-form reference integrals") {
  QuadratureConfig cfg;
  // finite intervals
  check_integral(numerics::integrate([](double x) { return x; }, 0, 1, cfg).value, 0.5);
  check_integral(numerics::integrate([](double x) { return x * x; }, 0, 1, cfg).value, 1.0 / 3.0);
  check_integral(numerics::integrate([](double x) { return std::sin(x); }, 0, M_PI, cfg).value, 2.0);
  check_integral(numerics::integrate([](double x) { return std::exp(x); }, 0, 1, cfg).value, std::exp(1.0) - 1.0);
  check_integral(numerics::integrate([](double x) { return 1.0 / x; }, 1, std::exp(1.0), cfg).value, 1.0);
  check_integral(numerics::integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0, 1, cfg).value, M_PI / 4.0);
  check_integral(numerics::integrate([](double x) { return std::cos(x) * std::cos(x); }, 0, 2 * M_PI, cfg).value, M_PI);
  check_integral(numerics::integrate([](double x) { return std::sqrt(x); }, 0, 1, cfg).value, 2.0 / 3.0);
  check_integral(numerics::integrate([](double x) { return x * std::log(x); }, 1e-12, 1, cfg).value, -0.25);
  check_integral(numerics::integrate([](double x) { return x * std::sin(x); }, 0, M_PI, cfg).value, M_PI);
  check_integral(numerics::integrate([](double x) { return std::cosh(x); }, 0, 1, cfg).value, std::sinh(1.0));
  check_integral(numerics::integrate([](double x) { return std::exp(-x) * std::sin(x); }, 0, 50, cfg).value, 0.5);
  // semi-infinite
  check_integral(numerics::integrate_to_inf([](double x) { return std::exp(-x); }, 0, cfg).value, 1.0);
  check_integral(numerics::integrate_to_inf([](double x) { return x * std::exp(-x); }, 0, cfg).value, 1.0);
  check_integral(numerics::integrate_to_inf([](double x) { return x * x * std::exp(-x); }, 0, cfg).value, 2.0);
  check_integral(numerics::integrate_to_inf([](double x) { return std::exp(-x * x); }, 0, cfg).value, std::sqrt(M_PI) / 2.0);
  check_integral(numerics::integrate_to_inf([](double x) { return 1.0 / ((1 + x) * (1 + x)); }, 0, cfg).value, 1.0);
  check_integral(numerics::integrate_to_inf([](double x) { return 1.0 / (x * x * x); }, 2, cfg, 2.0).value, 0.125);
  check_integral(numerics::integrate_to_inf([](double x) { return std::exp(-2 * x) * std::cos(3 * x); }, 0, cfg).value, 2.0 / 13.0);
  check_integral(numerics::integrate_to_inf([](double x) { return 1.0 / (1.0 + x * x); }, 0, cfg, 10.0).value, M_PI / 2.0);
}

TEST_CASE("shot-noise style tail integral") {
  QuadratureConfig cfg;
  // int_r^inf x (x+1)^{-4} dx with antiderivative -u^{-2}/2 + u^{-3}/3.
  const double r = 100.0;
  auto f = [](double x) { return x * std::pow(x + 1.0, -4.0); };
  const double want = 0.5 / (101.0 * 101.0) - 1.0 / (3.0 * 101.0 * 101.0 * 101.0);
  check_integral(numerics::integrate_to_inf(f, r, cfg, r).value, want);
}

TEST_CASE("complex-valued integration") {
  QuadratureConfig cfg;
  auto f = [](double x) { return std::exp(CD{0.0, x}); };
  const auto got = numerics::integrate(f, 0.0, 1.0, cfg).value;
  CHECK(std::abs(got - CD{std::sin(1.0), 1.0 - std::cos(1.0)}) < 1e-9);
}

TEST_CASE("principal value: odd integrands vanish") {
  QuadratureConfig cfg;
  CHECK(std::fabs(numerics::principal_value([](double u) { return 1.0 / u; }, cfg)) < 1e-10);
  CHECK(std::fabs(numerics::principal_value(
            [](double u) { return std::exp(-u * u) / u; }, cfg)) < 1e-8);

  // Generated odd-function suite: the fold cancels exactly.
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(0.1, 3.0);
    const double c = rng.uniform(-1.0, 1.0);
    auto g = [=](double u) {
      return a * std::cos(b * u) / u + c * u * std::exp(-u * u) +
             std::sin(b * u) * std::exp(-std::fabs(u));
    };
    CHECK(std::fabs(numerics::principal_value(g, cfg)) < 1e-8);
  }
}

TEST_CASE("principal value: Dirichlet integral") {
  QuadratureConfig cfg;
  // PV int sin(u)/u du = pi; the integrand decays only like 1/u, so the
  // marching stops at the rule's resolution and the truncation shows up as
  // an O(1/u_stop) error.
  const double got =
      numerics::principal_value([](double u) { return std::sin(u) / u; }, cfg);
  CHECK(std::fabs(got - M_PI) < 2e-2);
}

TEST_CASE("principal value keeps the even part") {
  QuadratureConfig cfg;
  auto g = [](double u) { return 1.0 / u + std::exp(-u * u); };
  const double got = numerics::principal_value(g, cfg);
  CHECK(std::fabs(got - std::sqrt(M_PI)) < 1e-6);
}

TEST_CASE("Gil-Pelaez at zero: symmetric and constant cases") {
  QuadratureConfig cfg;
  const auto normal = numerics::gil_pelaez_cdf_at_zero(
      [](double u) { return CD{std::exp(-0.5 * u * u), 0.0}; }, cfg);
  CHECK(std::fabs(normal.prob - 0.5) < 1e-8);

  // X = c > 0 constant: cf = e^{iuc}, no decay; truncated with a small bias.
  const auto constant = numerics::gil_pelaez_cdf_at_zero(
      [](double u) { return std::exp(CD{0.0, 2.0 * u}); }, cfg);
  CHECK(constant.truncated);
  CHECK(std::fabs(constant.prob) < 5e-3);

  // Exp(1) - Exp(1): real characteristic function, exactly 1/2.
  const auto lap = numerics::gil_pelaez_cdf_at_zero(
      [](double u) { return CD{1.0 / (1.0 + u * u), 0.0}; }, cfg);
  CHECK(std::fabs(lap.prob - 0.5) < 1e-8);
}

namespace {

double erlang_cdf(int k, double theta, double x) {
  double sum = 0.0, term = 1.0;
  for (int j = 0; j < k; ++j) {
    if (j > 0) term *= x / theta / j;
    sum += term;
  }
  return 1.0 - std::exp(-x / theta) * sum;
}

}  // namespace

TEST_CASE("Gil-Pelaez on shifted Erlang matches the closed form") {
  QuadratureConfig cfg;
  const int ks[5] = {2, 3, 4, 5, 6};
  const double thetas[2] = {0.5, 1.5};
  int cases = 0;
  for (int k : ks) {
    for (double theta : thetas) {
      const double c = k * theta * (cases % 2 == 0 ? 0.7 : 1.3);
      auto cf = [=](double u) {
        // X = Gamma(k, theta) - c
        return std::exp(CD{0.0, -u * c}) *
               std::pow(CD{1.0, -u * theta}, -k);
      };
      const auto got = numerics::gil_pelaez_cdf_at_zero(cf, cfg);
      CHECK(std::fabs(got.prob - erlang_cdf(k, theta, c)) < 1e-5);
      ++cases;
    }
  }
  CHECK(cases == 10);
}

TEST_CASE("complex log1p/expm1 agree with the direct forms") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const CD z{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
    CHECK(std::abs(numerics::log1p(z) - std::log(1.0 + z)) < 1e-12);
    CHECK(std::abs(numerics::expm1(z) - (std::exp(z) - 1.0)) < 1e-12);
  }
  // tiny arguments: the series path must not cancel
  const CD tiny{1e-9, -2e-9};
  CHECK(std::abs(numerics::log1p(tiny) - tiny) < 1e-17);
  CHECK(std::abs(numerics::expm1(tiny) - tiny) < 1e-17);
}

TEST_CASE("non-convergence is reported, value kept") {
  QuadratureConfig cfg;
  cfg.max_subdivisions = 4;
  const auto r = numerics::integrate(
      [](double x) { return std::sin(50.0 * x); }, 0.0, 20.0, cfg);
  CHECK_FALSE(r.converged);
}

TEST_SUITE_END();
