// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "risnet/geometry.hpp"
#include "support.hpp"

using namespace risnet;
using namespace risnet::geometry;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("pathloss evaluates beta (d+1)^-alpha") {
  CHECK(pathloss(0.0, 4.0, 0.01) == doctest::Approx(0.01));
  CHECK(pathloss(1.0, 4.0, 0.01) == doctest::Approx(0.01 / 16.0));
  const auto pl = PathlossParams::from_carrier(2.4e9);
  const double amp = kSpeedOfLight / (4.0 * M_PI * 2.4e9);
  CHECK(pl.beta == doctest::Approx(amp * amp).epsilon(1e-12));
  CHECK(pathloss(99.0, 3.0, pl.beta) ==
        doctest::Approx(pl.beta / (100.0 * 100.0 * 100.0)).epsilon(1e-12));
  CHECK_THROWS_AS(pathloss(-1.0, 3.0, 1.0), std::domain_error);
}

TEST_CASE("pathloss is decreasing and bounded by beta") {
  const double beta = 0.02;
  for (double alpha : {3.0, 3.5, 4.0, 2.7}) {
    double prev = beta + 1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double d = 2000.0 * i / 1000.0;
      const double g = pathloss(d, alpha, beta);
      CHECK(g <= beta);
      CHECK(g < prev);
      prev = g;
    }
  }
}

TEST_CASE("two-leg gain") {
  const double beta = 0.01;
  CHECK(two_leg_path_gain(0, 0, 1.3, 3, 4, beta) ==
        doctest::Approx(beta * beta));
  // collinear coincidence: second leg at distance zero
  CHECK(two_leg_path_gain(50, 50, 0.0, 3, 4, beta) ==
        doctest::Approx(pathloss(50, 3, beta) * beta));
  const double second = std::sqrt(100.0 * 100.0 + 30.0 * 30.0);
  CHECK(two_leg_path_gain(100, 30, M_PI / 2, 3, 4, beta) ==
        doctest::Approx(pathloss(30, 3, beta) * pathloss(second, 4, beta)));

  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const double x = rng.uniform(0, 500), y = rng.uniform(0, 60);
    const double psi = rng.uniform(0, M_PI);
    CHECK(two_leg_path_gain(x, y, psi, 3, 4, beta) ==
          doctest::Approx(two_leg_path_gain(x, y, -psi, 3, 4, beta)));
  }
}

TEST_CASE("ue-centric gain from node positions") {
  const double beta = 0.01;
  const Point2D bs{80, 0}, ue{0, 0};
  CHECK(ue_centric_path_gain(bs, bs, ue, 3, 3, beta) ==
        doctest::Approx(beta * pathloss(80, 3, beta)));
  const Point2D ris{30, 0};
  CHECK(ue_centric_path_gain(bs, ris, ris, 3, 3, beta) ==
        doctest::Approx(pathloss(50, 3, beta) * beta));
  CHECK(ue_centric_path_gain(bs, ris, ue, 3, 3, beta) ==
        doctest::Approx(pathloss(50, 3, beta) * pathloss(30, 3, beta)));
}

TEST_CASE("interferer field: count statistics and support") {
  Rng rng(17);
  CHECK(sample_bs_field(0.0, 100, 1000, rng).empty());
  CHECK_THROWS_AS(sample_bs_field(1e-5, 1000, 1000, rng), std::domain_error);

  const double lambda = 1e-5, r = 100, r_max = 1000;
  const double mean = lambda * M_PI * (r_max * r_max - r * r);
  long total = 0;
  const int reps = 10000;
  for (int i = 0; i < reps; ++i) {
    const auto pts = sample_bs_field(lambda, r, r_max, rng);
    total += static_cast<long>(pts.size());
    if (i < 50) {
      for (const auto& p : pts) {
        const double d = std::hypot(p.x, p.y);
        CHECK(d >= r);
        CHECK(d <= r_max);
      }
    }
  }
  const double got = static_cast<double>(total) / reps;
  const double se = std::sqrt(mean / reps);
  CHECK(std::fabs(got - mean) <= 3.0 * se);
}

TEST_CASE("annulus cluster: support, count, radial law") {
  Rng rng(23);
  const AnnulusSupport support{{10.0, -4.0}, 25.0, 35.0};
  CHECK(sample_annulus_cluster(support, 0.0, rng).empty());

  const double mean = 5.0;
  const double lambda = mean / (M_PI * (35.0 * 35.0 - 25.0 * 25.0));
  std::vector<double> radii;
  long count = 0;
  const int reps = 20000;
  for (int i = 0; i < reps; ++i) {
    for (const auto& p : sample_annulus_cluster(support, lambda, rng)) {
      const double d = std::hypot(p.x - 10.0, p.y + 4.0);
      CHECK(d >= 25.0);
      CHECK(d <= 35.0);
      if (radii.size() < 100000) radii.push_back(d);
      ++count;
    }
  }
  const double got = static_cast<double>(count) / reps;
  CHECK(std::fabs(got - mean) <= 3.0 * std::sqrt(mean / reps));

  auto radial_cdf = [](double y) {
    return (y * y - 625.0) / (1225.0 - 625.0);
  };
  CHECK(testsupport::ks_statistic(radii, radial_cdf) < 0.01);
}

TEST_CASE("wedge binomial points") {
  Rng rng(31);
  const WedgeSupport support{{0, 0}, 25, 35, M_PI / 4, 0.6};
  CHECK(sample_wedge_bpp(0, support, rng).empty());

  const auto four = sample_wedge_bpp(4, support, rng);
  CHECK(four.size() == 4);

  std::vector<double> angles;
  for (int i = 0; i < 25000; ++i) {
    for (const auto& p : sample_wedge_bpp(4, support, rng)) {
      const double d = std::hypot(p.x, p.y);
      CHECK(d >= 25.0);
      CHECK(d <= 35.0);
      double ang = std::atan2(p.y, p.x) - support.orientation;
      CHECK(std::fabs(ang) <= M_PI / 4 + 1e-12);
      angles.push_back(ang);
    }
  }
  auto angular_cdf = [](double a) { return (a + M_PI / 4) / (M_PI / 2); };
  CHECK(testsupport::ks_statistic(angles, angular_cdf) < 0.01);
}

TEST_SUITE_END();
