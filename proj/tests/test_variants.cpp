// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "risnet/variants.hpp"
#include "support.hpp"

using namespace risnet;
using namespace risnet::variants;

TEST_SUITE_BEGIN("variants");

namespace {

numerics::QuadratureConfig par() {
  numerics::QuadratureConfig cfg;
  cfg.parallel = true;
  return cfg;
}

analytic::SystemParams variant_base() {
  auto p = analytic::SystemParams::baseline();
  p.lambda_bs = 4e-6;
  p.lambda_ris = analytic::SystemParams::density_for_mean(4.0, 25.0, 35.0);
  p.serving_distance = 80.0;
  p.derive();
  return p;
}

HoleScenario wedge_scenario() {
  HoleScenario sc;
  sc.model = HoleModel::bpp_wedge;
  sc.n_ris = 4;
  return sc;
}

}  // namespace

TEST_CASE("wedge BPP transform basics") {
  const auto p = variant_base();
  const geometry::Point2D bs{80.0, 0.0}, ue{0.0, 0.0};
  WedgeConfig wedge;
  wedge.support = {{0.0, 0.0}, 25.0, 35.0, M_PI / 4.0, 0.0};
  wedge.n_ris = 0;
  CHECK(bpp_wedge_signal_laplace({1.0, 0.0}, bs, ue, wedge, p).value.real() ==
        1.0);

  wedge.n_ris = 4;
  CHECK(bpp_wedge_signal_laplace({0.0, 0.0}, bs, ue, wedge, p).value.real() ==
        doctest::Approx(1.0).epsilon(1e-15));

  // each factor is an MGF >= 1, so the transform grows with the count
  const double s =
      0.4 / (p.p0 * geometry::pathloss(80.0, 4.0, p.pathloss.beta));
  double prev = 1.0;
  for (int n : {1, 2, 4, 8}) {
    wedge.n_ris = n;
    const auto v = bpp_wedge_signal_laplace({s, 0.0}, bs, ue, wedge, p);
    CHECK(v.in_domain);
    CHECK(v.value.real() >= prev);
    prev = v.value.real();
  }
}

TEST_CASE("wedge BPP transform against sampled deployments") {
  const auto p = variant_base();
  const geometry::Point2D bs{80.0, 0.0}, ue{0.0, 0.0};
  WedgeConfig wedge;
  wedge.support = {{0.0, 0.0}, 25.0, 35.0, M_PI / 4.0, 0.0};
  wedge.n_ris = 4;
  const double s =
      0.5 / (p.p0 * geometry::pathloss(80.0, 4.0, p.pathloss.beta));
  Rng rng(83);
  const long n = 20000;
  std::vector<double> vals(n);
  for (long i = 0; i < n; ++i) {
    const auto pts = geometry::sample_wedge_bpp(4, wedge.support, rng);
    double q = 0.0;
    for (const auto& ris : pts) {
      q += fading::sample_reflected_fading(p.stats, rng) * p.p0 *
           geometry::ue_centric_path_gain(bs, ris, ue, 3.0, 3.0,
                                          p.pathloss.beta);
    }
    vals[i] = std::exp(s * q);
  }
  const auto stat = testsupport::mean_se(vals);
  const double want =
      bpp_wedge_signal_laplace({s, 0.0}, bs, ue, wedge, p).value.real();
  CHECK(std::fabs(stat.mean - want) <= 3.0 * stat.se);
}

TEST_CASE("wedge transform agrees with the deficit-model path") {
  const auto p = variant_base();
  const geometry::Point2D bs{80.0, 0.0}, ue{0.0, 0.0};
  WedgeConfig wedge;
  wedge.support = {{0.0, 0.0}, 25.0, 35.0, M_PI / 4.0, 0.0};
  wedge.n_ris = 4;

  analytic::DeficitTransform::Options opts;
  opts.threshold = 1.0;
  opts.reflected_interference = false;
  opts.signal.kind = analytic::SignalField::Kind::ue_wedge_bpp;
  opts.signal.r_in = 25.0;
  opts.signal.r_out = 35.0;
  opts.signal.half_angle = M_PI / 4.0;
  opts.signal.n_ris = 4;
  analytic::DeficitTransform dt(p, opts, par());

  for (double f : {0.2, 0.6, 1.0}) {
    const double s =
        f * 0.8 / (p.p0 * geometry::pathloss(80.0, 4.0, p.pathloss.beta));
    const double a =
        bpp_wedge_signal_laplace({s, 0.0}, bs, ue, wedge, p).value.real();
    const double b = dt.reflected({s, 0.0}).value.real();
    CHECK(std::fabs(a - b) / a < 1e-7);
  }
}

TEST_CASE("hole UE sampler is uniform on the disc") {
  CoverageHoleConfig hole;
  hole.hole_radius = 20.0;
  Rng rng(89);
  std::vector<double> radii;
  for (int i = 0; i < 100000; ++i) {
    const auto u = sample_ue_in_hole(hole, rng);
    const double d = std::hypot(u.x, u.y);
    CHECK(d <= 20.0);
    radii.push_back(d);
  }
  CHECK(testsupport::ks_statistic(radii, [](double d) {
          return d * d / 400.0;
        }) < 0.01);

  hole.hole_radius = 1e-9;
  const auto center = sample_ue_in_hole(hole, rng);
  CHECK(std::hypot(center.x, center.y) <= 1e-9);
}

TEST_CASE("hole config validation names the broken fields") {
  CoverageHoleConfig bad;
  bad.hole_radius = 30.0;  // >= r_in
  CHECK_THROWS_WITH_AS(bad.validate(),
                       doctest::Contains("hole_radius"), ConfigError);
  CoverageHoleConfig penalties;
  penalties.c_d = 1.5;
  CHECK_THROWS_WITH_AS(penalties.validate(), doctest::Contains("c_d"),
                       ConfigError);
}

TEST_CASE("blockage coverage: limits and monotonicity") {
  const auto base = variant_base();
  const auto cfg = par();
  HoleScenario ring;
  ring.model = HoleModel::mcp_ring;

  // vanishing reflected penalty approaches the no-RIS network
  auto tiny = ring;
  tiny.hole.c_r = 1e-9;
  auto bare_params = base;
  bare_params.lambda_ris = 0.0;
  bare_params.derive();
  const double no_ris = coverage_with_blockage(1.0, ring, bare_params, cfg);
  CHECK(std::fabs(coverage_with_blockage(1.0, tiny, base, cfg) - no_ris) <
        1e-5);

  // nondecreasing in both penalties
  double prev = -1.0;
  for (double a : {0.2, 0.5, 1.0}) {
    auto sc = ring;
    sc.hole.c_d = a;
    const double pc = coverage_with_blockage(1.0, sc, base, cfg);
    CHECK(pc >= prev - 1e-4);
    prev = pc;
  }
  prev = -1.0;
  for (double a : {0.2, 0.5, 1.0}) {
    auto sc = ring;
    sc.hole.c_r = a;
    const double pc = coverage_with_blockage(1.0, sc, base, cfg);
    CHECK(pc >= prev - 1e-4);
    prev = pc;
  }
}

TEST_CASE("blockage coverage against the hole simulator") {
  const auto base = variant_base();
  HoleScenario sc;
  sc.model = HoleModel::mcp_ring;
  sc.hole.c_d = std::pow(10.0, -0.3);  // -3 dB
  const double analytic_pc = coverage_with_blockage(1.0, sc, base, par());
  const auto mc = estimate_hole_coverage(sc, base, 1.0, 20000, 5);
  CHECK(std::fabs(analytic_pc - mc.mean) <=
        std::max(0.01, 3.0 * mc.std_error));

  // wedge model too
  auto wedge = wedge_scenario();
  wedge.hole.c_d = sc.hole.c_d;
  const double wedge_pc = coverage_with_blockage(1.0, wedge, base, par());
  const auto wedge_mc = estimate_hole_coverage(wedge, base, 1.0, 20000, 6);
  CHECK(std::fabs(wedge_pc - wedge_mc.mean) <=
        std::max(0.01, 3.0 * wedge_mc.std_error));
}

TEST_CASE("UE-centric ring mirrors the BS-centric machinery") {
  const auto p = variant_base();
  const auto cfg = par();
  analytic::DeficitTransform::Options ue_opts;
  ue_opts.threshold = 1.0;
  ue_opts.reflected_interference = false;
  ue_opts.signal.kind = analytic::SignalField::Kind::ue_ring_ppp;
  ue_opts.signal.r_in = 25.0;
  ue_opts.signal.r_out = 35.0;
  ue_opts.signal.lambda = p.lambda_ris;
  auto bs_opts = ue_opts;
  bs_opts.signal.kind = analytic::SignalField::Kind::bs_ring_ppp;
  const double ue_cov = analytic::coverage_of_model(p, ue_opts, 1.0, cfg);
  const double bs_cov = analytic::coverage_of_model(p, bs_opts, 1.0, cfg);
  CHECK(std::fabs(ue_cov - bs_cov) < 1e-6);
}

TEST_CASE("relative gain is one without RIS") {
  auto base = variant_base();
  base.lambda_ris = 0.0;
  base.derive();
  HoleScenario ring;
  ring.model = HoleModel::mcp_ring;
  ring.hole.c_d = 0.5;
  CHECK(relative_gain(ring, base, par()) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_SUITE_END();
