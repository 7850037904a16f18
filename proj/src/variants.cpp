// SPDX-License-Identifier: Apache-2.0
#include "risnet/variants.hpp"

#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace risnet::variants {

namespace {

using analytic::DeficitTransform;
using analytic::SignalField;
using geometry::pathloss;
using geometry::Point2D;

SystemParams anchored_params(const CoverageHoleConfig& hole,
                             const SystemParams& base) {
  SystemParams p = base;
  p.serving_distance = hole.serving_distance;
  p.derive();
  return p;
}

SignalField signal_field_of(const HoleScenario& sc, const SystemParams& p) {
  SignalField f;
  f.r_in = sc.hole.r_in;
  f.r_out = sc.hole.r_out;
  switch (sc.model) {
    case HoleModel::mcp_ring:
      f.kind = SignalField::Kind::ue_ring_ppp;
      f.lambda = p.lambda_ris;
      break;
    case HoleModel::bpp_wedge:
      f.kind = SignalField::Kind::ue_wedge_bpp;
      f.half_angle = sc.wedge_half_angle;
      f.n_ris = sc.n_ris;
      break;
    case HoleModel::ppp_wedge:
      f.kind = SignalField::Kind::ue_wedge_ppp;
      f.half_angle = sc.wedge_half_angle;
      f.lambda = sc.wedge_ppp_mean /
                 (sc.wedge_half_angle *
                  (sc.hole.r_out * sc.hole.r_out - sc.hole.r_in * sc.hole.r_in));
      break;
  }
  return f;
}

DeficitTransform::Options options_of(const HoleScenario& sc,
                                     const SystemParams& p, double threshold) {
  DeficitTransform::Options opts;
  opts.threshold = threshold;
  opts.c_reflected = sc.hole.c_r;
  // Cross-cell RIS layouts are unspecified in this deployment; their
  // reflections are dropped from the interference.
  opts.reflected_interference = false;
  opts.signal = signal_field_of(sc, p);
  return opts;
}

}  // namespace

void CoverageHoleConfig::validate() const {
  std::ostringstream bad;
  auto require = [&](bool ok, const char* what) {
    if (!ok) bad << (bad.tellp() > 0 ? "; " : "") << what;
  };
  require(hole_radius >= 0.0 && hole_radius < r_in,
          "need hole_radius < r_in");
  require(r_in > 0.0 && r_in < r_out, "need 0 < r_in < r_out");
  require(c_d > 0.0 && c_d <= 1.0, "c_d must be in (0, 1]");
  require(c_r > 0.0 && c_r <= 1.0, "c_r must be in (0, 1]");
  require(serving_distance > 0.0, "serving_distance must be > 0");
  if (bad.tellp() > 0) {
    throw ConfigError("invalid coverage-hole config: " + bad.str());
  }
}

TransformValue bpp_wedge_signal_laplace(std::complex<double> s,
                                        const Point2D& bs, const Point2D& ue,
                                        const WedgeConfig& wedge,
                                        const SystemParams& p) {
  const auto& sup = wedge.support;
  if (wedge.n_ris == 0) return {{1.0, 0.0}, true};
  const auto& pl = p.pathloss;
  const double area =
      sup.half_angle * (sup.r_out * sup.r_out - sup.r_in * sup.r_in);
  // Product Gauss-Legendre rule; the integrand is smooth on the wedge.
  std::vector<double> yn, yw, an, aw;
  numerics::gauss_legendre(16, yn, yw);
  numerics::gauss_legendre(32, an, aw);
  const double ymid = 0.5 * (sup.r_in + sup.r_out);
  const double yhal = 0.5 * (sup.r_out - sup.r_in);
  std::complex<double> acc{0.0, 0.0};
  double max_gain = 0.0;
  for (std::size_t i = 0; i < yn.size(); ++i) {
    const double y = ymid + yhal * yn[i];
    for (std::size_t j = 0; j < an.size(); ++j) {
      const double ang = sup.orientation + sup.half_angle * an[j];
      const Point2D ris{sup.center.x + y * std::cos(ang),
                        sup.center.y + y * std::sin(ang)};
      const double gain = geometry::ue_centric_path_gain(
          bs, ris, ue, pl.alpha_los, pl.alpha_los, pl.beta);
      max_gain = std::max(max_gain, gain);
      const double w = (yhal * yw[i]) * (sup.half_angle * aw[j]) * y;
      acc += w * fading::one_minus_reflected_fading_laplace(-s * p.p0 * gain,
                                                            p.stats);
    }
  }
  if (p.stats.sigma_re_sq > 0.0 &&
      s.real() >= 1.0 / (2.0 * p.stats.sigma_re_sq * p.p0 * max_gain)) {
    return {{0.0, 0.0}, false};
  }
  const std::complex<double> log_value =
      static_cast<double>(wedge.n_ris) * numerics::log1p(-acc / area);
  return {std::exp(log_value), true};
}

geometry::Point2D sample_ue_in_hole(const CoverageHoleConfig& cfg, Rng& rng) {
  cfg.validate();
  const double rad = cfg.hole_radius * std::sqrt(rng.uniform());
  const double ang = rng.uniform(0.0, 2.0 * M_PI);
  return {rad * std::cos(ang), rad * std::sin(ang)};
}

double coverage_with_blockage(double threshold, const HoleScenario& scenario,
                              const SystemParams& base,
                              const QuadratureConfig& cfg,
                              CoverageRoute route) {
  scenario.hole.validate();
  const SystemParams p = anchored_params(scenario.hole, base);
  const auto opts = options_of(scenario, p, threshold);
  return analytic::coverage_of_model(p, opts, scenario.hole.c_d, cfg, route);
}

double rate_with_blockage(const HoleScenario& scenario,
                          const SystemParams& base,
                          const QuadratureConfig& cfg) {
  scenario.hole.validate();
  const SystemParams p = anchored_params(scenario.hole, base);
  const auto opts = options_of(scenario, p, 1.0);
  return analytic::rate_of_model(p, opts, scenario.hole.c_d, cfg);
}

double relative_gain(const HoleScenario& scenario, const SystemParams& base,
                     const QuadratureConfig& cfg) {
  scenario.hole.validate();
  const SystemParams p = anchored_params(scenario.hole, base);
  const double with_ris =
      analytic::rate_of_model(p, options_of(scenario, p, 1.0),
                              scenario.hole.c_d, cfg);
  // Same direct-link penalty, reflection field removed.
  auto bare = options_of(scenario, p, 1.0);
  bare.signal.lambda = 0.0;
  bare.signal.n_ris = 0;
  const double without_ris =
      analytic::rate_of_model(p, bare, scenario.hole.c_d, cfg);
  return with_ris / without_ris;
}

montecarlo::SinrSample simulate_hole_sinr_once(const HoleScenario& scenario,
                                               const SystemParams& base,
                                               Rng& rng, double r_max,
                                               bool average_ue) {
  const auto& hole = scenario.hole;
  const SystemParams p = anchored_params(hole, base);
  const auto& pl = p.pathloss;
  const Point2D bs{hole.serving_distance, 0.0};
  const Point2D ue =
      average_ue ? sample_ue_in_hole(hole, rng) : Point2D{0.0, 0.0};

  montecarlo::SinrSample out;
  out.q_sd = hole.c_d * rng.exponential(1.0) * p.p0 *
             pathloss(geometry::distance(bs, ue), pl.alpha_nlos, pl.beta);

  // Interference first: direct links only, interferers beyond the serving
  // distance. Drawing it before the reflection field keeps the interference
  // realization shared between with-RIS and without-RIS runs of one seed.
  const auto interferers = geometry::sample_bs_field(
      p.lambda_bs, hole.serving_distance, r_max, rng);
  for (const auto& other : interferers) {
    out.q_i += rng.exponential(1.0) * p.p0 *
               pathloss(geometry::distance(other, ue), pl.alpha_nlos, pl.beta);
  }

  // Reflection field anchored on the hole center, oriented toward the BS.
  std::vector<Point2D> ris_points;
  switch (scenario.model) {
    case HoleModel::mcp_ring: {
      geometry::AnnulusSupport sup{{0.0, 0.0}, hole.r_in, hole.r_out};
      ris_points = geometry::sample_annulus_cluster(sup, p.lambda_ris, rng);
      break;
    }
    case HoleModel::bpp_wedge: {
      geometry::WedgeSupport sup{{0.0, 0.0}, hole.r_in, hole.r_out,
                                 scenario.wedge_half_angle, 0.0};
      ris_points = geometry::sample_wedge_bpp(scenario.n_ris, sup, rng);
      break;
    }
    case HoleModel::ppp_wedge: {
      geometry::WedgeSupport sup{{0.0, 0.0}, hole.r_in, hole.r_out,
                                 scenario.wedge_half_angle, 0.0};
      const auto n = rng.poisson(scenario.wedge_ppp_mean);
      ris_points =
          geometry::sample_wedge_bpp(static_cast<int>(n), sup, rng);
      break;
    }
  }
  for (const auto& ris : ris_points) {
    const double gain = geometry::ue_centric_path_gain(
        bs, ris, ue, pl.alpha_los, pl.alpha_los, pl.beta);
    out.q_sr += hole.c_r * fading::sample_reflected_fading(p.stats, rng) *
                p.p0 * gain;
  }

  out.sinr = (out.q_sd + out.q_sr) / (out.q_i + p.noise_power);
  return out;
}

namespace {

montecarlo::BatchResult hole_batch(const HoleScenario& scenario,
                                   const SystemParams& base, long n,
                                   std::uint64_t seed, bool average_ue) {
  if (n < 100) throw std::domain_error("hole_batch: n < 100");
  SystemParams p = anchored_params(scenario.hole, base);
  p.lambda_ris = 0.0;  // no cross-cell reflections in the window rule
  montecarlo::BatchResult out;
  out.r_max = montecarlo::simulation_window(p);
  out.samples.resize(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long i = 0; i < n; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    out.samples[i] =
        simulate_hole_sinr_once(scenario, base, rng, out.r_max, average_ue);
  }
  return out;
}

}  // namespace

montecarlo::EstimateWithCI estimate_hole_coverage(const HoleScenario& scenario,
                                                  const SystemParams& base,
                                                  double threshold, long n,
                                                  std::uint64_t seed,
                                                  bool average_ue) {
  const auto batch = hole_batch(scenario, base, n, seed, average_ue);
  return montecarlo::coverage_from_samples(batch.samples, threshold);
}

montecarlo::EstimateWithCI estimate_hole_rate(const HoleScenario& scenario,
                                              const SystemParams& base, long n,
                                              std::uint64_t seed,
                                              bool average_ue) {
  const auto batch = hole_batch(scenario, base, n, seed, average_ue);
  return montecarlo::rate_from_samples(batch.samples);
}

}  // namespace risnet::variants
