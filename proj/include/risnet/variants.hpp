// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "risnet/analytic.hpp"
#include "risnet/montecarlo.hpp"

namespace risnet::variants {

using analytic::CoverageRoute;
using analytic::QuadratureConfig;
using analytic::SystemParams;
using numerics::TransformValue;

// UE-centric deployment around a coverage hole: RIS on an annulus (or wedge)
// centered on the hole, direct/reflected links hit by linear power penalties
// c_d, c_r <= 1 (dB in the config layer).
struct CoverageHoleConfig {
  double serving_distance = 80.0;  // BS to hole center, meters
  double hole_radius = 20.0;       // UE positions live in this disc
  double r_in = 25.0;
  double r_out = 35.0;
  double c_d = 1.0;
  double c_r = 1.0;

  void validate() const;
};

struct WedgeConfig {
  geometry::WedgeSupport support{};
  int n_ris = 0;
};

enum class HoleModel { mcp_ring, bpp_wedge, ppp_wedge };

struct HoleScenario {
  CoverageHoleConfig hole{};
  HoleModel model = HoleModel::mcp_ring;
  double wedge_half_angle = M_PI / 4.0;  // 90 deg wedge facing the BS
  int n_ris = 4;
  double wedge_ppp_mean = 4.0;  // mean count for the matched-mean PPP wedge
};

// Laplace transform of the reflected signal power from a fixed number of RIS
// uniform on the wedge: (E[L_gamma(-s P0 g)])^{n_ris} under the normalized
// area measure.
TransformValue bpp_wedge_signal_laplace(std::complex<double> s,
                                        const geometry::Point2D& bs,
                                        const geometry::Point2D& ue,
                                        const WedgeConfig& wedge,
                                        const SystemParams& p);

geometry::Point2D sample_ue_in_hole(const CoverageHoleConfig& cfg, Rng& rng);

double coverage_with_blockage(double threshold, const HoleScenario& scenario,
                              const SystemParams& base,
                              const QuadratureConfig& cfg = {},
                              CoverageRoute route = CoverageRoute::direct);

double rate_with_blockage(const HoleScenario& scenario,
                          const SystemParams& base,
                          const QuadratureConfig& cfg = {});

// Ergodic-rate ratio against the no-RIS network under the same direct-link
// penalty.
double relative_gain(const HoleScenario& scenario, const SystemParams& base,
                     const QuadratureConfig& cfg = {});

// Monte Carlo counterpart (cross-cell RIS reflections dropped, as in the
// analytic model). average_ue draws the UE uniformly in the hole instead of
// pinning it at the center.
montecarlo::SinrSample simulate_hole_sinr_once(const HoleScenario& scenario,
                                               const SystemParams& base,
                                               Rng& rng, double r_max,
                                               bool average_ue = false);

montecarlo::EstimateWithCI estimate_hole_coverage(const HoleScenario& scenario,
                                                  const SystemParams& base,
                                                  double threshold, long n,
                                                  std::uint64_t seed,
                                                  bool average_ue = false);

montecarlo::EstimateWithCI estimate_hole_rate(const HoleScenario& scenario,
                                              const SystemParams& base, long n,
                                              std::uint64_t seed,
                                              bool average_ue = false);

}  // namespace risnet::variants
