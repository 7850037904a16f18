// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "risnet/errors.hpp"
#include "risnet/fading.hpp"
#include "risnet/geometry.hpp"
#include "risnet/numerics.hpp"

namespace risnet::analytic {

using numerics::QuadratureConfig;
using numerics::TransformValue;

// All scalar model parameters plus the derived fading statistics. Call
// derive() (or use baseline()) after editing the primitives so zeta/stats
// stay consistent.
struct SystemParams {
  double lambda_bs = 10e-6;    // BS per m^2 (10 / km^2)
  double lambda_ris = 0.0;     // RIS per m^2 inside a cluster annulus
  double r_in = 25.0;          // cluster annulus, meters
  double r_out = 35.0;
  double p0 = 1.0;             // per-UE transmit power, W
  double noise_power = 1e-13;  // W
  int m_total = 3000;
  int m_batch = 600;
  geometry::PathlossParams pathloss = geometry::PathlossParams::from_carrier(2.4e9);
  fading::BeamOverlap beam = fading::BeamOverlap::from_beamwidth(10.0);
  fading::RicianSpec rician{1.0, 1.0};
  double serving_distance = 100.0;  // r, meters
  double threshold = 1.0;           // T, linear

  fading::ProductFadingMoments zeta{};
  fading::BeamformStats stats{};

  void derive();
  void validate() const;  // throws ConfigError on inconsistent fields

  double mean_cluster_size() const;
  // lambda_ris giving the requested mean number of RIS per cluster.
  static double density_for_mean(double mean, double r_in, double r_out);
  // Section-V style defaults: 10 BS/km^2, 5 RIS per cluster on [25,35] m,
  // M=3000, M_o=600, 10 deg beamwidth, r=100 m, noise 1e-13 W.
  static SystemParams baseline();
};

// Geometry of the serving reflection field. The BS-centric ring is the main
// model; the UE-centric variants re-anchor the annulus on the UE (coverage
// hole) and optionally restrict it to a wedge facing the BS, with either a
// Poisson or a fixed (binomial) number of RIS.
struct SignalField {
  enum class Kind { bs_ring_ppp, ue_ring_ppp, ue_wedge_ppp, ue_wedge_bpp };
  Kind kind = Kind::bs_ring_ppp;
  double r_in = 0.0;
  double r_out = 0.0;
  double half_angle = M_PI;  // wedge half angle; pi means the full ring
  double lambda = 0.0;       // PPP density
  int n_ris = 0;             // BPP count

  static SignalField from_params(const SystemParams& p);
};

struct ConvergenceReport {
  bool feasible = false;
  double margin = 0.0;  // 1/2 - max over the support (Appendix-style form)
  double s_sup = 0.0;   // right edge of the strip for the bilateral transform
};

// Convergence strip of the deficit's bilateral transform. The left edge is a
// crude bound (every evaluation the machinery makes has Re(s) >= 0); the
// right edge is the binding one.
struct UpsilonSpec {
  SystemParams params;
  double s_a = 0.0;
  double s_b = 0.0;

  static UpsilonSpec from_params(const SystemParams& p);
};

// Bilateral Laplace transform of the deficit
//   Upsilon = T (Q_I + noise) - c_reflected * Q_SR,
// composed of the interference, noise, and reflected-signal factors.
class DeficitTransform {
 public:
  struct Options {
    double threshold = 1.0;
    double c_reflected = 1.0;
    bool reflected_interference = true;
    SignalField signal{};
    int nodes_radial = 8;    // fixed product rule on the cluster annulus
    int nodes_angular = 16;  // per half range
  };

  DeficitTransform(const SystemParams& params, Options opts,
                   QuadratureConfig quad);

  TransformValue operator()(std::complex<double> s) const;
  TransformValue interference(std::complex<double> s) const;
  TransformValue reflected(std::complex<double> s) const;  // includes c_reflected
  TransformValue cluster(std::complex<double> s, double x) const;

  double s_sup() const { return s_sup_; }
  const SystemParams& params() const { return params_; }
  const Options& options() const { return opts_; }

 private:
  struct Node {
    double y;        // radial coordinate on the annulus
    double cos_psi;
    double weight;   // quadrature weight including the Jacobian y
    double g_first;  // pathloss of the y-leg
  };

  std::complex<double> log_interference(std::complex<double> s) const;
  std::complex<double> log_cluster(std::complex<double> s, double x) const;
  std::complex<double> signal_exponent(std::complex<double> w) const;

  SystemParams params_;
  Options opts_;
  QuadratureConfig quad_;
  std::vector<Node> interference_nodes_;  // psi in [0,pi], doubled by symmetry
  std::vector<Node> signal_nodes_;        // geometry of the serving field
  double signal_area_ = 0.0;              // wedge/ring area for the BPP law
  double max_signal_gain_ = 0.0;          // sup of the two-leg gain
  double s_sup_ = 0.0;
};

// --- spec-level operations on SystemParams (BS-centric MCP model) ---

TransformValue cluster_interference_laplace(std::complex<double> s, double x,
                                            const SystemParams& p,
                                            const QuadratureConfig& cfg = {});
TransformValue total_interference_laplace(std::complex<double> s,
                                          const SystemParams& p,
                                          const QuadratureConfig& cfg = {});
TransformValue reflected_signal_laplace(std::complex<double> s,
                                        const SystemParams& p,
                                        const QuadratureConfig& cfg = {});
TransformValue upsilon_bilateral(std::complex<double> s, const SystemParams& p,
                                 const QuadratureConfig& cfg = {});

ConvergenceReport convergence_bound(const SystemParams& p);

// --- contour machinery over a normalized bilateral transform ---
// The callable receives z with the convention B(z) = E[e^{-z * anchor * X}]
// where the caller folded its evaluation anchor into the closure; all
// machinery below evaluates at z0 = 1 and on the imaginary axis.

using BilateralFn = std::function<std::complex<double>(std::complex<double>)>;

// panel0 is the first tail-panel width on the imaginary axis, ~ the inverse
// spread of the (normalized) random variable.
double prob_negative_from_bilateral(const BilateralFn& b,
                                    const QuadratureConfig& cfg,
                                    double panel0 = 1.0);
// Restricted transform of the positive part at the anchor (z0 = 1).
double plus_transform_from_bilateral(const BilateralFn& b,
                                     const QuadratureConfig& cfg,
                                     double panel0 = 1.0);

enum class CoverageRoute { direct, split };

double coverage_from_bilateral(const BilateralFn& b, const QuadratureConfig& cfg,
                               CoverageRoute route, double panel0 = 1.0);

// --- headline metrics ---

double prob_upsilon_negative(const SystemParams& p,
                             const QuadratureConfig& cfg = {});
double laplace_upsilon_plus(double s, const SystemParams& p,
                            const QuadratureConfig& cfg = {});
double coverage_probability(double threshold, const SystemParams& p,
                            const QuadratureConfig& cfg = {},
                            CoverageRoute route = CoverageRoute::direct);
double ergodic_rate(const SystemParams& p, const QuadratureConfig& cfg = {});

// The adaptive-rate integral int_0^inf P_c(t) / (1+t) dt evaluated as
// int_0^inf P_c(e^v - 1) dv from any coverage function.
double rate_from_coverage(const std::function<double(double)>& coverage_at_t);

// Generic model entries shared with the coverage-hole variants.
double coverage_of_model(const SystemParams& p,
                         const DeficitTransform::Options& opts,
                         double c_direct, const QuadratureConfig& cfg,
                         CoverageRoute route = CoverageRoute::direct);
double rate_of_model(const SystemParams& p, DeficitTransform::Options opts,
                     double c_direct, const QuadratureConfig& cfg);

struct MeanPowers {
  double direct_interference = 0.0;
  double reflected_interference = 0.0;
  double reflected_signal = 0.0;
  double direct_signal = 0.0;
};

// First moments via Campbell's formula; each equals -d/ds of the matching
// Laplace transform at 0.
MeanPowers mean_power_decomposition(const SystemParams& p,
                                    const QuadratureConfig& cfg = {});

}  // namespace risnet::analytic
