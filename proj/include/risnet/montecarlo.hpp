// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "risnet/analytic.hpp"
#include "risnet/geometry.hpp"
#include "risnet/rng.hpp"

namespace risnet::montecarlo {

using analytic::SystemParams;

struct SinrSample {
  double q_sd = 0.0;
  double q_sr = 0.0;
  double q_i = 0.0;
  double sinr = 0.0;
};

struct EstimateWithCI {
  double mean = 0.0;
  double std_error = 0.0;
  long n = 0;
};

struct SimOptions {
  long n = 100000;
  std::uint64_t seed = 1;
  bool parallel = true;
  // Sum the M per-element fading products instead of drawing from the
  // Gaussian approximation; O(M) per RIS, for approximation studies only.
  bool exact_reflection = false;
  double r_max = 0.0;  // interferer window; 0 derives it from the tail rule
  // Cap on the mean interferer count inside the window. Slowly decaying
  // interference (alpha near 2) can push the tail rule to windows with
  // millions of points; the cap clamps the window and warns instead.
  double window_budget_points = 20000.0;
};

// Interferer window where the truncated Campbell-mean tail drops below 1e-4
// of the total interference mean.
double simulation_window(const SystemParams& p);

// Mean interference power received from all BSs beyond `radius` (Campbell).
double mean_interference_from(const SystemParams& p, double radius);

SinrSample simulate_sinr_once(const SystemParams& p, Rng& rng, double r_max,
                              bool exact_reflection = false);

struct BatchResult {
  std::vector<SinrSample> samples;
  double mean_q_id = 0.0;  // direct part of the interference
  double mean_q_ir = 0.0;  // RIS-reflected part
  double var_q_id = 0.0;
  double var_q_ir = 0.0;
  double cov_q_id_ir = 0.0;
  double r_max = 0.0;

  // Reflected fraction of the mean interference with a delta-method error.
  EstimateWithCI reflected_interference_fraction() const;
};

// Sample i always uses Rng::stream(seed, i): the stream is bit-identical for
// the serial and OpenMP paths and for any thread count.
BatchResult run_batch(const SystemParams& p, const SimOptions& opts);
BatchResult run_batch_serial(const SystemParams& p, SimOptions opts);

EstimateWithCI coverage_from_samples(std::span<const SinrSample> samples,
                                     double threshold);
EstimateWithCI rate_from_samples(std::span<const SinrSample> samples);

EstimateWithCI estimate_coverage(const SystemParams& p, double threshold,
                                 long n, std::uint64_t seed);
EstimateWithCI estimate_ergodic_rate(const SystemParams& p, long n,
                                     std::uint64_t seed);

// Empirical Laplace transform E[e^{-s Q}] of a scalar power sampler.
template <class Sampler>
EstimateWithCI estimate_laplace(Sampler&& sampler, double s, long n,
                                std::uint64_t seed) {
  if (n < 100) throw std::domain_error("estimate_laplace: n < 100");
  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < n; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    const double v = std::exp(-s * sampler(rng));
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  return {mean, std::sqrt(var / n), n};
}

// Full layout draw (serving cluster + interferers with clusters), for the
// channel-tap tooling and distribution tests.
geometry::NetworkSample sample_network(const SystemParams& p, Rng& rng,
                                       double r_max);

// Complex serving-cell fades paired with NetworkSample::serving_cluster.
struct ServingFades {
  std::complex<double> direct;
  std::vector<std::complex<double>> reflections;
};

ServingFades sample_serving_fades(const SystemParams& p,
                                  const geometry::NetworkSample& net,
                                  Rng& rng);

struct ChannelTaps {
  std::vector<std::pair<int, std::complex<double>>> taps;  // (delay, gain)
  int n_c = 0;
  int n_s = 0;
  double t_s = 0.509e-9;  // 5G-grade delay resolution
};

// Tapped-delay line of the serving cell: one tap per path at
// floor(path_length / (c T_s)); colliding delays shift by +1 (later path).
ChannelTaps build_channel_taps(const geometry::NetworkSample& net,
                               const ServingFades& fades,
                               const SystemParams& p, double t_s, int n_s);

struct ParsevalCheck {
  double lhs = 0.0;  // (1/N_s) sum_k |DFT|^2
  double rhs = 0.0;  // sum_n |tap|^2
  double rel_err = 0.0;
};

ParsevalCheck ofdm_parseval_check(const ChannelTaps& taps);

}  // namespace risnet::montecarlo
