// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include "risnet/numerics.hpp"
#include "risnet/rng.hpp"

namespace risnet::fading {

using numerics::TransformValue;

// Rician small-scale fading for one LoS leg; k_factor is the LoS-to-scatter
// power ratio, total_power the second moment E[|rho|^2].
struct RicianSpec {
  double k_factor = 1.0;
  double total_power = 1.0;
};

// Moments of |zeta| = |rho_1||rho_2| for the two-leg reflected path.
struct ProductFadingMoments {
  double mean_abs = 0.0;
  double var_abs = 0.0;
  double second_moment = 0.0;
};

// Gaussian approximation of the beamformed reflection: a batch of m_batch
// elements adds in phase, the remaining m_total - m_batch scatter.
//   Re ~ N(mu, sigma_re_sq), Im ~ N(0, sigma_im_sq)
struct BeamformStats {
  int m_total = 0;
  int m_batch = 0;
  double mu = 0.0;
  double sigma_re_sq = 0.0;
  double sigma_im_sq = 0.0;
};

struct BeamOverlap {
  double beamwidth_deg = 10.0;
  double overlap_prob = 10.0 / 360.0;

  static BeamOverlap from_beamwidth(double deg);
  // Beamwidth narrows inversely with the batch size: 180 deg / m_batch.
  static BeamOverlap from_batch(int m_batch);
};

// Kummer confluent hypergeometric 1F1(a; b; z), relative accuracy ~1e-12.
// Negative z goes through the Kummer transform to keep the series
// positive-term.
double confluent_1f1(double a, double b, double z);

ProductFadingMoments product_fading_moments(const RicianSpec& spec);

BeamformStats beamform_stats(const ProductFadingMoments& zeta, int m_total,
                             int m_batch);

// E[gamma] for the beamformed reflection, mu^2 + sigma_re^2 + sigma_im^2.
double mean_reflected_fading(const BeamformStats& stats);
double mean_interfering_fading(const BeamformStats& stats,
                               const BeamOverlap& overlap);

// Laplace transform of |eta|^2 (noncentral quadratic form), valid for
// Re(s) > -1/(2 sigma_re_sq).
TransformValue reflected_fading_laplace(std::complex<double> s,
                                        const BeamformStats& stats);

// log of the above, computed without forming the transform; used by the
// shot-noise exponents where 1 - L must not cancel.
std::complex<double> log_reflected_fading_laplace(std::complex<double> s,
                                                  const BeamformStats& stats);
std::complex<double> one_minus_reflected_fading_laplace(
    std::complex<double> s, const BeamformStats& stats);

// Mixture transform of the cross-cell reflection: the beamformed law with the
// overlap probability, an Exp with mean (m_total - m_batch) otherwise.
TransformValue interfering_fading_laplace(std::complex<double> s,
                                          const BeamformStats& stats,
                                          const BeamOverlap& overlap);

// One complex Rician draw with uniform LoS phase (circularly symmetric).
std::complex<double> sample_rician(const RicianSpec& spec, Rng& rng);

// Exact reflection sum: sum of m_batch |zeta| plus m_total - m_batch raw
// zeta, each zeta a product of two independent Rician draws. O(m_total).
std::complex<double> sample_reflection_exact(const RicianSpec& spec,
                                             int m_total, int m_batch,
                                             Rng& rng);

// One draw of gamma = |eta|^2 under the Gaussian approximation.
double sample_reflected_fading(const BeamformStats& stats, Rng& rng);

}  // namespace risnet::fading
