// SPDX-License-Identifier: Apache-2.0
#include "risnet/fading.hpp"

#include <cmath>
#include <stdexcept>

namespace risnet::fading {

BeamOverlap BeamOverlap::from_beamwidth(double deg) {
  if (!(deg > 0.0) || deg > 360.0) {
    throw std::domain_error("BeamOverlap: beamwidth must be in (0, 360]");
  }
  return {deg, deg / 360.0};
}

BeamOverlap BeamOverlap::from_batch(int m_batch) {
  if (m_batch < 1) throw std::domain_error("BeamOverlap: m_batch < 1");
  return from_beamwidth(180.0 / m_batch);
}

double confluent_1f1(double a, double b, double z) {
  if (b <= 0.0 && b == std::floor(b)) {
    throw std::domain_error("confluent_1f1: b is a nonpositive integer");
  }
  if (z < 0.0) return std::exp(z) * confluent_1f1(b - a, b, -z);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 500; ++k) {
    term *= (a + k) * z / ((b + k) * (k + 1));
    sum += term;
    if (std::fabs(term) <= 1e-16 * std::fabs(sum) && k > 2) return sum;
  }
  throw std::runtime_error("confluent_1f1: series did not converge");
}

ProductFadingMoments product_fading_moments(const RicianSpec& spec) {
  if (spec.k_factor < 0.0 || !(spec.total_power > 0.0)) {
    throw std::domain_error("product_fading_moments: bad Rician spec");
  }
  const double k = spec.k_factor;
  const double omega = spec.total_power;
  // |rho| is Rician with nu^2/(2 sigma^2) = K:
  //   E[|rho|] = sigma sqrt(pi/2) 1F1(-1/2; 1; -K), sigma^2 = omega/(2(K+1))
  const double sigma = std::sqrt(omega / (2.0 * (k + 1.0)));
  const double mean_leg =
      sigma * std::sqrt(M_PI / 2.0) * confluent_1f1(-0.5, 1.0, -k);
  ProductFadingMoments m;
  m.mean_abs = mean_leg * mean_leg;
  m.second_moment = omega * omega;
  m.var_abs = m.second_moment - m.mean_abs * m.mean_abs;
  return m;
}

BeamformStats beamform_stats(const ProductFadingMoments& zeta, int m_total,
                             int m_batch) {
  if (m_batch < 1 || m_batch > m_total) {
    throw std::domain_error("beamform_stats: need 1 <= m_batch <= m_total");
  }
  BeamformStats s;
  s.m_total = m_total;
  s.m_batch = m_batch;
  s.mu = m_batch * zeta.mean_abs;
  s.sigma_re_sq = 0.5 * (m_total + m_batch) * zeta.var_abs;
  s.sigma_im_sq = 0.5 * (m_total - m_batch) * zeta.var_abs;
  return s;
}

double mean_reflected_fading(const BeamformStats& stats) {
  return stats.mu * stats.mu + stats.sigma_re_sq + stats.sigma_im_sq;
}

double mean_interfering_fading(const BeamformStats& stats,
                               const BeamOverlap& overlap) {
  const double p = overlap.overlap_prob;
  return p * mean_reflected_fading(stats) +
         (1.0 - p) * (stats.m_total - stats.m_batch);
}

namespace {

bool in_reflected_domain(std::complex<double> s, const BeamformStats& stats) {
  if (stats.sigma_re_sq <= 0.0) return true;
  return s.real() > -0.5 / stats.sigma_re_sq;
}

}  // namespace

std::complex<double> log_reflected_fading_laplace(std::complex<double> s,
                                                  const BeamformStats& stats) {
  // Product of two chi-square-type transforms; each radicand has positive
  // real part inside the strip, so the principal branch is continuous.
  const std::complex<double> re_term = 2.0 * stats.sigma_re_sq * s;
  const std::complex<double> im_term = 2.0 * stats.sigma_im_sq * s;
  return -stats.mu * stats.mu * s / (1.0 + re_term) -
         0.5 * (numerics::log1p(re_term) + numerics::log1p(im_term));
}

TransformValue reflected_fading_laplace(std::complex<double> s,
                                        const BeamformStats& stats) {
  if (!in_reflected_domain(s, stats)) return {{0.0, 0.0}, false};
  return {std::exp(log_reflected_fading_laplace(s, stats)), true};
}

std::complex<double> one_minus_reflected_fading_laplace(
    std::complex<double> s, const BeamformStats& stats) {
  return -numerics::expm1(log_reflected_fading_laplace(s, stats));
}

TransformValue interfering_fading_laplace(std::complex<double> s,
                                          const BeamformStats& stats,
                                          const BeamOverlap& overlap) {
  const double scatter_mean = stats.m_total - stats.m_batch;
  const bool scatter_ok =
      scatter_mean == 0.0 || s.real() > -1.0 / scatter_mean;
  if (!in_reflected_domain(s, stats) || !scatter_ok) return {{0.0, 0.0}, false};
  const double p = overlap.overlap_prob;
  const std::complex<double> scatter =
      scatter_mean == 0.0 ? std::complex<double>{1.0, 0.0}
                          : 1.0 / (1.0 + s * scatter_mean);
  return {p * std::exp(log_reflected_fading_laplace(s, stats)) +
              (1.0 - p) * scatter,
          true};
}

std::complex<double> sample_rician(const RicianSpec& spec, Rng& rng) {
  const double k = spec.k_factor;
  const double los = std::sqrt(spec.total_power * k / (k + 1.0));
  const double phase = rng.uniform(0.0, 2.0 * M_PI);
  const std::complex<double> los_part{los * std::cos(phase),
                                      los * std::sin(phase)};
  return los_part + rng.circular_normal(spec.total_power / (k + 1.0));
}

std::complex<double> sample_reflection_exact(const RicianSpec& spec,
                                             int m_total, int m_batch,
                                             Rng& rng) {
  if (m_batch < 1 || m_batch > m_total) {
    throw std::domain_error("sample_reflection_exact: bad batch size");
  }
  std::complex<double> eta{0.0, 0.0};
  for (int m = 0; m < m_total; ++m) {
    const std::complex<double> zeta =
        sample_rician(spec, rng) * sample_rician(spec, rng);
    if (m < m_batch) {
      eta += std::abs(zeta);  // phase-aligned batch
    } else {
      eta += zeta;
    }
  }
  return eta;
}

double sample_reflected_fading(const BeamformStats& stats, Rng& rng) {
  const double re = rng.normal(stats.mu, std::sqrt(stats.sigma_re_sq));
  const double im = rng.normal(0.0, std::sqrt(stats.sigma_im_sq));
  return re * re + im * im;
}

}  // namespace risnet::fading
