// SPDX-License-Identifier: Apache-2.0
#include "risnet/montecarlo.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace risnet::montecarlo {

namespace {

using geometry::pathloss;

struct SampleParts {
  SinrSample s;
  double q_id = 0.0;
  double q_ir = 0.0;
};

double annulus_radius(double r_in, double r_out, Rng& rng) {
  const double rin2 = r_in * r_in;
  return std::sqrt(rin2 + rng.uniform() * (r_out * r_out - rin2));
}

SampleParts simulate_parts(const SystemParams& p, Rng& rng, double r_max,
                           bool exact_reflection) {
  const auto& pl = p.pathloss;
  const double r = p.serving_distance;
  SampleParts out;

  // Direct serving link: NLoS Rayleigh.
  out.s.q_sd = rng.exponential(1.0) * p.p0 * pathloss(r, pl.alpha_nlos, pl.beta);

  // Serving cluster reflections, both legs LoS.
  const std::uint64_t n_ris = rng.poisson(p.mean_cluster_size());
  for (std::uint64_t j = 0; j < n_ris; ++j) {
    const double y = annulus_radius(p.r_in, p.r_out, rng);
    const double psi = rng.uniform(0.0, 2.0 * M_PI);
    const double d2 = r * r + y * y - 2.0 * r * y * std::cos(psi);
    const double gain = pathloss(y, pl.alpha_los, pl.beta) *
                        pathloss(std::sqrt(std::max(0.0, d2)), pl.alpha_los,
                                 pl.beta);
    double gamma;
    if (exact_reflection) {
      gamma = std::norm(fading::sample_reflection_exact(p.rician, p.m_total,
                                                        p.m_batch, rng));
    } else {
      gamma = fading::sample_reflected_fading(p.stats, rng);
    }
    out.s.q_sr += gamma * p.p0 * gain;
  }

  // Interfering cells on the window (r, r_max].
  const double scatter_mean = p.stats.m_total - p.stats.m_batch;
  const double area = M_PI * (r_max * r_max - r * r);
  const std::uint64_t n_bs = rng.poisson(p.lambda_bs * area);
  for (std::uint64_t i = 0; i < n_bs; ++i) {
    const double x = annulus_radius(r, r_max, rng);
    out.q_id += rng.exponential(1.0) * p.p0 * pathloss(x, pl.alpha_nlos, pl.beta);
    const std::uint64_t m = rng.poisson(p.mean_cluster_size());
    for (std::uint64_t j = 0; j < m; ++j) {
      const double y = annulus_radius(p.r_in, p.r_out, rng);
      const double psi = rng.uniform(0.0, 2.0 * M_PI);
      const double d2 = x * x + y * y - 2.0 * x * y * std::cos(psi);
      const double gain = pathloss(y, pl.alpha_los, pl.beta) *
                          pathloss(std::sqrt(std::max(0.0, d2)), pl.alpha_ir,
                                   pl.beta);
      double gamma;
      if (rng.bernoulli(p.beam.overlap_prob)) {
        gamma = fading::sample_reflected_fading(p.stats, rng);
      } else {
        gamma = scatter_mean > 0.0 ? rng.exponential(scatter_mean) : 0.0;
      }
      out.q_ir += gamma * p.p0 * gain;
    }
  }

  out.s.q_i = out.q_id + out.q_ir;
  out.s.sinr = (out.s.q_sd + out.s.q_sr) / (out.s.q_i + p.noise_power);
  return out;
}

}  // namespace

double mean_interference_from(const SystemParams& p, double radius) {
  const auto& pl = p.pathloss;
  numerics::QuadratureConfig cfg;
  auto direct = [&](double x) {
    return x * pathloss(x, pl.alpha_nlos, pl.beta);
  };
  double total =
      2.0 * M_PI * p.lambda_bs * p.p0 *
      numerics::integrate_to_inf(direct, radius, cfg, radius).value;
  if (p.lambda_ris > 0.0) {
    // Cluster kernel at a coarse fixed rule; only the tail ratio matters.
    auto kernel = [&](double x) {
      double acc = 0.0;
      const int ny = 6, na = 12;
      for (int i = 0; i < ny; ++i) {
        const double y = p.r_in + (p.r_out - p.r_in) * (i + 0.5) / ny;
        const double gy = pathloss(y, pl.alpha_los, pl.beta);
        for (int j = 0; j < na; ++j) {
          const double psi = M_PI * (j + 0.5) / na;
          const double d2 = x * x + y * y - 2.0 * x * y * std::cos(psi);
          acc += gy *
                 pathloss(std::sqrt(std::max(0.0, d2)), pl.alpha_ir, pl.beta) *
                 y * 2.0 * (p.r_out - p.r_in) / ny * M_PI / na;
        }
      }
      return x * acc;
    };
    total += 2.0 * M_PI * p.lambda_bs * p.lambda_ris *
             fading::mean_interfering_fading(p.stats, p.beam) * p.p0 *
             numerics::integrate_to_inf(kernel, radius, cfg, radius).value;
  }
  return total;
}

double simulation_window(const SystemParams& p) {
  const double total = mean_interference_from(p, p.serving_distance);
  const double target = 1e-4 * total;
  double lo = 2.0 * p.serving_distance;
  double hi = 1e7;
  if (mean_interference_from(p, lo) < target) return lo;
  for (int it = 0; it < 60; ++it) {
    const double mid = std::sqrt(lo * hi);  // bisect in log space
    if (mean_interference_from(p, mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi / lo < 1.02) break;
  }
  return hi;
}

SinrSample simulate_sinr_once(const SystemParams& p, Rng& rng, double r_max,
                              bool exact_reflection) {
  return simulate_parts(p, rng, r_max, exact_reflection).s;
}

BatchResult run_batch_serial(const SystemParams& p, SimOptions opts) {
  opts.parallel = false;
  return run_batch(p, opts);
}

BatchResult run_batch(const SystemParams& p, const SimOptions& opts) {
  if (opts.n < 1) throw std::domain_error("run_batch: n < 1");
  BatchResult out;
  out.r_max = opts.r_max > 0.0 ? opts.r_max : simulation_window(p);
  if (opts.r_max <= 0.0 && opts.window_budget_points > 0.0) {
    const double r = p.serving_distance;
    const double budget_r = std::sqrt(
        opts.window_budget_points / (M_PI * p.lambda_bs) + r * r);
    if (out.r_max > budget_r) {
      const double tail = mean_interference_from(p, budget_r) /
                          mean_interference_from(p, r);
      std::fprintf(stderr,
                   "warning: interferer window clamped from %.3g m to %.3g m "
                   "(point budget %g); truncated interference tail is %.2e "
                   "of the mean\n",
                   out.r_max, budget_r, opts.window_budget_points, tail);
      out.r_max = budget_r;
    }
  }
  out.samples.resize(opts.n);
  double sum_id = 0.0, sum_ir = 0.0;
  double sum_id2 = 0.0, sum_ir2 = 0.0, sum_id_ir = 0.0;
  if (opts.parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) \
    reduction(+ : sum_id, sum_ir, sum_id2, sum_ir2, sum_id_ir)
#endif
    for (long i = 0; i < opts.n; ++i) {
      Rng rng = Rng::stream(opts.seed, static_cast<std::uint64_t>(i));
      const auto parts =
          simulate_parts(p, rng, out.r_max, opts.exact_reflection);
      out.samples[i] = parts.s;
      sum_id += parts.q_id;
      sum_ir += parts.q_ir;
      sum_id2 += parts.q_id * parts.q_id;
      sum_ir2 += parts.q_ir * parts.q_ir;
      sum_id_ir += parts.q_id * parts.q_ir;
    }
  } else {
    for (long i = 0; i < opts.n; ++i) {
      Rng rng = Rng::stream(opts.seed, static_cast<std::uint64_t>(i));
      const auto parts =
          simulate_parts(p, rng, out.r_max, opts.exact_reflection);
      out.samples[i] = parts.s;
      sum_id += parts.q_id;
      sum_ir += parts.q_ir;
      sum_id2 += parts.q_id * parts.q_id;
      sum_ir2 += parts.q_ir * parts.q_ir;
      sum_id_ir += parts.q_id * parts.q_ir;
    }
  }
  const double n = static_cast<double>(opts.n);
  out.mean_q_id = sum_id / n;
  out.mean_q_ir = sum_ir / n;
  out.var_q_id = std::max(0.0, sum_id2 / n - out.mean_q_id * out.mean_q_id);
  out.var_q_ir = std::max(0.0, sum_ir2 / n - out.mean_q_ir * out.mean_q_ir);
  out.cov_q_id_ir = sum_id_ir / n - out.mean_q_id * out.mean_q_ir;
  return out;
}

EstimateWithCI BatchResult::reflected_interference_fraction() const {
  const double a = mean_q_id;
  const double b = mean_q_ir;
  const double total = a + b;
  const long n = static_cast<long>(samples.size());
  if (total <= 0.0 || n < 2) return {0.0, 0.0, n};
  const double f = b / total;
  // Delta method on f(A,B) = B/(A+B).
  const double da = -b / (total * total);
  const double db = a / (total * total);
  const double var =
      (da * da * var_q_id + db * db * var_q_ir + 2.0 * da * db * cov_q_id_ir) /
      n;
  return {f, std::sqrt(std::max(0.0, var)), n};
}

EstimateWithCI coverage_from_samples(std::span<const SinrSample> samples,
                                     double threshold) {
  long hits = 0;
  for (const auto& s : samples) hits += s.sinr >= threshold ? 1 : 0;
  const long n = static_cast<long>(samples.size());
  const double mean = static_cast<double>(hits) / n;
  return {mean, std::sqrt(std::max(0.0, mean * (1.0 - mean) / n)), n};
}

EstimateWithCI rate_from_samples(std::span<const SinrSample> samples) {
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& s : samples) {
    const double v = std::log1p(s.sinr);
    sum += v;
    sum_sq += v * v;
  }
  const long n = static_cast<long>(samples.size());
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  return {mean, std::sqrt(var / n), n};
}

EstimateWithCI estimate_coverage(const SystemParams& p, double threshold,
                                 long n, std::uint64_t seed) {
  if (n < 100) throw std::domain_error("estimate_coverage: n < 100");
  SimOptions opts;
  opts.n = n;
  opts.seed = seed;
  const auto batch = run_batch(p, opts);
  return coverage_from_samples(batch.samples, threshold);
}

EstimateWithCI estimate_ergodic_rate(const SystemParams& p, long n,
                                     std::uint64_t seed) {
  if (n < 100) throw std::domain_error("estimate_ergodic_rate: n < 100");
  SimOptions opts;
  opts.n = n;
  opts.seed = seed;
  const auto batch = run_batch(p, opts);
  return rate_from_samples(batch.samples);
}

geometry::NetworkSample sample_network(const SystemParams& p, Rng& rng,
                                       double r_max) {
  geometry::NetworkSample net;
  net.serving = {p.serving_distance, 0.0};
  geometry::AnnulusSupport serving_support{net.serving, p.r_in, p.r_out};
  net.serving_cluster =
      geometry::sample_annulus_cluster(serving_support, p.lambda_ris, rng);
  net.interferers = geometry::sample_bs_field(p.lambda_bs, p.serving_distance,
                                              r_max, rng);
  net.interferer_clusters.reserve(net.interferers.size());
  for (const auto& bs : net.interferers) {
    geometry::AnnulusSupport support{bs, p.r_in, p.r_out};
    net.interferer_clusters.push_back(
        geometry::sample_annulus_cluster(support, p.lambda_ris, rng));
  }
  return net;
}

ServingFades sample_serving_fades(const SystemParams& p,
                                  const geometry::NetworkSample& net,
                                  Rng& rng) {
  ServingFades fades;
  const double phase = rng.uniform(0.0, 2.0 * M_PI);
  const double amp = std::sqrt(rng.exponential(1.0));
  fades.direct = {amp * std::cos(phase), amp * std::sin(phase)};
  fades.reflections.reserve(net.serving_cluster.size());
  for (std::size_t j = 0; j < net.serving_cluster.size(); ++j) {
    const double re = rng.normal(p.stats.mu, std::sqrt(p.stats.sigma_re_sq));
    const double im = rng.normal(0.0, std::sqrt(p.stats.sigma_im_sq));
    fades.reflections.push_back({re, im});
  }
  return fades;
}

ChannelTaps build_channel_taps(const geometry::NetworkSample& net,
                               const ServingFades& fades,
                               const SystemParams& p, double t_s, int n_s) {
  if (fades.reflections.size() != net.serving_cluster.size()) {
    throw std::invalid_argument("build_channel_taps: fades/cluster mismatch");
  }
  const auto& pl = p.pathloss;
  const double resolution = geometry::kSpeedOfLight * t_s;
  const geometry::Point2D ue{0.0, 0.0};

  ChannelTaps out;
  out.t_s = t_s;
  out.n_s = n_s;
  auto place = [&](double path_length, std::complex<double> gain) {
    int idx = static_cast<int>(std::floor(path_length / resolution));
    // Delays are assumed distinct; on a quantization collision the
    // later-listed path shifts up one slot.
    auto taken = [&](int d) {
      return std::any_of(out.taps.begin(), out.taps.end(),
                         [d](const auto& t) { return t.first == d; });
    };
    while (taken(idx)) ++idx;
    if (idx >= n_s) {
      throw ConfigError("build_channel_taps: delay index exceeds block size");
    }
    out.taps.emplace_back(idx, gain);
  };

  const double r = geometry::distance(net.serving, ue);
  place(r, fades.direct * std::sqrt(pathloss(r, pl.alpha_nlos, pl.beta)));
  for (std::size_t j = 0; j < net.serving_cluster.size(); ++j) {
    const auto& ris = net.serving_cluster[j];
    const double leg1 = geometry::distance(net.serving, ris);
    const double leg2 = geometry::distance(ris, ue);
    const double gain = pathloss(leg1, pl.alpha_los, pl.beta) *
                        pathloss(leg2, pl.alpha_los, pl.beta);
    place(leg1 + leg2, fades.reflections[j] * std::sqrt(gain));
  }
  int max_delay = 0;
  for (const auto& [d, g] : out.taps) max_delay = std::max(max_delay, d);
  out.n_c = max_delay + 1;
  return out;
}

ParsevalCheck ofdm_parseval_check(const ChannelTaps& taps) {
  ParsevalCheck check;
  for (const auto& [d, g] : taps.taps) check.rhs += std::norm(g);
  // Direct DFT of the sparse tap train; Parseval needs all n_s bins.
  for (int k = 0; k < taps.n_s; ++k) {
    std::complex<double> bin{0.0, 0.0};
    for (const auto& [d, g] : taps.taps) {
      const double angle = -2.0 * M_PI * d * k / taps.n_s;
      bin += g * std::complex<double>{std::cos(angle), std::sin(angle)};
    }
    check.lhs += std::norm(bin);
  }
  check.lhs /= taps.n_s;
  check.rel_err = check.rhs > 0.0 ? std::fabs(check.lhs - check.rhs) / check.rhs
                                  : std::fabs(check.lhs);
  return check;
}

}  // namespace risnet::montecarlo
