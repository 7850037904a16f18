// SPDX-License-Identifier: Apache-2.0
#include "risnet/validate.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <functional>

#include "risnet/analytic.hpp"
#include "risnet/montecarlo.hpp"
#include "risnet/variants.hpp"

namespace risnet::validate {

namespace {

using analytic::CoverageRoute;
using analytic::SystemParams;
using std::complex;
using CD = complex<double>;

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

struct Suite {
  std::vector<CheckResult> results;
  std::ostream* progress;

  void add(const std::string& name, bool pass, const std::string& detail,
           double seconds) {
    results.push_back({name, pass, detail, seconds});
    if (progress) {
      (*progress) << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail
                  << format(" (%.1fs)", seconds) << std::endl;
    }
  }
};

double db(double x) { return std::pow(10.0, x / 10.0); }

// Closed-form pieces for the synthetic distributions of criterion 6.
double erlang_cdf(int k, double theta, double x) {
  // P[Gamma(k, theta) <= x] for integer k.
  double sum = 0.0;
  double term = 1.0;
  for (int j = 0; j < k; ++j) {
    if (j > 0) term *= x / theta / j;
    sum += term;
  }
  return 1.0 - std::exp(-x / theta) * sum;
}

double shifted_gamma_plus_transform(int k, double theta, double c, double s) {
  // E[e^{-s max(G - c, 0)} 1{G > c}] for G ~ Gamma(k, theta), integer k.
  const double a = c * (s + 1.0 / theta);
  double sum = 0.0;
  double term = 1.0;
  for (int j = 0; j < k; ++j) {
    if (j > 0) term *= a / j;
    sum += term;
  }
  return std::exp(s * c) * std::pow(1.0 + s * theta, -k) * std::exp(-a) * sum;
}

}  // namespace

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

std::vector<CheckResult> run_acceptance(bool quick, std::ostream* progress) {
  Suite suite;
  suite.progress = progress;

  numerics::QuadratureConfig quad;
  quad.parallel = true;

  const long n_mc = quick ? 10000 : 100000;
  const std::uint64_t seed = 1;

  SystemParams baseline = SystemParams::baseline();
  const double s_star =
      1.0 / (baseline.p0 * geometry::pathloss(baseline.serving_distance,
                                              baseline.pathloss.alpha_nlos,
                                              baseline.pathloss.beta));

  // ---- criteria 1-3 + 11 share one SINR stream --------------------------
  double t0 = now();
  montecarlo::SimOptions sim;
  sim.n = n_mc;
  sim.seed = seed;
  const auto batch = montecarlo::run_batch(baseline, sim);

  {
    bool pass = true;
    std::string detail;
    double worst_route = 0.0;
    for (double t_db : {-10.0, 0.0, 10.0}) {
      const double threshold = db(t_db);
      const double direct = analytic::coverage_probability(
          threshold, baseline, quad, CoverageRoute::direct);
      const double split = analytic::coverage_probability(
          threshold, baseline, quad, CoverageRoute::split);
      worst_route = std::max(worst_route, std::fabs(direct - split));
      const auto mc =
          montecarlo::coverage_from_samples(batch.samples, threshold);
      const double tol = std::max(0.01, 3.0 * mc.std_error);
      const double diff = std::fabs(direct - mc.mean);
      if (diff > tol) pass = false;
      detail += format("T=%+gdB |an-mc|=%.4f<=%.4f ", t_db, diff, tol);
    }
    const double elapsed = now() - t0;
    if (elapsed >= 600.0) pass = false;
    suite.add("01 coverage oracle agreement", pass,
              detail + format("runtime %.0fs<600s", elapsed), elapsed);

    // criterion 11 piggybacks on the same coverage evaluations
    suite.add("11 coverage route equivalence", worst_route <= 1e-6,
              format("max |direct-split| = %.2e <= 1e-6", worst_route), 0.0);
  }

  {
    const double t1 = now();
    const double analytic_rate = analytic::ergodic_rate(baseline, quad);
    const auto mc = montecarlo::rate_from_samples(batch.samples);
    const double tol = 3.0 * mc.std_error + 1e-3;
    const double diff = std::fabs(analytic_rate - mc.mean);
    suite.add("02 ergodic rate oracle agreement", diff <= tol,
              format("an=%.4f mc=%.4f(se %.4f) |diff|=%.4f<=%.4f",
                     analytic_rate, mc.mean, mc.std_error, diff, tol),
              now() - t1);
  }

  {
    const double t1 = now();
    bool pass = true;
    double worst_sigma = 0.0;
    const double T = baseline.threshold;
    const long n = static_cast<long>(batch.samples.size());
    for (double f : {0.1, 0.25, 0.5, 0.75, 1.0}) {
      const double s = f * s_star;
      double si = 0, si2 = 0, sr = 0, sr2 = 0;
      double cr = 0, cr2 = 0, ci = 0, ci2 = 0;
      for (const auto& smp : batch.samples) {
        const double vi = std::exp(-s * T * smp.q_i);
        const double vr = std::exp(s * smp.q_sr);
        si += vi;
        si2 += vi * vi;
        sr += vr;
        sr2 += vr * vr;
        const double ups = s_star * (T * (smp.q_i + baseline.noise_power) - smp.q_sr);
        const double re = std::cos(f * ups);
        const double im = std::sin(f * ups);
        cr += re;
        cr2 += re * re;
        ci += im;
        ci2 += im * im;
      }
      auto check_one = [&](double sum, double sum2, double an) {
        const double mean = sum / n;
        const double se =
            std::sqrt(std::max(0.0, sum2 / n - mean * mean) / n) + 1e-12;
        const double sigmas = std::fabs(mean - an) / se;
        worst_sigma = std::max(worst_sigma, sigmas);
        if (sigmas > 3.0) pass = false;
      };
      check_one(si, si2,
                analytic::total_interference_laplace({s, 0.0}, baseline, quad)
                    .value.real());
      check_one(sr, sr2,
                analytic::reflected_signal_laplace({s, 0.0}, baseline, quad)
                    .value.real());
      const auto bu_raw =
          analytic::upsilon_bilateral({0.0, -f * s_star}, baseline, quad);
      check_one(cr, cr2, bu_raw.value.real());
      check_one(ci, ci2, bu_raw.value.imag());
    }
    suite.add("03 transform validation", pass,
              format("15 interference/reflected points + 10 char-function "
                     "components, worst %.2f sigma <= 3",
                     worst_sigma),
              now() - t1);
  }

  // ---- criterion 4: Parseval --------------------------------------------
  {
    const double t1 = now();
    Rng rng(99);
    double worst = 0.0;
    const int n_s_grid[3] = {256, 1024, 4096};
    for (int trial = 0; trial < 100; ++trial) {
      montecarlo::ChannelTaps taps;
      taps.n_s = n_s_grid[trial % 3];
      const int n_taps = 1 + static_cast<int>(rng.poisson(4));
      for (int j = 0; j < n_taps; ++j) {
        int delay;
        bool fresh = true;
        do {
          delay = static_cast<int>(rng.uniform() *
                                   std::min(taps.n_s, 300));
          fresh = true;
          for (const auto& [d, g] : taps.taps) {
            if (d == delay) fresh = false;
          }
        } while (!fresh);
        taps.taps.emplace_back(delay,
                               CD{rng.normal(), rng.normal()});
      }
      taps.n_c = 301;
      worst = std::max(worst, montecarlo::ofdm_parseval_check(taps).rel_err);
    }
    suite.add("04 OFDM Parseval identity", worst < 1e-9,
              format("100 random channels, worst rel_err %.2e < 1e-9", worst),
              now() - t1);
  }

  // ---- criterion 5: product-fading moments -------------------------------
  {
    const double t1 = now();
    const long n = quick ? 2000000 : 10000000;
    Rng rng(7);
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (long i = 0; i < n; ++i) {
      const double z = std::abs(fading::sample_rician(baseline.rician, rng) *
                                fading::sample_rician(baseline.rician, rng));
      s1 += z;
      s2 += z * z;
      s3 += z * z * z;
      s4 += z * z * z * z;
    }
    const double m1 = s1 / n, m2 = s2 / n, m3 = s3 / n, m4 = s4 / n;
    const double var = m2 - m1 * m1;
    const double se_mean = std::sqrt(var / n);
    // Fourth central moment for the variance standard error.
    const double mu4 =
        m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * std::pow(m1, 4);
    const double se_var = std::sqrt(std::max(0.0, mu4 - var * var) / n);
    const auto zeta = baseline.zeta;
    const double mean_diff = std::fabs(m1 - zeta.mean_abs);
    const double var_diff = std::fabs(var - zeta.var_abs);
    const double identity =
        std::fabs(zeta.var_abs - (1.0 - zeta.mean_abs * zeta.mean_abs));
    const bool pass = mean_diff <= 3.0 * se_mean && var_diff <= 3.0 * se_var &&
                      identity <= 1e-12;
    suite.add(
        "05 product-fading moments", pass,
        format("|mean|=%.1e<=%.1e |var|=%.1e<=%.1e identity=%.1e<=1e-12",
               mean_diff, 3.0 * se_mean, var_diff, 3.0 * se_var, identity),
        now() - t1);
  }

  // ---- criterion 6: contour machinery on closed forms --------------------
  {
    const double t1 = now();
    bool pass = true;
    double worst = 0.0;
    auto check = [&](double got, double want) {
      const double diff = std::fabs(got - want);
      worst = std::max(worst, diff);
      if (diff > 1e-5) pass = false;
    };
    // Exp(1): all mass positive.
    for (double s0 : {0.5, 1.0, 2.0}) {
      analytic::BilateralFn b = [s0](CD z) { return 1.0 / (1.0 + z * s0); };
      check(analytic::plus_transform_from_bilateral(b, quad), 1.0 / (1.0 + s0));
      check(analytic::prob_negative_from_bilateral(b, quad), 0.0);
    }
    // Exp(1) - Exp(1): symmetric two-sided.
    for (double s0 : {0.25, 0.5, 0.8}) {
      analytic::BilateralFn b = [s0](CD z) {
        const CD s = z * s0;
        return 1.0 / ((1.0 + s) * (1.0 - s));
      };
      check(analytic::plus_transform_from_bilateral(b, quad),
            0.5 / (1.0 + s0));
      check(analytic::prob_negative_from_bilateral(b, quad), 0.5);
    }
    // Gamma(3, 0.7) - 1.5.
    {
      const int k = 3;
      const double theta = 0.7, c = 1.5;
      for (double s0 : {0.5, 1.0}) {
        analytic::BilateralFn b = [=](CD z) {
          const CD s = z * s0;
          return std::exp(s * c) * std::pow(1.0 + s * theta, -k);
        };
        check(analytic::plus_transform_from_bilateral(b, quad),
              shifted_gamma_plus_transform(k, theta, c, s0));
        check(analytic::prob_negative_from_bilateral(b, quad),
              erlang_cdf(k, theta, c));
      }
    }
    suite.add("06 positive-part transform on closed forms", pass,
              format("worst |diff| = %.2e <= 1e-5", worst), now() - t1);
  }

  // ---- criterion 7: no-RIS reduction --------------------------------------
  {
    const double t1 = now();
    SystemParams bare = baseline;
    bare.lambda_ris = 0.0;
    bare.noise_power = 0.0;
    bare.derive();
    const double s_bare = 1.0 / (bare.p0 * geometry::pathloss(
                                               bare.serving_distance,
                                               bare.pathloss.alpha_nlos,
                                               bare.pathloss.beta));
    const double formula =
        analytic::total_interference_laplace({s_bare, 0.0}, bare, quad)
            .value.real();
    const double pc = analytic::coverage_probability(1.0, bare, quad);
    const double diff = std::fabs(pc - formula);
    const auto mc = montecarlo::estimate_coverage(bare, 1.0,
                                                  quick ? 5000 : 30000, seed);
    const double mc_diff = std::fabs(pc - mc.mean);
    const bool pass = diff <= 1e-6 && mc_diff <= 3.0 * mc.std_error;
    suite.add("07 Rayleigh/PPP reduction", pass,
              format("|Pc-L_I(s*)|=%.2e<=1e-6, |Pc-mc|=%.4f<=%.4f", diff,
                     mc_diff, 3.0 * mc.std_error),
              now() - t1);
  }

  // ---- criterion 8: reflected-interference fraction trends ----------------
  {
    const double t1 = now();
    bool pass = true;
    std::string detail;
    auto fraction = [&](double beam_deg, double alpha_ir) {
      SystemParams p = baseline;
      p.beam = fading::BeamOverlap::from_beamwidth(beam_deg);
      p.pathloss.alpha_ir = alpha_ir;
      p.derive();
      const auto powers = analytic::mean_power_decomposition(p);
      return powers.reflected_interference /
             (powers.direct_interference + powers.reflected_interference);
    };
    double prev = -1.0;
    for (double deg : {3.6, 10.0, 36.0, 90.0, 180.0}) {
      const double f = fraction(deg, 4.0);
      if (f <= prev) pass = false;
      prev = f;
    }
    detail += "increasing in overlap; ";
    prev = 2.0;
    for (double alpha : {3.0, 3.5, 4.0}) {
      const double f = fraction(10.0, alpha);
      if (f >= prev) pass = false;
      prev = f;
    }
    detail += "decreasing in alpha_ir; ";
    const double p10 = fading::BeamOverlap::from_beamwidth(10.0).overlap_prob;
    if (std::fabs(p10 - 10.0 / 360.0) > 1e-15 ||
        std::fabs(p10 - 0.0278) > 5e-5) {
      pass = false;
    }
    detail += format("p(10deg)=%.6f~0.0278", p10);
    suite.add("08 reflected-interference trends", pass, detail, now() - t1);
  }

  // ---- criterion 9: fixed element budget ----------------------------------
  {
    const double t1 = now();
    std::vector<double> means = quick ? std::vector<double>{1, 4, 10}
                                      : std::vector<double>{1, 2, 4, 5, 10};
    bool pass = true;
    std::string detail = "rates:";
    double prev = 1e300;
    for (double mean : means) {
      SystemParams p = baseline;
      p.lambda_ris = SystemParams::density_for_mean(mean, p.r_in, p.r_out);
      p.m_total = static_cast<int>(std::lround(10000.0 / mean));
      p.m_batch = std::max(1, p.m_total / 5);
      p.derive();
      const double rate = analytic::ergodic_rate(p, quad);
      detail += format(" %.4f", rate);
      if (rate >= prev) pass = false;
      prev = rate;
    }
    suite.add("09 rate decreasing in RIS density at fixed elements", pass,
              detail, now() - t1);
  }

  // ---- criterion 10: coverage-hole relative gains -------------------------
  {
    const double t1 = now();
    SystemParams base = baseline;
    base.lambda_bs = 4e-6;
    base.lambda_ris = SystemParams::density_for_mean(4.0, 25.0, 35.0);
    base.derive();

    variants::HoleScenario ring;
    ring.hole.serving_distance = 80.0;
    ring.model = variants::HoleModel::mcp_ring;
    variants::HoleScenario wedge = ring;
    wedge.model = variants::HoleModel::bpp_wedge;
    wedge.n_ris = 4;
    variants::HoleScenario wedge_ppp = ring;
    wedge_ppp.model = variants::HoleModel::ppp_wedge;
    wedge_ppp.wedge_ppp_mean = 4.0;
    variants::HoleScenario wedge_blocked = wedge;
    wedge_blocked.hole.c_r = db(-3.0);

    std::vector<double> atten = quick ? std::vector<double>{0, 3, 5}
                                      : std::vector<double>{0, 1, 2, 3, 4, 5};
    bool pass = true;
    std::string detail;
    std::vector<double> g_ring, g_wedge, g_wedge_ppp, g_blocked;
    for (double a : atten) {
      const double c_d = db(-a);
      auto at = [&](variants::HoleScenario sc) {
        sc.hole.c_d = c_d;
        return variants::rate_with_blockage(sc, base, quad);
      };
      variants::HoleScenario bare = ring;
      bare.hole.c_d = c_d;
      auto bare_params = base;
      bare_params.lambda_ris = 0.0;
      bare_params.derive();
      const double tau_bare = variants::rate_with_blockage(bare, bare_params, quad);
      g_ring.push_back(at(ring) / tau_bare);
      g_wedge.push_back(at(wedge) / tau_bare);
      g_wedge_ppp.push_back(at(wedge_ppp) / tau_bare);
      g_blocked.push_back(at(wedge_blocked) / tau_bare);
    }
    for (std::size_t i = 0; i + 1 < atten.size(); ++i) {
      if (g_ring[i + 1] < g_ring[i] - 1e-4) pass = false;
      if (g_wedge[i + 1] < g_wedge[i] - 1e-4) pass = false;
    }
    for (std::size_t i = 0; i < atten.size(); ++i) {
      if (g_blocked[i] >= g_wedge[i]) pass = false;        // strict reduction
      if (g_wedge[i] < g_wedge_ppp[i] - 1e-6) pass = false;  // BPP >= PPP
    }
    detail = format(
        "gain(ring) %.3f->%.3f, gain(wedge) %.3f->%.3f, blocked<wedge, "
        "bpp>=ppp",
        g_ring.front(), g_ring.back(), g_wedge.front(), g_wedge.back());
    suite.add("10 coverage-hole gain trends", pass, detail, now() - t1);
  }

  std::sort(suite.results.begin(), suite.results.end(),
            [](const CheckResult& a, const CheckResult& b) {
              return a.name < b.name;
            });
  return suite.results;
}

}  // namespace risnet::validate
