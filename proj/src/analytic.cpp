// SPDX-License-Identifier: Apache-2.0
#include "risnet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace risnet::analytic {

namespace {

using std::complex;
using CD = complex<double>;
using numerics::gauss_legendre;

double pathloss_decay(double d, double alpha, double beta) {
  return geometry::pathloss(d, alpha, beta);
}

}  // namespace

void SystemParams::derive() {
  zeta = fading::product_fading_moments(rician);
  stats = fading::beamform_stats(zeta, m_total, m_batch);
}

void SystemParams::validate() const {
  std::ostringstream bad;
  auto require = [&](bool ok, const char* what) {
    if (!ok) bad << (bad.tellp() > 0 ? "; " : "") << what;
  };
  require(lambda_bs > 0.0, "lambda_bs must be > 0");
  require(lambda_ris >= 0.0, "lambda_ris must be >= 0");
  require(r_in > 0.0 && r_in < r_out, "need 0 < r_in < r_out");
  require(p0 > 0.0, "p0 must be > 0");
  require(noise_power >= 0.0, "noise_power must be >= 0");
  require(m_batch >= 1 && m_batch <= m_total, "need 1 <= m_batch <= m_total");
  require(pathloss.alpha_los > 2.0 && pathloss.alpha_nlos > 2.0 &&
              pathloss.alpha_ir > 2.0,
          "pathloss exponents must exceed 2");
  require(pathloss.beta > 0.0, "beta must be > 0");
  require(serving_distance > 0.0, "serving_distance must be > 0");
  require(threshold > 0.0, "threshold must be > 0");
  if (bad.tellp() > 0) throw ConfigError("invalid parameters: " + bad.str());
}

double SystemParams::mean_cluster_size() const {
  return lambda_ris * M_PI * (r_out * r_out - r_in * r_in);
}

double SystemParams::density_for_mean(double mean, double r_in, double r_out) {
  return mean / (M_PI * (r_out * r_out - r_in * r_in));
}

SystemParams SystemParams::baseline() {
  SystemParams p;
  p.lambda_ris = density_for_mean(5.0, p.r_in, p.r_out);
  p.derive();
  return p;
}

SignalField SignalField::from_params(const SystemParams& p) {
  SignalField f;
  f.kind = Kind::bs_ring_ppp;
  f.r_in = p.r_in;
  f.r_out = p.r_out;
  f.half_angle = M_PI;
  f.lambda = p.lambda_ris;
  return f;
}

DeficitTransform::DeficitTransform(const SystemParams& params, Options opts,
                                   QuadratureConfig quad)
    : params_(params), opts_(std::move(opts)), quad_(quad) {
  const auto& pl = params_.pathloss;
  const double r = params_.serving_distance;

  std::vector<double> yn, yw, an, aw;
  gauss_legendre(opts_.nodes_radial, yn, yw);

  // Interference clusters: annulus around the interfering BS, psi folded to
  // [0, pi] (the integrand is even in psi), Jacobian y in the weight.
  gauss_legendre(opts_.nodes_angular, an, aw);
  const double ymid = 0.5 * (params_.r_in + params_.r_out);
  const double yhal = 0.5 * (params_.r_out - params_.r_in);
  for (int i = 0; i < opts_.nodes_radial; ++i) {
    const double y = ymid + yhal * yn[i];
    const double gy = pathloss_decay(y, pl.alpha_los, pl.beta);
    for (int j = 0; j < opts_.nodes_angular; ++j) {
      const double psi = 0.5 * M_PI * (1.0 + an[j]);
      const double w =
          (yhal * yw[i]) * (0.5 * M_PI * aw[j]) * y * 2.0;  // symmetry x2
      interference_nodes_.push_back({y, std::cos(psi), w, gy});
    }
  }

  // Serving reflection field. The node gain is the full two-leg product since
  // the serving distance is fixed.
  const auto& sig = opts_.signal;
  const double half = sig.kind == SignalField::Kind::bs_ring_ppp ||
                              sig.kind == SignalField::Kind::ue_ring_ppp
                          ? M_PI
                          : sig.half_angle;
  if (sig.r_out > sig.r_in && half > 0.0) {
    const double smid = 0.5 * (sig.r_in + sig.r_out);
    const double shal = 0.5 * (sig.r_out - sig.r_in);
    for (int i = 0; i < opts_.nodes_radial; ++i) {
      const double y = smid + shal * yn[i];
      for (int j = 0; j < opts_.nodes_angular; ++j) {
        const double psi = 0.5 * half * (1.0 + an[j]);
        const double other = std::sqrt(
            std::max(0.0, r * r + y * y - 2.0 * r * y * std::cos(psi)));
        // BS-centric: y is the BS-RIS leg; UE-centric: y is the RIS-UE leg.
        // Both legs are LoS, so the gain is the same product either way.
        const double gain = pathloss_decay(y, pl.alpha_los, pl.beta) *
                            pathloss_decay(other, pl.alpha_los, pl.beta);
        const double w = (shal * yw[i]) * (0.5 * half * aw[j]) * y * 2.0;
        signal_nodes_.push_back({y, std::cos(psi), w, gain});
      }
    }
    signal_area_ = half * (sig.r_out * sig.r_out - sig.r_in * sig.r_in);
    // Sup of the gain over the support: scan plus the analytic candidate at
    // the inner radius facing the BS.
    max_signal_gain_ =
        pathloss_decay(sig.r_in, pl.alpha_los, pl.beta) *
        pathloss_decay(std::fabs(r - sig.r_in), pl.alpha_los, pl.beta);
    for (int i = 0; i <= 96; ++i) {
      const double y = sig.r_in + (sig.r_out - sig.r_in) * i / 96.0;
      for (int j = 0; j <= 96; ++j) {
        const double psi = half * j / 96.0;
        const double other = std::sqrt(
            std::max(0.0, r * r + y * y - 2.0 * r * y * std::cos(psi)));
        max_signal_gain_ = std::max(
            max_signal_gain_, pathloss_decay(y, pl.alpha_los, pl.beta) *
                                  pathloss_decay(other, pl.alpha_los, pl.beta));
      }
    }
  }

  const bool has_signal =
      !signal_nodes_.empty() &&
      ((sig.kind == SignalField::Kind::ue_wedge_bpp && sig.n_ris > 0) ||
       (sig.kind != SignalField::Kind::ue_wedge_bpp && sig.lambda > 0.0));
  if (has_signal && params_.stats.sigma_re_sq > 0.0 && opts_.c_reflected > 0.0) {
    s_sup_ = 1.0 / (2.0 * params_.stats.sigma_re_sq * params_.p0 *
                    opts_.c_reflected * max_signal_gain_);
  } else {
    s_sup_ = std::numeric_limits<double>::infinity();
  }
  if (!has_signal) signal_nodes_.clear();
}

CD DeficitTransform::log_cluster(CD s, double x) const {
  const auto& pl = params_.pathloss;
  const CD w = s * params_.p0 * opts_.threshold;
  CD out = -numerics::log1p(w * pathloss_decay(x, pl.alpha_nlos, pl.beta));
  if (!opts_.reflected_interference || params_.lambda_ris <= 0.0) return out;

  const double p_ov = params_.beam.overlap_prob;
  const double scatter = params_.stats.m_total - params_.stats.m_batch;
  const double x2 = x * x;
  CD beamed{0.0, 0.0};
  CD scattered{0.0, 0.0};
  for (const auto& node : interference_nodes_) {
    const double d2 = x2 + node.y * node.y - 2.0 * x * node.y * node.cos_psi;
    const double gain =
        node.g_first *
        pathloss_decay(d2 > 0.0 ? std::sqrt(d2) : 0.0, pl.alpha_ir, pl.beta);
    const CD arg = w * gain;
    beamed += node.weight *
              fading::one_minus_reflected_fading_laplace(arg, params_.stats);
    if (scatter > 0.0) {
      const CD q = arg * scatter;
      scattered += node.weight * (q / (1.0 + q));
    }
  }
  out -= params_.lambda_ris * (p_ov * beamed + (1.0 - p_ov) * scattered);
  return out;
}

CD DeficitTransform::log_interference(CD s) const {
  if (s == 0.0 || opts_.threshold == 0.0 || params_.lambda_bs <= 0.0) {
    return {0.0, 0.0};
  }
  const double r = params_.serving_distance;
  auto integrand = [&](double x) -> CD {
    return x * (-numerics::expm1(log_cluster(s, x)));
  };
  const auto integral = numerics::integrate_to_inf(integrand, r, quad_, r);
  return -2.0 * M_PI * params_.lambda_bs * integral.value;
}

CD DeficitTransform::signal_exponent(CD w) const {
  if (signal_nodes_.empty()) return {0.0, 0.0};
  CD acc{0.0, 0.0};
  for (const auto& node : signal_nodes_) {
    acc += node.weight * fading::one_minus_reflected_fading_laplace(
                             -w * node.g_first, params_.stats);
  }
  if (opts_.signal.kind == SignalField::Kind::ue_wedge_bpp) {
    return static_cast<double>(opts_.signal.n_ris) *
           numerics::log1p(-acc / signal_area_);
  }
  return -opts_.signal.lambda * acc;
}

TransformValue DeficitTransform::cluster(CD s, double x) const {
  if (s.real() < 0.0) return {{0.0, 0.0}, false};
  return {std::exp(log_cluster(s, x)), true};
}

TransformValue DeficitTransform::interference(CD s) const {
  if (s.real() < 0.0) return {{0.0, 0.0}, false};
  return {std::exp(log_interference(s)), true};
}

TransformValue DeficitTransform::reflected(CD s) const {
  if (s.real() >= s_sup_) return {{0.0, 0.0}, false};
  return {std::exp(signal_exponent(s * opts_.c_reflected * params_.p0)), true};
}

TransformValue DeficitTransform::operator()(CD s) const {
  if (s.real() < 0.0 || s.real() >= s_sup_) return {{0.0, 0.0}, false};
  const CD noise = -s * opts_.threshold * params_.noise_power;
  const CD log_value = log_interference(s) + noise +
                       signal_exponent(s * opts_.c_reflected * params_.p0);
  return {std::exp(log_value), true};
}

// --- spec-level wrappers -------------------------------------------------

namespace {

DeficitTransform make_default_transform(const SystemParams& p,
                                        const QuadratureConfig& cfg,
                                        double threshold) {
  DeficitTransform::Options opts;
  opts.threshold = threshold;
  opts.signal = SignalField::from_params(p);
  return DeficitTransform(p, opts, cfg);
}

}  // namespace

TransformValue cluster_interference_laplace(CD s, double x,
                                            const SystemParams& p,
                                            const QuadratureConfig& cfg) {
  return make_default_transform(p, cfg, p.threshold).cluster(s, x);
}

TransformValue total_interference_laplace(CD s, const SystemParams& p,
                                          const QuadratureConfig& cfg) {
  return make_default_transform(p, cfg, p.threshold).interference(s);
}

TransformValue reflected_signal_laplace(CD s, const SystemParams& p,
                                        const QuadratureConfig& cfg) {
  return make_default_transform(p, cfg, p.threshold).reflected(s);
}

TransformValue upsilon_bilateral(CD s, const SystemParams& p,
                                 const QuadratureConfig& cfg) {
  return make_default_transform(p, cfg, p.threshold)(s);
}

UpsilonSpec UpsilonSpec::from_params(const SystemParams& p) {
  const auto& pl = p.pathloss;
  const double r = p.serving_distance;
  UpsilonSpec spec;
  spec.params = p;
  spec.s_b = convergence_bound(p).s_sup;
  // Left edge: the interference-side transforms converge on a half plane;
  // the binding factors sit at the closest interferer (x = r). Only the sign
  // matters downstream, every evaluation point has Re(s) >= 0.
  const double direct_edge =
      -1.0 / (p.p0 * p.threshold * pathloss_decay(r, pl.alpha_nlos, pl.beta));
  double edge = direct_edge;
  const double gain_max = geometry::two_leg_path_gain(
      r, p.r_in, 0.0, pl.alpha_los, pl.alpha_ir, pl.beta);
  const double scatter = p.stats.m_total - p.stats.m_batch;
  if (p.lambda_ris > 0.0 && scatter > 0.0) {
    edge = std::max(edge,
                    -1.0 / (scatter * p.p0 * p.threshold * gain_max));
  }
  if (p.lambda_ris > 0.0 && p.stats.sigma_re_sq > 0.0) {
    edge = std::max(edge, -0.5 / (p.stats.sigma_re_sq * p.p0 * p.threshold *
                                  gain_max));
  }
  spec.s_a = edge;
  return spec;
}

ConvergenceReport convergence_bound(const SystemParams& p) {
  const auto& pl = p.pathloss;
  const double r = p.serving_distance;
  const double g_direct = pathloss_decay(r, pl.alpha_nlos, pl.beta);
  // Worst case of the two-leg gain over the annulus: grid scan plus the
  // candidate at (y = r_in, psi = 0).
  double max_gain = geometry::two_leg_path_gain(r, p.r_in, 0.0, pl.alpha_los,
                                                pl.alpha_los, pl.beta);
  for (int i = 0; i <= 96; ++i) {
    const double y = p.r_in + (p.r_out - p.r_in) * i / 96.0;
    for (int j = 0; j <= 96; ++j) {
      const double psi = M_PI * j / 96.0;
      max_gain = std::max(max_gain, geometry::two_leg_path_gain(
                                        r, y, psi, pl.alpha_los, pl.alpha_los,
                                        pl.beta));
    }
  }
  ConvergenceReport rep;
  const double worst = p.stats.sigma_re_sq * max_gain / g_direct;
  rep.margin = 0.5 - worst;
  rep.feasible = worst < 0.5;
  rep.s_sup = p.stats.sigma_re_sq > 0.0
                  ? 1.0 / (2.0 * p.stats.sigma_re_sq * p.p0 * max_gain)
                  : std::numeric_limits<double>::infinity();
  return rep;
}

// --- contour machinery ----------------------------------------------------

double prob_negative_from_bilateral(const BilateralFn& b,
                                    const QuadratureConfig& cfg,
                                    double panel0) {
  auto cf = [&](double u) { return b(CD{0.0, -u}); };
  const auto gp = numerics::gil_pelaez_cdf_at_zero(cf, cfg, panel0);
  return std::clamp(gp.prob, 0.0, 1.0);
}

namespace {

double contour_difference_integral(const BilateralFn& b,
                                   const QuadratureConfig& cfg, double panel0,
                                   bool pv_machinery) {
  if (pv_machinery) {
    // Literal principal-value form over the whole line, folded + Richardson.
    auto g = [&](double u) {
      const CD diff = b(CD{1.0, -u}) - b(CD{0.0, -u});
      return diff.imag() / (2.0 * M_PI * u);
    };
    QuadratureConfig pv_cfg = cfg;
    pv_cfg.pv_epsilon = cfg.pv_epsilon * panel0;
    return numerics::principal_value(g, pv_cfg, panel0);
  }
  auto integrand = [&](double u) {
    const CD diff = b(CD{1.0, -u}) - b(CD{0.0, -u});
    return diff.imag() / (M_PI * u);
  };
  return numerics::decaying_tail_integral(integrand, 0.0, panel0, cfg).value;
}

}  // namespace

double plus_transform_from_bilateral(const BilateralFn& b,
                                     const QuadratureConfig& cfg,
                                     double panel0) {
  const double pv = contour_difference_integral(b, cfg, panel0, true);
  const double at_anchor = b(CD{1.0, 0.0}).real();
  const double p_neg = prob_negative_from_bilateral(b, cfg, panel0);
  return pv + 0.5 * (1.0 + at_anchor) - p_neg;
}

double coverage_from_bilateral(const BilateralFn& b, const QuadratureConfig& cfg,
                               CoverageRoute route, double panel0) {
  double value = 0.0;
  if (route == CoverageRoute::direct) {
    const double tail = contour_difference_integral(b, cfg, panel0, false);
    value = 0.5 * (1.0 + b(CD{1.0, 0.0}).real()) + tail;
  } else {
    const double p_neg = prob_negative_from_bilateral(b, cfg, panel0);
    const double pv = contour_difference_integral(b, cfg, panel0, true);
    const double l_plus = pv + 0.5 * (1.0 + b(CD{1.0, 0.0}).real()) - p_neg;
    value = l_plus + p_neg;
  }
  return std::clamp(value, 0.0, 1.0);
}

// --- headline metrics ------------------------------------------------------

namespace {

struct AnchoredModel {
  DeficitTransform transform;
  double anchor;  // evaluation point 1 / (c_direct P0 g(r))
  double panel0;
};

void require_feasible(double anchor, const DeficitTransform& dt) {
  if (anchor < dt.s_sup()) return;
  // The strip condition in normalized form: 0.5 * anchor / s_sup must stay
  // below 1/2 for the reflected-signal transform to converge at the anchor.
  const double violation = 0.5 * anchor / dt.s_sup();
  std::ostringstream msg;
  msg << "parameters outside the convergence strip: evaluation point "
      << anchor << " >= strip edge " << dt.s_sup()
      << " (constraint value " << violation << ", must be < 0.5)";
  throw FeasibilityError(msg.str(), 0.5 - violation);
}

// First tail-panel width in normalized units: the inverse of the deficit's
// magnitude scale at this threshold.
double normalized_panel0(const SystemParams& p,
                         const DeficitTransform::Options& opts, double anchor,
                         const QuadratureConfig& cfg);

AnchoredModel make_anchored(const SystemParams& p,
                            const DeficitTransform::Options& opts,
                            double c_direct, const QuadratureConfig& cfg) {
  p.validate();
  const double g_direct = pathloss_decay(
      p.serving_distance, p.pathloss.alpha_nlos, p.pathloss.beta);
  const double anchor = 1.0 / (c_direct * p.p0 * g_direct);
  DeficitTransform dt(p, opts, cfg);
  require_feasible(anchor, dt);
  const double panel0 = normalized_panel0(p, opts, anchor, cfg);
  return {std::move(dt), anchor, panel0};
}

MeanPowers mean_powers_of(const SystemParams& p,
                          const DeficitTransform::Options& opts,
                          const QuadratureConfig& cfg);

double normalized_panel0(const SystemParams& p,
                         const DeficitTransform::Options& opts, double anchor,
                         const QuadratureConfig& cfg) {
  const auto means = mean_powers_of(p, opts, cfg);
  const double scale =
      opts.threshold * (means.direct_interference +
                        means.reflected_interference + p.noise_power) +
      opts.c_reflected * means.reflected_signal;
  const double normalized = anchor * scale;
  return 1.0 / std::clamp(normalized, 1.0, 1e9);
}

}  // namespace

double prob_upsilon_negative(const SystemParams& p,
                             const QuadratureConfig& cfg) {
  DeficitTransform::Options opts;
  opts.threshold = p.threshold;
  opts.signal = SignalField::from_params(p);
  auto model = make_anchored(p, opts, 1.0, cfg);
  const auto& dt = model.transform;
  const double anchor = model.anchor;
  return prob_negative_from_bilateral(
      [&](CD z) { return dt(z * anchor).value; }, cfg, model.panel0);
}

double laplace_upsilon_plus(double s, const SystemParams& p,
                            const QuadratureConfig& cfg) {
  if (!(s > 0.0)) throw std::domain_error("laplace_upsilon_plus: need s > 0");
  DeficitTransform::Options opts;
  opts.threshold = p.threshold;
  opts.signal = SignalField::from_params(p);
  DeficitTransform dt(p, opts, cfg);
  require_feasible(s, dt);
  const double panel0 = normalized_panel0(p, opts, s, cfg);
  return plus_transform_from_bilateral([&](CD z) { return dt(z * s).value; },
                                       cfg, panel0);
}

double coverage_of_model(const SystemParams& p,
                         const DeficitTransform::Options& opts,
                         double c_direct, const QuadratureConfig& cfg,
                         CoverageRoute route) {
  if (opts.threshold <= 0.0) return 1.0;  // SINR >= 0 almost surely
  auto model = make_anchored(p, opts, c_direct, cfg);
  const auto& dt = model.transform;
  const double anchor = model.anchor;
  return coverage_from_bilateral([&](CD z) { return dt(z * anchor).value; },
                                 cfg, route, model.panel0);
}

double coverage_probability(double threshold, const SystemParams& p,
                            const QuadratureConfig& cfg, CoverageRoute route) {
  DeficitTransform::Options opts;
  opts.threshold = threshold;
  opts.signal = SignalField::from_params(p);
  return coverage_of_model(p, opts, 1.0, cfg, route);
}

double rate_from_coverage(const std::function<double(double)>& coverage_at_t) {
  auto integrand = [&](double v) { return coverage_at_t(std::expm1(v)); };
  QuadratureConfig panel_cfg;
  panel_cfg.rel_tol = 1e-4;
  panel_cfg.abs_tol = 1e-6;
  panel_cfg.max_subdivisions = 6;
  double total = 0.0;
  const double width = 4.0;
  for (int k = 0; k < 8; ++k) {
    const auto piece =
        numerics::integrate(integrand, k * width, (k + 1) * width, panel_cfg);
    total += piece.value;
    if (piece.value < std::max(2e-5, 1e-4 * total)) break;
  }
  return total;
}

double rate_of_model(const SystemParams& p, DeficitTransform::Options opts,
                     double c_direct, const QuadratureConfig& cfg) {
  // tau = int_0^inf P_c(e^v - 1) dv, marched over fixed-width panels until
  // the integrand dies; coverage failures propagate with the offending t.
  // The per-node coverage runs at relaxed tolerances: the rate only needs
  // ~1e-4 absolute accuracy and each node is a full contour evaluation.
  QuadratureConfig inner = cfg;
  inner.rel_tol = std::max(cfg.rel_tol, 1e-6);
  inner.abs_tol = std::max(cfg.abs_tol, 1e-9);
  inner.tail_decay = std::max(cfg.tail_decay, 1e-8);
  return rate_from_coverage([&](double t) {
    opts.threshold = t;
    try {
      return coverage_of_model(p, opts, c_direct, inner);
    } catch (const FeasibilityError& err) {
      throw FeasibilityError(std::string(err.what()) +
                                 " (rate node t=" + std::to_string(t) + ")",
                             err.margin);
    }
  });
}

double ergodic_rate(const SystemParams& p, const QuadratureConfig& cfg) {
  DeficitTransform::Options opts;
  opts.signal = SignalField::from_params(p);
  return rate_of_model(p, opts, 1.0, cfg);
}

// --- mean powers ------------------------------------------------------------

namespace {

MeanPowers mean_powers_of(const SystemParams& p,
                          const DeficitTransform::Options& opts,
                          const QuadratureConfig& cfg) {
  const auto& pl = p.pathloss;
  const double r = p.serving_distance;
  MeanPowers out;
  out.direct_signal = p.p0 * pathloss_decay(r, pl.alpha_nlos, pl.beta);

  auto direct_integrand = [&](double x) {
    return x * pathloss_decay(x, pl.alpha_nlos, pl.beta);
  };
  out.direct_interference =
      2.0 * M_PI * p.lambda_bs * p.p0 *
      numerics::integrate_to_inf(direct_integrand, r, cfg, r).value;

  std::vector<double> yn, yw, an, aw;
  gauss_legendre(16, yn, yw);
  gauss_legendre(32, an, aw);
  const double ymid = 0.5 * (p.r_in + p.r_out);
  const double yhal = 0.5 * (p.r_out - p.r_in);

  // Cluster kernel K(x) = int int y * G(x,y,psi) dy dpsi, second-leg exponent
  // as given.
  auto cluster_kernel = [&](double x, double alpha_second) {
    double acc = 0.0;
    for (std::size_t i = 0; i < yn.size(); ++i) {
      const double y = ymid + yhal * yn[i];
      const double gy = pathloss_decay(y, pl.alpha_los, pl.beta);
      for (std::size_t j = 0; j < an.size(); ++j) {
        const double psi = 0.5 * M_PI * (1.0 + an[j]);
        const double d2 = x * x + y * y - 2.0 * x * y * std::cos(psi);
        const double g2 = pathloss_decay(d2 > 0.0 ? std::sqrt(d2) : 0.0,
                                         alpha_second, pl.beta);
        acc += (yhal * yw[i]) * (0.5 * M_PI * aw[j]) * y * 2.0 * gy * g2;
      }
    }
    return acc;
  };

  if (opts.reflected_interference && p.lambda_ris > 0.0) {
    const double mean_gamma_ir =
        fading::mean_interfering_fading(p.stats, p.beam);
    auto reflected_integrand = [&](double x) {
      return x * cluster_kernel(x, pl.alpha_ir);
    };
    out.reflected_interference =
        2.0 * M_PI * p.lambda_bs * p.lambda_ris * mean_gamma_ir * p.p0 *
        numerics::integrate_to_inf(reflected_integrand, r, cfg, r).value;
  }

  // Serving reflection mean over the signal support (two LoS legs).
  const auto& sig = opts.signal;
  const bool has_signal = sig.r_out > sig.r_in &&
                          (sig.kind == SignalField::Kind::ue_wedge_bpp
                               ? sig.n_ris > 0
                               : sig.lambda > 0.0);
  if (has_signal) {
    const double half = sig.kind == SignalField::Kind::ue_wedge_ppp ||
                                sig.kind == SignalField::Kind::ue_wedge_bpp
                            ? sig.half_angle
                            : M_PI;
    const double smid = 0.5 * (sig.r_in + sig.r_out);
    const double shal = 0.5 * (sig.r_out - sig.r_in);
    double acc = 0.0;
    for (std::size_t i = 0; i < yn.size(); ++i) {
      const double y = smid + shal * yn[i];
      for (std::size_t j = 0; j < an.size(); ++j) {
        const double psi = 0.5 * half * (1.0 + an[j]);
        const double d2 = r * r + y * y - 2.0 * r * y * std::cos(psi);
        const double gain =
            pathloss_decay(y, pl.alpha_los, pl.beta) *
            pathloss_decay(d2 > 0.0 ? std::sqrt(d2) : 0.0, pl.alpha_los,
                           pl.beta);
        acc += (shal * yw[i]) * (0.5 * half * aw[j]) * y * 2.0 * gain;
      }
    }
    const double density =
        sig.kind == SignalField::Kind::ue_wedge_bpp
            ? sig.n_ris / (half * (sig.r_out * sig.r_out - sig.r_in * sig.r_in))
            : sig.lambda;
    out.reflected_signal =
        density * fading::mean_reflected_fading(p.stats) * p.p0 * acc;
  }
  return out;
}

}  // namespace

MeanPowers mean_power_decomposition(const SystemParams& p,
                                    const QuadratureConfig& cfg) {
  DeficitTransform::Options opts;
  opts.threshold = p.threshold;
  opts.signal = SignalField::from_params(p);
  return mean_powers_of(p, opts, cfg);
}

}  // namespace risnet::analytic
