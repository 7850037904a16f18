// SPDX-License-Identifier: Apache-2.0
#include "risnet/numerics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace risnet::numerics {

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

namespace {

struct PanelResult {
  double value = 0.0;
  double error = 0.0;
  double max_abs = 0.0;
  bool converged = true;
};

PanelResult integrate_panel(const std::function<double(double)>& f, double a,
                            double b, const QuadratureConfig& cfg) {
  // Track the largest |f| sampled anywhere in the panel; the tail-stop rule
  // needs it and the adaptive splits must not lose it.
  double max_abs = 0.0;
  auto probed = [&](double x) {
    const double v = f(x);
    max_abs = std::max(max_abs, std::abs(v));
    return v;
  };
  QuadratureConfig local = cfg;
  local.max_subdivisions = std::min(cfg.max_subdivisions, 200);
  const auto r = integrate(probed, a, b, local);
  return {r.value, r.error, max_abs, r.converged};
}

}  // namespace

TailIntegral decaying_tail_integral(const std::function<double(double)>& f,
                                    double a, double panel0,
                                    const QuadratureConfig& cfg) {
  TailIntegral out;
  double left = a;
  double width = panel0;
  int quiet = 0;
  int k = 0;
  constexpr int kBlock = 4;
  while (k < cfg.max_tail_panels) {
    const int count = std::min(kBlock, cfg.max_tail_panels - k);
    std::vector<PanelResult> results(count);
    std::vector<std::pair<double, double>> bounds(count);
    double lo = left;
    double w = width;
    for (int i = 0; i < count; ++i) {
      bounds[i] = {lo, lo + w};
      lo += w;
      w *= 2.0;
    }
    if (cfg.parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
      for (int i = 0; i < count; ++i) {
        results[i] = integrate_panel(f, bounds[i].first, bounds[i].second, cfg);
      }
    } else {
      for (int i = 0; i < count; ++i) {
        results[i] = integrate_panel(f, bounds[i].first, bounds[i].second, cfg);
      }
    }
    for (int i = 0; i < count; ++i) {
      if (!results[i].converged) {
        // The panel is beyond the resolution of the rule (typically an
        // oscillation slower-decaying than the budget). Truncate here and
        // report its error bound instead of accumulating an unreliable value.
        out.error += results[i].error;
        out.truncated = true;
        return out;
      }
      out.value += results[i].value;
      out.error += results[i].error;
      if (results[i].max_abs < cfg.tail_decay &&
          std::abs(results[i].value) < cfg.abs_tol) {
        if (++quiet >= 3) return out;
      } else {
        quiet = 0;
      }
    }
    left = bounds[count - 1].second;
    width = w;
    k += count;
  }
  out.truncated = true;
  return out;
}

double principal_value(const std::function<double(double)>& g,
                       const QuadratureConfig& cfg, double panel0) {
  const double eps = cfg.pv_epsilon;
  auto folded = [&](double u) { return g(u) + g(-u); };
  // Pieces [eps/4, eps/2], [eps/2, eps] plus the common tail from eps.
  const auto inner_a = integrate(folded, eps / 4.0, eps / 2.0, cfg);
  const auto inner_b = integrate(folded, eps / 2.0, eps, cfg);
  const auto tail = decaying_tail_integral(folded, eps, panel0, cfg);
  const double r_eps = tail.value;
  const double r_half = inner_b.value + r_eps;
  const double r_quarter = inner_a.value + r_half;
  // Richardson in eps: kills the O(eps) then O(eps^2) truncation terms.
  const double s1 = 2.0 * r_half - r_eps;
  const double s2 = 2.0 * r_quarter - r_half;
  return (4.0 * s2 - s1) / 3.0;
}

GilPelaezResult gil_pelaez_cdf_at_zero(
    const std::function<std::complex<double>(double)>& cf,
    const QuadratureConfig& cfg, double u_scale) {
  auto integrand = [&](double u) { return cf(u).imag() / u; };
  const auto tail = decaying_tail_integral(integrand, 0.0, u_scale, cfg);
  GilPelaezResult out;
  out.prob = 0.5 - tail.value / M_PI;
  out.error = tail.error / M_PI;
  out.truncated = tail.truncated;
  return out;
}

}  // namespace risnet::numerics
