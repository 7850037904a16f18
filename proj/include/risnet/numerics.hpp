// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace risnet::numerics {

struct QuadratureConfig {
  double rel_tol = 1e-7;
  double abs_tol = 1e-10;
  int max_subdivisions = 2000;
  double pv_epsilon = 1e-4;
  // Tail handling for the characteristic-function integrals: panels of
  // geometrically growing width are appended until the integrand stays below
  // tail_decay (and contributes less than abs_tol) on three consecutive
  // panels, or max_tail_panels is hit.
  double tail_decay = 1e-10;
  int max_tail_panels = 48;
  // Evaluate tail panels in OpenMP blocks. Results are identical to the
  // serial path: panels are independent and summed in panel order.
  bool parallel = false;
};

struct TransformValue {
  std::complex<double> value{1.0, 0.0};
  bool in_domain = true;
};

template <class T>
struct Integral {
  T value{};
  double error = 0.0;
  bool converged = true;
};

// log(1+z) and exp(z)-1 for complex z without cancellation near z=0.
inline std::complex<double> log1p(std::complex<double> z) {
  if (std::abs(z) < 1e-3) {
    // z - z^2/2 + z^3/3 - z^4/4 + z^5/5, error ~ |z|^6
    return z * (1.0 - z * (0.5 - z * (1.0 / 3.0 - z * (0.25 - z * 0.2))));
  }
  return std::log(1.0 + z);
}

inline std::complex<double> expm1(std::complex<double> z) {
  if (std::abs(z) < 1e-3) {
    return z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0)));
  }
  return std::exp(z) - 1.0;
}

namespace detail {

// Gauss-Kronrod 7/15 nodes on [-1,1] (QUADPACK values).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kGk15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kG7Weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  double max_abs;  // max |f| seen at the nodes, for tail detection
};

template <class F, class T = std::decay_t<decltype(std::declval<F&>()(0.0))>>
Panel<T> gk15(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T fx[15];
  double xs[15];
  xs[7] = mid;
  for (int i = 0; i < 7; ++i) {
    xs[i] = mid - half * kGk15Nodes[i];
    xs[14 - i] = mid + half * kGk15Nodes[i];
  }
  double max_abs = 0.0;
  for (int i = 0; i < 15; ++i) {
    fx[i] = f(xs[i]);
    max_abs = std::max(max_abs, std::abs(fx[i]));
  }
  T k15 = kGk15Weights[7] * fx[7];
  T g7 = kG7Weights[3] * fx[7];
  for (int i = 0; i < 7; ++i) {
    k15 += kGk15Weights[i] * (fx[i] + fx[14 - i]);
    if (i % 2 == 1) g7 += kG7Weights[i / 2] * (fx[i] + fx[14 - i]);
  }
  k15 *= half;
  g7 *= half;
  const double diff = std::abs(k15 - g7);
  // QUADPACK error heuristic: (200 |K15-G7|)^1.5, capped by |K15-G7|.
  double err = diff;
  if (diff > 0.0) err = std::min(diff, std::pow(200.0 * diff, 1.5));
  return {a, b, k15, err, max_abs};
}

}  // namespace detail

// Adaptive GK7/15 on a finite interval; real or complex integrand.
template <class F, class T = std::decay_t<decltype(std::declval<F&>()(0.0))>>
Integral<T> integrate(F&& f, double a, double b, const QuadratureConfig& cfg) {
  using detail::Panel;
  if (a == b) return {T{}, 0.0, true};
  std::vector<Panel<T>> panels;
  panels.push_back(detail::gk15(f, a, b));
  auto tolerance = [&](double total_mag) {
    return std::max(cfg.abs_tol, cfg.rel_tol * total_mag);
  };
  for (int iter = 0; iter < cfg.max_subdivisions; ++iter) {
    T total{};
    double err_sum = 0.0;
    for (const auto& p : panels) {
      total += p.value;
      err_sum += p.error;
    }
    if (err_sum <= tolerance(std::abs(total))) break;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].error > panels[worst].error) worst = i;
    }
    const double pa = panels[worst].a;
    const double pb = panels[worst].b;
    const double pm = 0.5 * (pa + pb);
    if (pm <= pa || pm >= pb) break;  // interval exhausted in double precision
    panels[worst] = detail::gk15(f, pa, pm);
    panels.push_back(detail::gk15(f, pm, pb));
  }
  std::sort(panels.begin(), panels.end(),
            [](const auto& x, const auto& y) { return x.a < y.a; });
  T total{};
  double err_sum = 0.0;
  for (const auto& p : panels) {
    total += p.value;
    err_sum += p.error;
  }
  return {total, err_sum, err_sum <= tolerance(std::abs(total))};
}

// Semi-infinite integral via t = a + scale*u/(1-u); GK nodes never touch u=1.
// scale sets where the map spends its resolution (~ the integrand's decay
// length past a).
template <class F, class T = std::decay_t<decltype(std::declval<F&>()(0.0))>>
Integral<T> integrate_to_inf(F&& f, double a, const QuadratureConfig& cfg,
                             double scale = 1.0) {
  auto mapped = [&](double u) {
    const double w = 1.0 - u;
    return f(a + scale * u / w) * (scale / (w * w));
  };
  return integrate(mapped, 0.0, 1.0, cfg);
}

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

struct TailIntegral {
  double value = 0.0;
  double error = 0.0;
  bool truncated = false;  // stopped by the panel cap, not by tail decay
};

// Integral over [a, inf) of a decaying (possibly oscillating) integrand,
// marched over panels of geometrically growing width. This is the workhorse
// behind the Gil-Pelaez and contour integrals, where the integrand dies off
// like the characteristic function.
TailIntegral decaying_tail_integral(const std::function<double(double)>& f,
                                    double a, double panel0,
                                    const QuadratureConfig& cfg);

// Cauchy principal value over the whole real line of g with (at worst) a
// simple pole at 0: fold to the half line, integrate from epsilon, and
// Richardson-extrapolate epsilon -> 0 with steps {eps, eps/2, eps/4}.
double principal_value(const std::function<double(double)>& g,
                       const QuadratureConfig& cfg, double panel0 = 1.0);

struct GilPelaezResult {
  double prob = 0.0;
  double error = 0.0;
  bool truncated = false;
};

// P[X <= 0] = 1/2 - (1/pi) Int_0^inf Im[cf(u)]/u du for cf(u) = E[e^{iuX}].
// u_scale sets the width of the first tail panel (the natural frequency
// scale of the distribution, ~1/std).
GilPelaezResult gil_pelaez_cdf_at_zero(
    const std::function<std::complex<double>(double)>& cf,
    const QuadratureConfig& cfg, double u_scale = 1.0);

}  // namespace risnet::numerics
