// SPDX-License-Identifier: Apache-2.0
#include "risnet/geometry.hpp"

#include <stdexcept>

namespace risnet::geometry {

PathlossParams PathlossParams::from_carrier(double f_c_hz) {
  PathlossParams p;
  p.f_c = f_c_hz;
  const double amplitude = kSpeedOfLight / (4.0 * M_PI * f_c_hz);
  p.beta = amplitude * amplitude;
  return p;
}

namespace {

// (d+1)^{-alpha} with fast paths for the exponents the model actually uses.
double decay(double d, double alpha) {
  const double b = d + 1.0;
  if (alpha == 4.0) {
    const double b2 = b * b;
    return 1.0 / (b2 * b2);
  }
  if (alpha == 3.0) return 1.0 / (b * b * b);
  if (alpha == 3.5) {
    const double b2 = b * b;
    return 1.0 / (b2 * b * std::sqrt(b));
  }
  return std::pow(b, -alpha);
}

}  // namespace

double pathloss(double d, double alpha, double beta) {
  if (d < 0.0) throw std::domain_error("pathloss: negative distance");
  return beta * decay(d, alpha);
}

double two_leg_path_gain(double x, double y, double psi, double alpha1,
                         double alpha2, double beta) {
  if (x < 0.0 || y < 0.0) {
    throw std::domain_error("two_leg_path_gain: negative distance");
  }
  const double second_sq = x * x + y * y - 2.0 * x * y * std::cos(psi);
  const double second = second_sq > 0.0 ? std::sqrt(second_sq) : 0.0;
  return beta * decay(y, alpha1) * beta * decay(second, alpha2);
}

double ue_centric_path_gain(const Point2D& bs, const Point2D& ris,
                            const Point2D& ue, double alpha1, double alpha2,
                            double beta) {
  return beta * decay(distance(bs, ris), alpha1) * beta *
         decay(distance(ris, ue), alpha2);
}

std::vector<Point2D> sample_bs_field(double lambda_bs, double r, double r_max,
                                     Rng& rng) {
  if (lambda_bs < 0.0) throw std::domain_error("sample_bs_field: lambda < 0");
  if (r >= r_max) throw std::domain_error("sample_bs_field: r >= r_max");
  const double area = M_PI * (r_max * r_max - r * r);
  const std::uint64_t n = rng.poisson(lambda_bs * area);
  std::vector<Point2D> points;
  points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double rad =
        std::sqrt(r * r + rng.uniform() * (r_max * r_max - r * r));
    const double ang = rng.uniform(0.0, 2.0 * M_PI);
    points.push_back({rad * std::cos(ang), rad * std::sin(ang)});
  }
  return points;
}

std::vector<Point2D> sample_annulus_cluster(const AnnulusSupport& support,
                                            double lambda_ris, Rng& rng) {
  if (!(support.r_in > 0.0) || !(support.r_in < support.r_out)) {
    throw std::domain_error("sample_annulus_cluster: need 0 < r_in < r_out");
  }
  const double rin2 = support.r_in * support.r_in;
  const double rout2 = support.r_out * support.r_out;
  const std::uint64_t n = rng.poisson(lambda_ris * M_PI * (rout2 - rin2));
  std::vector<Point2D> points;
  points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double rad = std::sqrt(rin2 + rng.uniform() * (rout2 - rin2));
    const double ang = rng.uniform(0.0, 2.0 * M_PI);
    points.push_back({support.center.x + rad * std::cos(ang),
                      support.center.y + rad * std::sin(ang)});
  }
  return points;
}

std::vector<Point2D> sample_wedge_bpp(int n_ris, const WedgeSupport& support,
                                      Rng& rng) {
  if (n_ris < 0) throw std::domain_error("sample_wedge_bpp: n_ris < 0");
  const double rin2 = support.r_in * support.r_in;
  const double rout2 = support.r_out * support.r_out;
  std::vector<Point2D> points;
  points.reserve(n_ris);
  for (int i = 0; i < n_ris; ++i) {
    const double rad = std::sqrt(rin2 + rng.uniform() * (rout2 - rin2));
    const double ang = support.orientation +
                       rng.uniform(-support.half_angle, support.half_angle);
    points.push_back({support.center.x + rad * std::cos(ang),
                      support.center.y + rad * std::sin(ang)});
  }
  return points;
}

}  // namespace risnet::geometry
