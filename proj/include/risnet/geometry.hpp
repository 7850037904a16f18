// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "risnet/rng.hpp"

namespace risnet::geometry {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point2D& a, const Point2D& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Path loss behaves like beta * (d+1)^{-alpha}; the +1 keeps the gain finite
// at d=0. beta is a plain scalar; from_carrier derives the free-space power
// gain at 1 m, (c / 4 pi f_c)^2.
struct PathlossParams {
  double alpha_los = 3.0;
  double alpha_nlos = 4.0;
  double alpha_ir = 4.0;  // RIS->UE leg of cross-cell reflections
  double beta = 1.0;
  double f_c = 2.4e9;

  static PathlossParams from_carrier(double f_c_hz);
};

inline constexpr double kSpeedOfLight = 299792458.0;

// beta * (d+1)^{-alpha}; throws std::domain_error for d < 0.
double pathloss(double d, double alpha, double beta);

// Two-leg gain g(y; alpha1) * g(sqrt(x^2+y^2-2xy cos psi); alpha2) with x the
// BS-UE distance, y the BS-RIS distance and psi the angle at the BS.
double two_leg_path_gain(double x, double y, double psi, double alpha1,
                         double alpha2, double beta);

// Same product written from explicit node positions: g(|bs-ris|) g(|ris-ue|).
double ue_centric_path_gain(const Point2D& bs, const Point2D& ris,
                            const Point2D& ue, double alpha1, double alpha2,
                            double beta);

struct AnnulusSupport {
  Point2D center{};
  double r_in = 0.0;
  double r_out = 0.0;
};

struct WedgeSupport {
  Point2D center{};
  double r_in = 0.0;
  double r_out = 0.0;
  double half_angle = 0.0;   // wedge spans [-half_angle, half_angle]
  double orientation = 0.0;  // direction of the wedge axis
};

// One conditioned layout: typical UE at the origin, serving BS at distance r
// on the positive x-axis, interferers on the annulus (r, r_max].
struct NetworkSample {
  Point2D serving{};
  std::vector<Point2D> serving_cluster;
  std::vector<Point2D> interferers;
  std::vector<std::vector<Point2D>> interferer_clusters;
};

// Poisson field of interferers on the annulus (r, r_max] around the origin.
std::vector<Point2D> sample_bs_field(double lambda_bs, double r, double r_max,
                                     Rng& rng);

// Daughter points of one cluster: Poisson count, area-uniform on the annulus.
std::vector<Point2D> sample_annulus_cluster(const AnnulusSupport& support,
                                            double lambda_ris, Rng& rng);

// Exactly n points, area-uniform on the wedge sector.
std::vector<Point2D> sample_wedge_bpp(int n_ris, const WedgeSupport& support,
                                      Rng& rng);

}  // namespace risnet::geometry
