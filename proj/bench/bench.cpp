// SPDX-License-Identifier: Apache-2.0
// Serial vs OpenMP timings for the two hot paths: the Monte Carlo SINR
// engine and the contour quadrature behind a coverage evaluation. The serial
// path is the reference; outputs must agree bit-for-bit (MC) or to machine
// precision (quadrature).
#include <chrono>
#include <cstdio>
#include <cstring>

#include "risnet/analytic.hpp"
#include "risnet/montecarlo.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace risnet;

namespace {

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  long n = 20000;
  if (argc > 1) n = std::atol(argv[1]);
  const auto p = analytic::SystemParams::baseline();

#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  std::printf("risnet benchmark (threads=%d, n=%ld)\n", threads, n);

  montecarlo::SimOptions opts;
  opts.n = n;
  opts.seed = 123;
  const double rmax = montecarlo::simulation_window(p);
  opts.r_max = rmax;

  double t0 = now();
  opts.parallel = false;
  const auto serial = montecarlo::run_batch(p, opts);
  const double t_serial = now() - t0;

  t0 = now();
  opts.parallel = true;
  const auto parallel = montecarlo::run_batch(p, opts);
  const double t_parallel = now() - t0;

  bool identical = serial.samples.size() == parallel.samples.size();
  for (std::size_t i = 0; identical && i < serial.samples.size(); ++i) {
    identical = std::memcmp(&serial.samples[i], &parallel.samples[i],
                            sizeof(montecarlo::SinrSample)) == 0;
  }
  std::printf("mc engine      serial %7.2fs (%7.0f samples/s)\n", t_serial,
              n / t_serial);
  std::printf("mc engine      openmp %7.2fs (%7.0f samples/s)  speedup %.2fx  "
              "bit-identical: %s\n",
              t_parallel, n / t_parallel, t_serial / t_parallel,
              identical ? "yes" : "NO");

  numerics::QuadratureConfig quad;
  quad.parallel = false;
  t0 = now();
  const double cov_serial = analytic::coverage_probability(1.0, p, quad);
  const double tq_serial = now() - t0;
  quad.parallel = true;
  t0 = now();
  const double cov_parallel = analytic::coverage_probability(1.0, p, quad);
  const double tq_parallel = now() - t0;
  std::printf("coverage quad  serial %7.2fs\n", tq_serial);
  std::printf("coverage quad  openmp %7.2fs  speedup %.2fx  |diff| %.2e\n",
              tq_parallel, tq_serial / tq_parallel,
              std::fabs(cov_serial - cov_parallel));
  return identical ? 0 : 1;
}
