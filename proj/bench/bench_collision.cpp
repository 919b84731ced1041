// Timing comparison of the OpenMP collision-functional driver against the
// serial reference, plus a bitwise equality check of their outputs.
#include <omp.h>

#include <chrono>
#include <cstdio>

#include "fracheat/sim.hpp"

int main(int argc, char** argv) {
  using clock = std::chrono::steady_clock;
  long n_paths = 2000;
  int m = 256;
  if (argc > 1) n_paths = std::atol(argv[1]);
  if (argc > 2) m = std::atoi(argv[2]);

  fracheat::model::ModelParams p;  // d=1, alpha=1/2, beta=2, H=3/4
  std::printf("collision functionals: %ld paths, grid m = %d, %d thread(s)\n", n_paths, m,
              omp_get_max_threads());

  auto t0 = clock::now();
  const auto serial = fracheat::sim::collision_mc_serial(p, 1.0, m, n_paths, 42);
  auto t1 = clock::now();
  const auto parallel = fracheat::sim::collision_mc(p, 1.0, m, n_paths, 42);
  auto t2 = clock::now();

  const double ms_serial = std::chrono::duration<double, std::milli>(t1 - t0).count();
  const double ms_parallel = std::chrono::duration<double, std::milli>(t2 - t1).count();
  bool identical = serial.L == parallel.L && serial.zeta == parallel.zeta;
  const auto est = fracheat::sim::mc_mean(parallel.L);

  std::printf("serial   : %10.1f ms\n", ms_serial);
  std::printf("openmp   : %10.1f ms  (speedup %.2fx)\n", ms_parallel, ms_serial / ms_parallel);
  std::printf("bitwise identical outputs: %s\n", identical ? "yes" : "NO");
  std::printf("E[L(1)] = %.6f +- %.6f\n", est.mean, est.std_err);
  return identical ? 0 : 1;
}
