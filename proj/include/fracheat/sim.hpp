#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fracheat/model.hpp"
#include "fracheat/rng.hpp"

namespace fracheat::sim {

// Two independent discretized beta-stable trajectories on the uniform grid
// 0 = tau_0 < ... < tau_m = t, started at the origin. Positions are stored
// node-major: x[k*d + c] is coordinate c at node k.
struct PathPair {
  double t = 0.0;
  int m = 0;
  int d = 1;
  std::vector<double> x1, x2;
};

// One draw from the positive a-stable law with E e^{-lambda S} = exp(-lambda^a),
// a in (0,1), via Kanter's representation (uniform angle + unit exponential).
double sample_positive_stable(double a, rng::Stream& rng);

PathPair sample_path_pair(const model::ModelParams& p, double t, int m, rng::Stream& rng);

// Keep every second node (m must be even); used by the grid-refinement checks.
PathPair coarsen(const PathPair& pair);

struct Functionals {
  double L = 0.0;     // alpha_H iint |r-s|^{2H-2} |X1_r - X2_s|^{-alpha}
  double zeta = 0.0;  // iint |X1_r - X2_s|^{-alpha}
  long coincidences = 0;
};

// Product rule on the path grid: exact cell weights for the temporal factor,
// centroid positions by linear interpolation between nodes. cell_weights must
// come from quad::hurst_cell_weights(pair.m, pair.t, hurst).
Functionals collision_functionals(const PathPair& pair, double alpha, double hurst,
                                  std::span<const double> cell_weights);

struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  long n_samples = 0;
  double max_term_share = 0.0;  // largest single contribution to the sum
};

double pairwise_sum(std::span<const double> v);
McEstimate mc_mean(std::span<const double> samples);

// E e^{theta s} over the samples, log-sum-exp internally. Estimates with
// max_term_share > 0.05 are in the heavy-tail regime where plain Monte Carlo
// is not trustworthy; callers must check exp_moment_reliable.
McEstimate exp_moment(std::span<const double> samples, double theta);
bool exp_moment_reliable(const McEstimate& e);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct CollisionSamples {
  std::vector<double> L, zeta;
  long coincidence_events = 0;
  long total_cells = 0;
};

// Samples n_paths pairs and their collision functionals. Path i always consumes
// stream (seed, stream_offset + i) and results merge by fixed-order pairwise
// summation, so output is bit-identical for any thread count. The _serial
// variant is the reference implementation the OpenMP driver is tested against.
CollisionSamples collision_mc(const model::ModelParams& p, double t, int m, long n_paths,
                              std::uint64_t seed, std::uint64_t stream_offset = 0);
CollisionSamples collision_mc_serial(const model::ModelParams& p, double t, int m, long n_paths,
                                     std::uint64_t seed, std::uint64_t stream_offset = 0);

}  // namespace fracheat::sim
