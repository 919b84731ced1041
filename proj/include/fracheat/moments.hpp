#pragma once

#include <span>
#include <vector>

#include "fracheat/model.hpp"
#include "fracheat/quad.hpp"
#include "fracheat/sim.hpp"

namespace fracheat::moments {

struct Alpha1Result {
  quad::QuadResult q;
  bool divergent = false;  // alpha >= 2 H beta
};

// First chaos coefficient for constant initial data (w == 1):
//   alpha_1(t) = alpha_H C_riesz c_d int_0^inf T(xi) xi^{alpha-1} dxi,
//   T(xi) = iint_{[0,t]^2} |r-s|^{2H-2} e^{-(2t-r-s) xi^beta} dr ds,
// the inner integral by the product rule of quad::time_square_weighted.
// Equals E[L(t)] (the Monte-Carlo route) when a = b = 1.
Alpha1Result alpha1_exact(const model::ModelParams& p, double t, const quad::Options& opt = {});

// Growth constant for the chaos upper-bound series: 2 max(alpha_1(1), 1).
double default_c_growth(const model::ModelParams& p, const quad::Options& opt = {});

struct SeriesBound {
  model::ModelParams params;
  double t = 0.0;
  double c_growth = 0.0;
  std::vector<double> log_terms;  // first few log(coefficient_n / n!), for reporting
  double log_sum = 0.0;           // log of the second-moment upper bound
  long n_used = 0;
  bool certified_tail = false;
  bool via_integral = false;
  bool divergent = false;  // alpha >= beta (or geometric boundary at alpha == beta)
};

// log of  b^2 sum_n C^n t^{n(2H - alpha/beta)} / (n!)^{1 - alpha/beta}.
SeriesBound upper_bound_series(const model::ModelParams& p, double t, double c_growth);

struct Sandwich {
  double lower = 0.0, upper = 0.0;  // a^2 E e^{L(t)}, b^2 E e^{L(t)}
  sim::McEstimate exp_l;
  bool reliable = false;
};
// Refuses (reliable = false, bounds zeroed) when the exponential-moment
// estimate is in the heavy-tail regime.
Sandwich second_moment_sandwich(const model::ModelParams& p, double t,
                                std::span<const double> l_samples);

// p-th moment log bound via hypercontractivity:
//   p * [ log b + log sum_n ((p-1) C)^{n/2} t^{n(2H beta - alpha)/(2 beta)} / (n!)^{h/2} ].
double p_moment_log_bound(const model::ModelParams& p, double pnorm, double t, double c_growth);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double t_lo = 0.0, t_hi = 0.0;
};
// Least-squares slope of log(log_value) against log(t) over the window.
FitResult exponent_fit(std::span<const double> ts, std::span<const double> log_values,
                       double window_lo, double window_hi);

struct ZetaMomentRow {
  int n = 0;
  double moment = 0.0;    // E[zeta(1)^n]
  double std_err = 0.0;
  double ratio = 0.0;     // E[zeta^n] / (n!)^{alpha/beta}
};
struct ZetaMomentReport {
  std::vector<ZetaMomentRow> rows;
  bool ratios_increasing = false;   // super-geometric growth direction
  bool log_convex = false;          // E[z^2] E[z^4] >= E[z^3]^2 (raw moments)
  bool heavy_tail_flag = false;     // top moment dominated by a single sample
};
ZetaMomentReport zeta_moment_growth(const model::ModelParams& p, int n_max,
                                    std::span<const double> zeta_samples);

}  // namespace fracheat::moments
