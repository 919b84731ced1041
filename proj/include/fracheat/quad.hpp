#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace fracheat::quad {

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;  // absolute
  long evals = 0;
  bool converged = false;
};

enum class SingularAt { LeftEndpoint, Origin, Diagonal };

// Declares an algebraic singularity |x - c|^exponent of the integrand, with
// exponent in (-1, 0) so the integral exists. Panels adjacent to the declared
// point integrate the weight factor exactly (change of variable s = (x-c)^{1+g});
// the remaining smooth factor is handled by the nested rule.
struct SingularWeight {
  double exponent;
  SingularAt location = SingularAt::LeftEndpoint;
};

struct Options {
  double tol = 1e-9;        // absolute error target
  long panel_budget = 1 << 16;  // integrand evaluations per call
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

// Adaptive G7/K15 on [a, b]. The weight, when present, names the integrand's own
// endpoint behaviour (f is passed whole, singular factor included).
QuadResult integrate_1d(const Fn1& f, double a, double b, const Options& opt = {},
                        std::optional<SingularWeight> weight = std::nullopt);

// int_0^inf f, through the map x = u/(1-u). A declared origin weight carries over
// with the same exponent.
QuadResult integrate_semi_infinite(const Fn1& f, const Options& opt = {},
                                   std::optional<SingularWeight> origin_weight = std::nullopt);

// c_d * int_0^inf phi(r) r^{alpha-1} dr, the radial reduction of
// int_{R^d} phi(|xi|) |xi|^{-d+alpha} dxi.
QuadResult radial_spectral(const Fn1& phi, double alpha, int d, const Options& opt = {});

// iint_{[0,t]^2} |r-s|^{2H-2} g(r,s) dr ds by product integration: the weight is
// integrated in closed form over every grid cell, g is sampled at cell centroids,
// and the grid is doubled (Richardson) until |I_2M - I_M| <= tol.
QuadResult time_square_weighted(const Fn2& g, double t, double hurst, const Options& opt = {});

// Exact per-cell integrals of |r-s|^{2H-2} on the uniform m x m grid over [0,t]^2,
// indexed by |i-j|. Shared with the Monte-Carlo collision functionals so the
// pathwise bound L >= beta_H t^{2H-2} zeta holds cell by cell.
std::vector<double> hurst_cell_weights(int m, double t, double hurst);

}  // namespace fracheat::quad
