#pragma once

namespace fracheat::special {

// Lanczos log-gamma for x > 0. Relative error below 1e-13 across the working
// range; anchored at Gamma(1/2), Gamma(1), Gamma(3/2) in the unit tests.
double lgamma_pos(double x);
double gamma_pos(double x);

// Surface area of the unit sphere in R^d: c_d = 2 pi^{d/2} / Gamma(d/2).
double surface_area(int d);

// Prefactor of the Parseval/energy identity for the Riesz kernel |x|^{-alpha}:
//   pi^{-d/2} 2^{-alpha} Gamma((d-alpha)/2) / Gamma(alpha/2).
// Equals (2pi)^{-d} times the distribution-level Fourier constant below.
double riesz_constant(double alpha, int d);

// Fourier transform constant of |x|^{-alpha} under F f(xi) = int e^{-i xi.x} f(x) dx:
//   2^{d-alpha} pi^{d/2} Gamma((d-alpha)/2) / Gamma(alpha/2).
double riesz_fourier_constant(double alpha, int d);

// E |Z|^{-alpha} for Z ~ N_d(0, 2tI):  (1/2) C_riesz c_d Gamma(alpha/2) t^{-alpha/2}.
double gaussian_negative_moment(double alpha, int d, double t);

// E |X_1|^{-alpha} for the beta-stable process with char. function e^{-t|xi|^beta}:
//   c_d C_riesz Gamma(alpha/beta) / beta.  Coincides with the Gaussian formula at
// beta = 2, t = 1. Requires 0 < alpha < min(d, 2 beta).
double stable_negative_moment(double alpha, double beta, int d);

struct SpectralConstants {
  double c_d;            // unit-sphere surface area
  double c_riesz;        // Parseval prefactor
  double kappa;          // distribution-level Fourier constant, kappa = (2pi)^d c_riesz
  double c_beta;         // max(1, 2^{beta/2-1}); see verify_elem_ineq chain bound
  double stable_negmom;  // E|X_1|^{-alpha}
  double bessel_riesz;   // int G_{d,beta}(x)|x|^{-alpha} dx, +inf when alpha >= beta
  bool bessel_riesz_finite;
};
SpectralConstants spectral_constants(double alpha, double beta, int d);

struct LogSeries {
  double log_sum = 0.0;
  long n_terms = 0;        // directly summed terms; 0 when the integral route ran
  bool via_integral = false;
  bool certified = false;  // tail (or integral correction) bounded below 1e-15 relative
};

// log sum_{n>=0} x^n / (n!)^h for h in (0,1], x > 0, overflow-safe in the log
// domain. Terms below the 1e5 cap are summed directly with a geometric tail
// certificate; when the term mode x^{1/h}-1 exceeds the cap the sum is evaluated
// through its integral representation around the mode (the sum-integral gap for
// this log-concave sequence is below 1e-15 relative once the mode width
// sqrt(mode/h) exceeds ~300, which the cap guarantees). The returned value is
// always >= h * x^{1/h} (the Mittag-Leffler-type lower bound), including in
// floating point.
LogSeries log_mittag_series_info(double h, double x);
double log_mittag_series(double h, double x);

}  // namespace fracheat::special
