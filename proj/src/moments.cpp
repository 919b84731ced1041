#include "fracheat/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracheat/special.hpp"

namespace fracheat::moments {

namespace {

using quad::Options;
using quad::QuadResult;
using quad::SingularAt;
using quad::SingularWeight;

QuadResult plus(const QuadResult& u, const QuadResult& v) {
  return {u.value + v.value, u.err_est + v.err_est, u.evals + v.evals,
          u.converged && v.converged};
}

// T(xi) = iint_{[0,t]^2} |r-s|^{2H-2} e^{-(2t-r-s) xi^beta} dr ds. Reflecting
// r -> t-r, s -> t-s moves the exponential peak to the origin corner, where the
// square can be shrunk to [0, tau]^2 with tau = min(t, 40/c): the dropped region
// carries weight below e^{-40} t^{2H}/alpha_H, which is added to the error.
QuadResult time_integral(double t, double hurst, double c, const Options& opt) {
  const double alpha_h = hurst * (2.0 * hurst - 1.0);
  const double full_mass = std::pow(t, 2.0 * hurst) / alpha_h;
  if (c <= 0.0) {
    return {full_mass, 0.0, 0, true};
  }
  const double tau = std::min(t, 40.0 / c);
  auto g = [&](double r, double s) { return std::exp(-(r + s) * c); };
  QuadResult res = quad::time_square_weighted(g, tau, hurst, opt);
  if (tau < t) res.err_est += std::exp(-40.0) * full_mass;
  return res;
}

}  // namespace

Alpha1Result alpha1_exact(const model::ModelParams& p, double t, const Options& opt) {
  model::validate(p);
  if (!(t > 0.0)) throw std::invalid_argument("alpha1_exact: requires t > 0");
  const model::ExponentSet e = model::exponents(p);
  const double prefactor =
      e.alpha_h * special::riesz_constant(p.alpha, p.d) * special::surface_area(p.d);

  const Options inner{std::max(opt.tol * 0.01, 1e-12), opt.panel_budget};
  auto f = [&](double xi) {
    return time_integral(t, p.hurst, std::pow(xi, p.beta), inner).value *
           std::pow(xi, p.alpha - 1.0);
  };

  Alpha1Result res;
  // head [0,1] with the spectral origin weight, then dyadic segments with a
  // growth test: increments scale like xi^{alpha - 2 H beta} per octave, so
  // non-decaying increments certify alpha >= 2 H beta
  std::optional<SingularWeight> w;
  if (p.alpha < 1.0) w = SingularWeight{p.alpha - 1.0, SingularAt::Origin};
  const Options seg{opt.tol * 0.25, opt.panel_budget};
  res.q = quad::integrate_1d(f, 0.0, 1.0, seg, w);
  double edge = 1.0;
  double prev = -1.0;
  int slow = 0;
  bool tail_done = false;
  for (int k = 0; k < 60; ++k) {
    const QuadResult inc = quad::integrate_1d(f, edge, 2.0 * edge, seg);
    res.q = plus(res.q, inc);
    edge *= 2.0;
    const double inc_abs = std::fabs(inc.value);
    if (prev >= 0.0) {
      const double ratio = inc_abs / std::max(prev, 1e-300);
      slow = ratio >= 0.95 ? slow + 1 : 0;
      if (slow >= 4) {
        res.divergent = true;
        res.q.converged = false;
        return res;
      }
      if (ratio < 0.9 && inc_abs < 0.25 * opt.tol * (1.0 - ratio)) {
        res.q.err_est += inc_abs * ratio / (1.0 - ratio);
        tail_done = true;
        break;
      }
    }
    prev = inc_abs;
  }
  res.q.value *= prefactor;
  res.q.err_est *= prefactor;
  res.q.converged = tail_done;
  return res;
}

double default_c_growth(const model::ModelParams& p, const Options& opt) {
  const Alpha1Result a1 = alpha1_exact(p, 1.0, opt);
  if (a1.divergent) throw std::runtime_error("default_c_growth: alpha_1(1) diverges");
  return 2.0 * std::max(a1.q.value, 1.0);
}

SeriesBound upper_bound_series(const model::ModelParams& p, double t, double c_growth) {
  model::validate(p);
  if (!(t > 0.0) || !(c_growth > 0.0))
    throw std::invalid_argument("upper_bound_series: requires t > 0 and c_growth > 0");
  SeriesBound sb;
  sb.params = p;
  sb.t = t;
  sb.c_growth = c_growth;
  const model::ExponentSet e = model::exponents(p);
  const double expo = 2.0 * p.hurst - e.m;  // t-exponent per order
  const double log_x = std::log(c_growth) + expo * std::log(t);
  const double log_b2 = 2.0 * std::log(p.b);

  for (int n = 0; n < 32; ++n)
    sb.log_terms.push_back(log_b2 + n * log_x -
                           e.h * special::lgamma_pos(static_cast<double>(n) + 1.0));

  if (e.h <= 0.0) {
    // alpha >= beta: terms (n!)^{-h} with h <= 0 grow; only the geometric
    // boundary h == 0 with x < 1 sums
    if (e.h == 0.0 && log_x < 0.0) {
      sb.log_sum = log_b2 - std::log1p(-std::exp(log_x));
      sb.certified_tail = true;
      return sb;
    }
    sb.divergent = true;
    sb.log_sum = std::numeric_limits<double>::infinity();
    return sb;
  }
  const special::LogSeries ls = special::log_mittag_series_info(e.h, std::exp(log_x));
  sb.log_sum = log_b2 + ls.log_sum;
  sb.n_used = ls.n_terms;
  sb.via_integral = ls.via_integral;
  sb.certified_tail = ls.certified;
  return sb;
}

Sandwich second_moment_sandwich(const model::ModelParams& p, double t,
                                std::span<const double> l_samples) {
  (void)t;
  model::validate(p);
  Sandwich s;
  s.exp_l = sim::exp_moment(l_samples, 1.0);
  s.reliable = sim::exp_moment_reliable(s.exp_l);
  if (!s.reliable) return s;
  s.lower = p.a * p.a * s.exp_l.mean;
  s.upper = p.b * p.b * s.exp_l.mean;
  return s;
}

double p_moment_log_bound(const model::ModelParams& p, double pnorm, double t, double c_growth) {
  model::validate(p);
  if (!(pnorm >= 2.0)) throw std::invalid_argument("p_moment_log_bound: requires p >= 2");
  if (!(t > 0.0) || !(c_growth > 0.0))
    throw std::invalid_argument("p_moment_log_bound: requires t > 0 and c_growth > 0");
  const model::ExponentSet e = model::exponents(p);
  if (e.h <= 0.0) return std::numeric_limits<double>::infinity();
  // sum_n y^n / (n!)^{h/2} with y = sqrt((p-1) C) t^{(2 H beta - alpha)/(2 beta)}
  const double log_y = 0.5 * (std::log(pnorm - 1.0) + std::log(c_growth)) +
                       0.5 * (2.0 * p.hurst - e.m) * std::log(t);
  const double ls = special::log_mittag_series(0.5 * e.h, std::exp(log_y));
  return pnorm * (std::log(p.b) + ls);
}

FitResult exponent_fit(std::span<const double> ts, std::span<const double> log_values,
                       double window_lo, double window_hi) {
  if (ts.size() != log_values.size())
    throw std::invalid_argument("exponent_fit: size mismatch");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    if (t < window_lo || t > window_hi) continue;
    if (i > 0 && ts[i] <= ts[i - 1])
      throw std::invalid_argument("exponent_fit: t values must be increasing");
    if (!(log_values[i] > 0.0))
      throw std::invalid_argument("exponent_fit: nonpositive value in window");
    xs.push_back(std::log(t));
    ys.push_back(std::log(log_values[i]));
  }
  if (xs.size() < 3) throw std::invalid_argument("exponent_fit: needs at least 3 points");
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.t_lo = window_lo;
  fit.t_hi = window_hi;
  return fit;
}

ZetaMomentReport zeta_moment_growth(const model::ModelParams& p, int n_max,
                                    std::span<const double> zeta_samples) {
  model::validate(p);
  if (n_max < 1 || n_max > 4)
    throw std::invalid_argument("zeta_moment_growth: n_max must lie in [1, 4]");
  if (zeta_samples.empty()) throw std::invalid_argument("zeta_moment_growth: empty sample");
  ZetaMomentReport rep;
  const double m = p.alpha / p.beta;
  std::vector<double> powers(zeta_samples.size());
  for (int n = 1; n <= n_max; ++n) {
    for (std::size_t i = 0; i < zeta_samples.size(); ++i)
      powers[i] = std::pow(zeta_samples[i], n);
    const sim::McEstimate est = sim::mc_mean(powers);
    ZetaMomentRow row;
    row.n = n;
    row.moment = est.mean;
    row.std_err = est.std_err;
    row.ratio = est.mean / std::exp(m * special::lgamma_pos(static_cast<double>(n) + 1.0));
    rep.rows.push_back(row);
    if (n == n_max) rep.heavy_tail_flag = est.max_term_share > 0.05;
  }
  rep.ratios_increasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    rep.ratios_increasing = rep.ratios_increasing && rep.rows[i].ratio > rep.rows[i - 1].ratio;
  if (n_max == 4)
    rep.log_convex = rep.rows[1].moment * rep.rows[3].moment >=
                     rep.rows[2].moment * rep.rows[2].moment;
  return rep;
}

}  // namespace fracheat::moments
