#include "fracheat/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "fracheat/special.hpp"

namespace fracheat::quad {

namespace {

// G7/K15 nodes on [0, 1] of the half-interval offset; standard Kronrod pair.
constexpr double kXgk[8] = {
    0.00000000000000000, 0.20778495500789847, 0.40584515137739717, 0.58608723546769113,
    0.74153118559939444, 0.86486442335976907, 0.94910791234275852, 0.99145537112081264,
};
constexpr double kWk[8] = {
    0.20948214108472783, 0.20443294007529889, 0.19035057806478541, 0.16900472663926790,
    0.14065325971552592, 0.10479001032225018, 0.06309209262997855, 0.02293532201052922,
};
constexpr double kWg[8] = {
    0.41795918367346939, 0.0, 0.38183005050511894, 0.0,
    0.27970539148927667, 0.0, 0.12948496616886969, 0.0,
};

struct Panel {
  double a, b;
  double value, err;
};

struct PanelCmp {
  bool operator()(const Panel& p, const Panel& q) const { return p.err < q.err; }
};

[[noreturn]] void throw_nan(double x) {
  std::ostringstream os;
  os << "integrand returned NaN at x = " << x;
  throw std::runtime_error(os.str());
}

// QUADPACK-style 15-point Kronrod evaluation with the scaled error estimate.
Panel gk15(const Fn1& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv[15];
  double k15 = 0.0, g7 = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = half * kXgk[i];
    const double f1 = f(mid + dx);
    if (std::isnan(f1)) throw_nan(mid + dx);
    if (i == 0) {
      fv[0] = f1;
      k15 += kWk[0] * f1;
      g7 += kWg[0] * f1;
      continue;
    }
    const double f2 = f(mid - dx);
    if (std::isnan(f2)) throw_nan(mid - dx);
    fv[2 * i - 1] = f1;
    fv[2 * i] = f2;
    k15 += kWk[i] * (f1 + f2);
    g7 += kWg[i] * (f1 + f2);
  }
  const double mean = 0.5 * k15;
  double resasc = kWk[0] * std::fabs(fv[0] - mean);
  for (int i = 1; i < 8; ++i)
    resasc += kWk[i] * (std::fabs(fv[2 * i - 1] - mean) + std::fabs(fv[2 * i] - mean));
  resasc *= half;
  double err = std::fabs(k15 - g7) * half;
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return {a, b, k15 * half, err};
}

QuadResult adapt(const Fn1& f, double a, double b, double tol, long budget) {
  QuadResult res;
  if (a == b) {
    res.converged = true;
    res.evals = 0;
    return res;
  }
  std::priority_queue<Panel, std::vector<Panel>, PanelCmp> heap;
  Panel first = gk15(f, a, b);
  res.evals = 15;
  double total = first.value, total_err = first.err;
  heap.push(first);
  const double min_width = 16.0 * 2.2e-16 * (std::fabs(a) + std::fabs(b) + 1.0);
  while (total_err > tol && res.evals + 30 <= budget) {
    Panel worst = heap.top();
    if (worst.b - worst.a < min_width) break;  // cannot be refined further
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    res.evals += 30;
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
  }
  res.value = total;
  res.err_est = total_err;
  res.converged = total_err <= tol;
  return res;
}

QuadResult combine(const QuadResult& u, const QuadResult& v) {
  QuadResult r;
  r.value = u.value + v.value;
  r.err_est = u.err_est + v.err_est;
  r.evals = u.evals + v.evals;
  r.converged = u.converged && v.converged;
  return r;
}

}  // namespace

QuadResult integrate_1d(const Fn1& f, double a, double b, const Options& opt,
                        std::optional<SingularWeight> weight) {
  if (!(b >= a)) throw std::invalid_argument("integrate_1d: requires b >= a");
  if (!weight || weight->exponent >= 0.0) return adapt(f, a, b, opt.tol, opt.panel_budget);
  const double g = weight->exponent;
  if (!(g > -1.0)) throw std::invalid_argument("integrate_1d: weight exponent must exceed -1");

  // Singular panel [a, a+w0]: integrate in s = (x-a)^{1+g}, which absorbs the
  // weight factor exactly, leaving the smooth part f(x) (x-a)^{-g}.
  const double w0 = std::min(1.0, 0.5 * (b - a));
  const double p = 1.0 + g;
  auto transformed = [&](double s) {
    const double xr = std::pow(s, 1.0 / p);  // offset from the singular endpoint
    return f(a + xr) * std::pow(xr, -g) / p;
  };
  QuadResult sing = adapt(transformed, 0.0, std::pow(w0, p), 0.5 * opt.tol, opt.panel_budget / 2);
  QuadResult reg = adapt(f, a + w0, b, 0.5 * opt.tol, opt.panel_budget / 2);
  return combine(sing, reg);
}

QuadResult integrate_semi_infinite(const Fn1& f, const Options& opt,
                                   std::optional<SingularWeight> origin_weight) {
  auto mapped = [&](double u) {
    const double om = 1.0 - u;
    if (om <= 0.0) return 0.0;
    const double fx = f(u / om);
    if (fx == 0.0) return 0.0;  // keeps the far end from producing 0 * inf
    return fx / (om * om);
  };
  // near u = 0, x ~ u, so an origin weight keeps its exponent under the map
  return integrate_1d(mapped, 0.0, 1.0, opt, origin_weight);
}

QuadResult radial_spectral(const Fn1& phi, double alpha, int d, const Options& opt) {
  if (!(alpha > 0.0)) throw std::invalid_argument("radial_spectral: requires alpha > 0");
  const double cd = special::surface_area(d);
  auto f = [&](double r) { return phi(r) * std::pow(r, alpha - 1.0); };
  std::optional<SingularWeight> w;
  if (alpha < 1.0) w = SingularWeight{alpha - 1.0, SingularAt::Origin};
  QuadResult res = integrate_semi_infinite(f, opt, w);
  res.value *= cd;
  res.err_est *= cd;
  return res;
}

std::vector<double> hurst_cell_weights(int m, double t, double hurst) {
  if (m < 1 || !(t > 0.0) || !(hurst > 0.5 && hurst < 1.0))
    throw std::invalid_argument("hurst_cell_weights: bad arguments");
  const long double tw = 2.0L * hurst;
  const long double norm = 1.0L / (tw * (tw - 1.0L));
  const long double dt = static_cast<long double>(t) / m;
  const long double scale = std::pow(dt, tw) * norm;
  // F(u) = |u|^{2H} / (2H(2H-1)) has F'' = |u|^{2H-2}; the cell integral is the
  // second difference of F at the cell corners.
  std::vector<long double> F(static_cast<size_t>(m) + 2);
  for (int k = 0; k <= m + 1; ++k) F[k] = std::pow(static_cast<long double>(k), tw) * scale;
  std::vector<double> w(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    const long double fm1 = (k == 0) ? F[1] : F[k - 1];
    w[static_cast<size_t>(k)] = static_cast<double>(F[k + 1] - 2.0L * F[k] + fm1);
  }
  return w;
}

QuadResult time_square_weighted(const Fn2& g, double t, double hurst, const Options& opt) {
  if (!(t > 0.0)) throw std::invalid_argument("time_square_weighted: requires t > 0");
  if (!(hurst > 0.5 && hurst < 1.0))
    throw std::invalid_argument("time_square_weighted: requires hurst in (1/2,1)");
  QuadResult res;
  const long eval_budget = 16 * opt.panel_budget;
  double prev = 0.0;
  bool have_prev = false;
  for (int m = 8;; m *= 2) {
    if (res.evals + static_cast<long>(m) * m > eval_budget) break;
    const std::vector<double> w = hurst_cell_weights(m, t, hurst);
    const double dt = t / m;
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      const double r = (i + 0.5) * dt;
      double row = 0.0;
      for (int j = 0; j < m; ++j) {
        const double v = g(r, (j + 0.5) * dt);
        if (std::isnan(v)) throw_nan(r);
        row += w[static_cast<size_t>(std::abs(i - j))] * v;
      }
      sum += row;
    }
    res.evals += static_cast<long>(m) * m;
    if (have_prev) {
      res.err_est = std::fabs(sum - prev);
      // centroid product rule is second order; one Richardson step
      res.value = sum + (sum - prev) / 3.0;
      if (res.err_est <= opt.tol) {
        res.converged = true;
        return res;
      }
    } else {
      res.value = sum;
    }
    prev = sum;
    have_prev = true;
  }
  res.converged = false;
  return res;
}

}  // namespace fracheat::quad
