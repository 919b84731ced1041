#include "fracheat/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracheat/special.hpp"

namespace fracheat::kernels {

namespace {

constexpr double kPi = 3.14159265358979323846;

using quad::Fn1;
using quad::Options;
using quad::QuadResult;
using quad::SingularAt;
using quad::SingularWeight;

QuadResult plus(const QuadResult& u, const QuadResult& v) {
  return {u.value + v.value, u.err_est + v.err_est, u.evals + v.evals,
          u.converged && v.converged};
}

struct ScanResult {
  QuadResult q;
  bool divergent = false;
};

// Dyadic segments [lo 2^k, lo 2^{k+1}]. Non-decaying increments flag divergence;
// geometric decay certifies the truncated tail.
ScanResult scan_dyadic(const Fn1& f, double lo, const Options& opt) {
  ScanResult res;
  Options seg{opt.tol * 0.125, std::max<long>(opt.panel_budget / 8, 480)};
  double prev_inc = -1.0;
  int slow = 0;
  double edge = lo;
  for (int k = 0; k < 400; ++k) {
    const QuadResult inc = quad::integrate_1d(f, edge, 2.0 * edge, seg);
    res.q = plus(res.q, inc);
    edge *= 2.0;
    const double inc_abs = std::fabs(inc.value);
    if (prev_inc >= 0.0) {
      const double ratio = inc_abs / std::max(prev_inc, 1e-300);
      slow = ratio >= 0.95 ? slow + 1 : 0;
      if (slow >= 4) {
        res.divergent = true;
        res.q.converged = false;
        return res;
      }
      if (ratio < 0.9 && inc_abs < 0.25 * opt.tol * (1.0 - ratio)) {
        res.q.err_est += inc_abs * ratio / (1.0 - ratio);
        res.q.converged = res.q.err_est <= opt.tol;
        return res;
      }
    }
    prev_inc = inc_abs;
  }
  res.q.converged = false;
  return res;
}

// [0, 1] with the declared origin weight, then the dyadic tail.
ScanResult scan_semi_infinite(const Fn1& f, std::optional<SingularWeight> origin_weight,
                              const Options& opt) {
  QuadResult head =
      quad::integrate_1d(f, 0.0, 1.0, Options{opt.tol * 0.5, opt.panel_budget / 2}, origin_weight);
  ScanResult tail = scan_dyadic(f, 1.0, Options{opt.tol * 0.5, opt.panel_budget / 2});
  tail.q = plus(tail.q, head);
  return tail;
}

// Shrinking dyadic probe of int_0^1 f near the origin; true when the increments
// refuse to decay (integrand not integrable at 0). slow_ratio sets the detector
// resolution: increments of x^{-1+e} decay by 2^{-e} per octave.
bool diverges_at_origin(const Fn1& f, const Options& opt, double slow_ratio = 0.95,
                        int slow_count = 6) {
  Options seg{opt.tol * 0.25, std::max<long>(opt.panel_budget / 16, 480)};
  double hi = 1.0;
  double prev = -1.0;
  int slow = 0;
  for (int k = 0; k < 200; ++k) {
    const QuadResult inc = quad::integrate_1d(f, 0.5 * hi, hi, seg);
    hi *= 0.5;
    const double inc_abs = std::fabs(inc.value);
    if (prev >= 0.0) {
      const double ratio = inc_abs / std::max(prev, 1e-300);
      slow = ratio >= slow_ratio ? slow + 1 : 0;
      if (slow >= slow_count) return true;
      if (ratio < 0.9 && inc_abs < 1e-3 * opt.tol) return false;
    }
    prev = inc_abs;
  }
  return false;
}

// int_0^inf (1+r^2)^{-beta/2} r^{alpha-1} dr. The tail is inverted through
// s = 1/r into int_0^1 (1+s^2)^{-beta/2} s^{beta-alpha-1} ds, whose endpoint
// exponent beta-alpha-1 crosses -1 exactly at the alpha = beta boundary; the
// origin probe on the inverted integrand is the divergence detector.
ScanResult power_spectral_radial(double alpha, double beta, const Options& opt) {
  auto head_f = [=](double r) {
    return std::pow(1.0 + r * r, -0.5 * beta) * std::pow(r, alpha - 1.0);
  };
  auto tail_f = [=](double s) {
    return std::pow(1.0 + s * s, -0.5 * beta) * std::pow(s, beta - alpha - 1.0);
  };
  ScanResult res;
  // increments of the inverted tail decay by 2^{-(beta-alpha)} per octave
  if (diverges_at_origin(tail_f, opt, 0.999, 8)) {
    res.divergent = true;
    return res;
  }
  std::optional<SingularWeight> hw, tw;
  if (alpha < 1.0) hw = SingularWeight{alpha - 1.0, SingularAt::Origin};
  if (beta - alpha < 1.0) tw = SingularWeight{beta - alpha - 1.0, SingularAt::Origin};
  const Options half{opt.tol * 0.5, opt.panel_budget / 2};
  const QuadResult head = quad::integrate_1d(head_f, 0.0, 1.0, half, hw);
  const QuadResult tail = quad::integrate_1d(tail_f, 0.0, 1.0, half, tw);
  res.q = plus(head, tail);
  return res;
}

// int_0^inf cos(w xi) env(xi) dxi for a decaying envelope: a panel up to the
// first zero of the cosine, then half-period panels whose alternating
// contributions bound the remainder.
QuadResult cosine_transform(const Fn1& env, double w, const Options& opt) {
  if (w == 0.0) return scan_semi_infinite(env, std::nullopt, opt).q;
  auto f = [&](double xi) { return std::cos(w * xi) * env(xi); };
  const double half_period = kPi / w;
  double edge = 0.5 * half_period;
  Options popt{opt.tol * 0.1, std::max<long>(opt.panel_budget / 16, 480)};
  QuadResult total = quad::integrate_1d(f, 0.0, edge, popt);
  for (long k = 0;; ++k) {
    const QuadResult piece = quad::integrate_1d(f, edge, edge + half_period, popt);
    edge += half_period;
    total = plus(total, piece);
    if (std::fabs(piece.value) < 0.25 * opt.tol && k > 1) {
      total.err_est += std::fabs(piece.value);
      total.converged = true;
      break;
    }
    if (total.evals > 64 * opt.panel_budget) {
      total.converged = false;
      break;
    }
  }
  return total;
}

double min_order(double beta, int d) { return std::min(beta, static_cast<double>(d)); }

}  // namespace

double heat_kernel_point(double beta, int d, double t, double r, const Options& opt) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel_point: requires t > 0");
  if (!(beta > 0.0 && beta <= 2.0))
    throw std::invalid_argument("heat_kernel_point: requires beta in (0,2]");
  r = std::fabs(r);
  if (beta == 2.0) return std::pow(4.0 * kPi * t, -0.5 * d) * std::exp(-r * r / (4.0 * t));
  if (beta == 1.0) {
    const double c = special::gamma_pos(0.5 * (d + 1)) / std::pow(kPi, 0.5 * (d + 1));
    return c * t / std::pow(t * t + r * r, 0.5 * (d + 1));
  }
  if (d != 1)
    throw std::invalid_argument("heat_kernel_point: general beta supported for d = 1 only");
  auto env = [&](double xi) { return std::exp(-t * std::pow(xi, beta)); };
  return cosine_transform(env, r, opt).value / kPi;
}

BesselValue bessel_kernel_point(double beta, int d, double r, const Options& opt) {
  if (!(beta > 0.0)) throw std::invalid_argument("bessel_kernel_point: requires beta > 0");
  r = std::fabs(r);
  if (r == 0.0 && beta <= d) return {std::numeric_limits<double>::infinity(), false};
  const double c = std::pow(4.0 * kPi, -0.5 * d) / special::gamma_pos(0.5 * beta);
  const double q = 0.25 * r * r;
  const double p = 0.5 * (beta - d);
  if (q == 0.0 && r > 0.0 && beta < d) {
    // r so small that r^2/4 underflows: the kernel is on its small-x power
    // asymptote G ~ Gamma((d-beta)/2) / (2^beta pi^{d/2} Gamma(beta/2)) |x|^{beta-d}
    const double c1 = special::gamma_pos(0.5 * (d - beta)) /
                      (std::exp2(beta) * std::pow(kPi, 0.5 * d) * special::gamma_pos(0.5 * beta));
    return {c1 * std::pow(r, beta - d), true};
  }
  // subordination integral in y = log u: exp(p y - e^y - q e^{-y})
  auto f = [&](double y) {
    const double ey = std::exp(y);
    const double expo = p * y - ey - (q > 0.0 ? q * std::exp(-y) : 0.0);
    return std::exp(expo);
  };
  // peak solves e^{2y} - p e^y - q = 0; rationalized root avoids cancellation
  // when q << p^2 with p < 0
  double y0;
  if (q > 0.0) {
    const double disc = std::sqrt(p * p + 4.0 * q);
    const double u_star = p > 0.0 ? 0.5 * (p + disc) : 2.0 * q / (disc - p);
    y0 = std::log(u_star);
  } else {
    y0 = p > 0.0 ? std::log(p) : 0.0;
  }
  Options popt{opt.tol * 0.02, std::max<long>(opt.panel_budget / 16, 480)};
  QuadResult total = quad::integrate_1d(f, y0 - 1.0, y0 + 1.0, popt);
  double up = y0 + 1.0, lo = y0 - 1.0;
  for (int k = 0; k < 4000; ++k) {
    const QuadResult piece_up = quad::integrate_1d(f, up, up + 2.0, popt);
    const QuadResult piece_lo = quad::integrate_1d(f, lo - 2.0, lo, popt);
    up += 2.0;
    lo -= 2.0;
    total = plus(total, plus(piece_up, piece_lo));
    if (piece_up.value + piece_lo.value < 1e-17 * total.value + 1e-300 && k > 1) {
      total.converged = true;
      break;
    }
  }
  return {c * total.value, true};
}

ParsevalReport verify_parseval(double t1, double t2, double alpha, int d, const Options& opt) {
  if (!(alpha > 0.0 && alpha < d))
    throw std::invalid_argument("verify_parseval: requires 0 < alpha < d");
  ParsevalReport rep;
  const double ts = t1 + t2;
  QuadResult lhs;
  if (d == 1) {
    // spatial side; the convolution of the two kernels evaluated by its own quadrature
    Options inner{opt.tol * 1e-2, std::max<long>(opt.panel_budget / 32, 480)};
    auto conv = [&](double z) {
      auto g = [&](double y) {
        return heat_kernel_point(2.0, 1, t1, z + y) * heat_kernel_point(2.0, 1, t2, y);
      };
      const QuadResult pos = quad::integrate_semi_infinite([&](double y) { return g(y); }, inner);
      const QuadResult neg = quad::integrate_semi_infinite([&](double y) { return g(-y); }, inner);
      return pos.value + neg.value;
    };
    auto f = [&](double z) { return conv(z) * std::pow(z, -alpha); };
    ScanResult s =
        scan_semi_infinite(f, SingularWeight{-alpha, SingularAt::Origin},
                           Options{opt.tol * 0.5, opt.panel_budget});
    lhs = s.q;
    lhs.value *= 2.0;  // even integrand
    lhs.err_est *= 2.0;
  } else {
    // the convolved pair is the Gaussian kernel of scale t1+t2; radial quadrature
    auto f = [&](double r) { return heat_kernel_point(2.0, d, ts, r); };
    lhs = quad::radial_spectral(f, static_cast<double>(d) - alpha, d, opt);
  }
  auto spec = [&](double r) { return std::exp(-ts * r * r); };
  const QuadResult rhs = quad::radial_spectral(spec, alpha, d, opt);
  rep.lhs = lhs.value;
  rep.rhs = special::riesz_constant(alpha, d) * rhs.value;
  rep.rel_gap = std::fabs(rep.lhs - rep.rhs) / std::max(std::fabs(rep.rhs), 1e-300);
  rep.evals = lhs.evals + rhs.evals;
  rep.converged = lhs.converged && rhs.converged;
  return rep;
}

Identity1Report verify_identity1(double alpha, double beta, int d, const Options& opt) {
  if (!(alpha > 0.0 && alpha < d))
    throw std::invalid_argument("verify_identity1: requires 0 < alpha < d");
  if (!(beta > 0.0)) throw std::invalid_argument("verify_identity1: requires beta > 0");
  Identity1Report rep;
  const double c_riesz = special::riesz_constant(alpha, d);
  const double cd = special::surface_area(d);

  // spatial side: c_d int_0^inf G_{d,beta}(r) r^{d-1-alpha} dr
  Options kopt{opt.tol * 1e-3, std::max<long>(opt.panel_budget / 32, 480)};
  auto lhs_f = [&](double r) {
    return bessel_kernel_point(beta, d, r, kopt).value * std::pow(r, d - 1.0 - alpha);
  };
  rep.lhs_diverged = diverges_at_origin(lhs_f, opt);
  if (!rep.lhs_diverged) {
    const double lhs_exp = min_order(beta, d) - alpha - 1.0;
    std::optional<SingularWeight> w;
    if (lhs_exp < 0.0) w = SingularWeight{lhs_exp, SingularAt::Origin};
    const ScanResult s = scan_semi_infinite(lhs_f, w, opt);
    rep.lhs = cd * s.q.value;
  }

  // spectral side: divergence shows at infinity when alpha >= beta
  const ScanResult spec = power_spectral_radial(alpha, beta, opt);
  rep.rhs_diverged = spec.divergent;
  rep.raw_spectral = cd * spec.q.value;
  rep.rhs = c_riesz * rep.raw_spectral;
  rep.validated_constant = c_riesz;
  rep.finite = !(rep.lhs_diverged || rep.rhs_diverged);

  if (alpha < beta) {
    rep.closed_form =
        c_riesz * cd *
        std::exp(special::lgamma_pos(0.5 * (beta - alpha)) + special::lgamma_pos(0.5 * alpha) -
                 special::lgamma_pos(0.5 * beta)) /
        2.0;
    rep.display_variant = std::pow(2.0 * kPi, d) * rep.closed_form;
  }
  if (rep.finite) {
    const double lo = std::min({rep.lhs, rep.rhs, rep.closed_form});
    const double hi = std::max({rep.lhs, rep.rhs, rep.closed_form});
    rep.rel_gap = (hi - lo) / std::max(std::fabs(hi), 1e-300);
  }
  return rep;
}

Identity2Report verify_identity2(double alpha, double beta, int d, double shift,
                                 const Options& opt) {
  if (d != 1) throw std::invalid_argument("verify_identity2: d = 1 only");
  if (!(alpha > 0.0 && alpha < 1.0 && alpha < beta))
    throw std::invalid_argument("verify_identity2: requires 0 < alpha < min(1, beta)");
  Identity2Report rep;
  const double a = std::fabs(shift);
  Options kopt{opt.tol * 1e-3, std::max<long>(opt.panel_budget / 32, 480)};
  auto g = [&](double r) {
    return bessel_kernel_point(beta, 1, r, kopt).value * std::pow(r, -alpha);
  };
  const SingularWeight w{min_order(beta, 1) - alpha - 1.0, SingularAt::Origin};

  if (a == 0.0) {
    const ScanResult s = scan_semi_infinite(g, w, opt);
    rep.lhs = 2.0 * s.q.value;
    rep.converged = s.q.converged;
  } else {
    // real part: 2 int_0^inf cos(ar) g(r) dr; weighted head up to the first zero
    auto fc = [&](double r) { return std::cos(a * r) * g(r); };
    const double edge = 0.5 * kPi / a;
    QuadResult head = quad::integrate_1d(fc, 0.0, std::min(edge, 1.0), opt, w);
    QuadResult rest{};
    if (edge > 1.0) rest = quad::integrate_1d(fc, 1.0, edge, opt);
    QuadResult tail{};
    {
      const double half_period = kPi / a;
      Options popt{opt.tol * 0.1, std::max<long>(opt.panel_budget / 16, 480)};
      double lo = edge;
      for (long k = 0;; ++k) {
        const QuadResult piece = quad::integrate_1d(fc, lo, lo + half_period, popt);
        tail = plus(tail, piece);
        lo += half_period;
        if (std::fabs(piece.value) < 0.25 * opt.tol && k > 1) {
          tail.converged = true;
          break;
        }
        if (tail.evals > 64 * opt.panel_budget) break;
      }
    }
    rep.lhs = 2.0 * (head.value + rest.value + tail.value);
    rep.converged = head.converged && tail.converged;

    // odd part: the two half-lines are integrated with unrelated panelizations
    // (half-period panels vs dyadic scan), so their failure to cancel measures
    // real quadrature error rather than returning zero by construction
    auto fs = [&](double r) { return std::sin(a * r) * g(r); };
    QuadResult pos{};
    {
      const double half_period = kPi / a;
      Options popt{opt.tol * 0.1, std::max<long>(opt.panel_budget / 16, 480)};
      QuadResult h = quad::integrate_1d(fs, 0.0, std::min(half_period, 1.0), opt, w);
      pos = h;
      double lo = std::min(half_period, 1.0);
      if (half_period > 1.0) {
        pos = plus(pos, quad::integrate_1d(fs, 1.0, half_period, popt));
        lo = half_period;
      }
      for (long k = 0;; ++k) {
        const QuadResult piece = quad::integrate_1d(fs, lo, lo + half_period, popt);
        pos = plus(pos, piece);
        lo += half_period;
        if (std::fabs(piece.value) < 0.1 * opt.tol && k > 1) break;
        if (pos.evals > 64 * opt.panel_budget) break;
      }
    }
    const ScanResult negh = scan_semi_infinite(fs, w, opt);
    rep.imag_residual = pos.value - negh.q.value;
  }

  auto rhs_half = [&](double sgn) {
    auto f = [&](double xi) {
      const double u = xi - sgn * a;
      return std::pow(1.0 + u * u, -0.5 * beta) * std::pow(xi, alpha - 1.0);
    };
    return scan_semi_infinite(f, SingularWeight{alpha - 1.0, SingularAt::Origin}, opt);
  };
  const ScanResult r1 = rhs_half(1.0);
  const ScanResult r2 = rhs_half(-1.0);
  rep.rhs = special::riesz_constant(alpha, 1) * (r1.q.value + r2.q.value);
  rep.rel_gap = std::fabs(rep.lhs - rep.rhs) / std::max(std::fabs(rep.rhs), 1e-300);
  return rep;
}

ElemIneqReport verify_elem_ineq(double alpha, double beta, int d, std::span<const double> ts,
                                std::span<const double> etas, const Options& opt) {
  if (d != 1) throw std::invalid_argument("verify_elem_ineq: d = 1 only");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("verify_elem_ineq: requires 0 < alpha < d = 1");
  ElemIneqReport rep;
  const SingularWeight w{alpha - 1.0, SingularAt::Origin};

  auto k_at = [&](double eta) {
    if (eta == 0.0) {
      auto f0 = [&](double xi) {
        return 2.0 * std::pow(xi, alpha - 1.0) / (1.0 + std::pow(xi, beta));
      };
      return scan_semi_infinite(f0, w, opt).q.value;
    }
    // kink of |xi - eta| at xi = eta: [0, eta] then [eta, inf)
    auto f = [&](double xi) {
      return std::pow(xi, alpha - 1.0) *
             (1.0 / (1.0 + std::pow(std::fabs(xi - eta), beta)) +
              1.0 / (1.0 + std::pow(xi + eta, beta)));
    };
    const QuadResult head = quad::integrate_1d(f, 0.0, eta, opt, w);
    const ScanResult tail =
        scan_dyadic([&](double xi) { return f(xi); }, eta, opt);
    return head.value + tail.q.value;
  };
  double k_max = 0.0;
  for (double eta : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0})
    k_max = std::max(k_max, k_at(eta));
  for (double eta : etas) k_max = std::max(k_max, k_at(std::fabs(eta)));
  rep.k_estimate = 1.05 * k_max;

  rep.i_raw = 2.0 * power_spectral_radial(alpha, beta, opt).q.value;
  const double cb = std::max(1.0, std::exp2(0.5 * beta - 1.0));

  rep.all_ok = true;
  for (double t : ts) {
    for (double eta_signed : etas) {
      const double eta = std::fabs(eta_signed);
      // lhs = int_0^inf z^{alpha-1} [e^{-t|eta+z|^beta} + e^{-t|eta-z|^beta}] dz
      auto f = [&](double z) {
        return std::pow(z, alpha - 1.0) *
               (std::exp(-t * std::pow(eta + z, beta)) +
                std::exp(-t * std::pow(std::fabs(eta - z), beta)));
      };
      const ScanResult s = scan_semi_infinite(f, w, opt);
      ElemIneqPoint pt;
      pt.t = t;
      pt.eta = eta_signed;
      pt.lhs = s.q.value;
      const double scale = std::pow(t, -alpha / beta);
      pt.k_bound = rep.k_estimate * scale;
      pt.chain_bound = cb * rep.i_raw * scale;
      pt.ok = pt.lhs <= pt.k_bound && pt.lhs <= pt.chain_bound;
      rep.all_ok = rep.all_ok && pt.ok;
      rep.points.push_back(pt);
    }
  }
  return rep;
}

SemigroupReport verify_semigroup(double order_a, double order_b, const Options& opt) {
  if (!(order_a > 0.0 && order_b > 0.0))
    throw std::invalid_argument("verify_semigroup: orders must be positive");
  SemigroupReport rep;
  Options kopt{opt.tol * 1e-2, std::max<long>(opt.panel_budget / 32, 480)};
  auto ga = [&](double r) { return bessel_kernel_point(order_a, 1, r, kopt).value; };
  auto gb = [&](double r) { return bessel_kernel_point(order_b, 1, r, kopt).value; };
  auto seg_weight = [](double order) {
    return SingularWeight{std::min(order, 1.0) - 1.0 - 1e-12, SingularAt::LeftEndpoint};
  };

  rep.converged = true;
  for (double x = 0.1; x <= 5.0 + 1e-9; x += 0.35) {
    auto f_mid_from0 = [&](double y) { return ga(y) * gb(x - y); };
    auto f_mid_fromx = [&](double u) { return ga(x - u) * gb(u); };
    const QuadResult m1 = quad::integrate_1d(f_mid_from0, 0.0, 0.5 * x, opt, seg_weight(order_a));
    const QuadResult m2 = quad::integrate_1d(f_mid_fromx, 0.0, 0.5 * x, opt, seg_weight(order_b));
    const ScanResult left =
        scan_semi_infinite([&](double u) { return ga(u) * gb(x + u); }, seg_weight(order_a), opt);
    const ScanResult right =
        scan_semi_infinite([&](double u) { return ga(x + u) * gb(u); }, seg_weight(order_b), opt);
    const double conv = m1.value + m2.value + left.q.value + right.q.value;
    const double direct = bessel_kernel_point(order_a + order_b, 1, x, kopt).value;
    rep.xs.push_back(x);
    rep.convolved.push_back(conv);
    rep.direct.push_back(direct);
    rep.max_gap = std::max(rep.max_gap, std::fabs(conv - direct));
    rep.converged = rep.converged && m1.converged && m2.converged;
  }
  return rep;
}

DalangResult dalang_integral(double beta, double alpha, int d, const Options& opt) {
  if (!(alpha > 0.0 && alpha < d))
    throw std::invalid_argument("dalang_integral: requires 0 < alpha < d");
  ScanResult s = power_spectral_radial(alpha, beta, opt);
  DalangResult res;
  res.divergent = s.divergent;
  res.integral = s.q;
  const double c = special::riesz_constant(alpha, d) * special::surface_area(d);
  res.integral.value *= c;
  res.integral.err_est *= std::fabs(c);
  return res;
}

}  // namespace fracheat::kernels
