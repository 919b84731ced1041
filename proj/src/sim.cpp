#include "fracheat/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracheat/quad.hpp"

namespace fracheat::sim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// |x|^{-alpha} with hardware fast paths for the quarter-power exponents that
// dominate the default workloads.
inline double neg_pow(double x, double alpha) {
  if (alpha == 0.5) return 1.0 / std::sqrt(x);
  if (alpha == 1.0) return 1.0 / x;
  if (alpha == 0.25) return 1.0 / std::sqrt(std::sqrt(x));
  if (alpha == 0.75) {
    const double q = std::sqrt(std::sqrt(x));
    return 1.0 / (q * q * q);
  }
  return std::pow(x, -alpha);
}

inline double dist(const double* a, const double* b, int d) {
  if (d == 1) return std::fabs(a[0] - b[0]);
  double s = 0.0;
  for (int c = 0; c < d; ++c) {
    const double diff = a[c] - b[c];
    s += diff * diff;
  }
  return std::sqrt(s);
}

}  // namespace

double sample_positive_stable(double a, rng::Stream& rng) {
  if (!(a > 0.0 && a < 1.0))
    throw std::invalid_argument("sample_positive_stable: requires a in (0,1)");
  const double u = kPi * rng.uniform01();
  const double e = rng.exponential();
  // Kanter: S = (A(u)/E)^{(1-a)/a} with
  //   log A(u) = (a/(1-a)) log sin(a u) + log sin((1-a)u) - (1/(1-a)) log sin(u)
  const double log_a = (a / (1.0 - a)) * std::log(std::sin(a * u)) +
                       std::log(std::sin((1.0 - a) * u)) -
                       (1.0 / (1.0 - a)) * std::log(std::sin(u));
  return std::exp(((1.0 - a) / a) * (log_a - std::log(e)));
}

PathPair sample_path_pair(const model::ModelParams& p, double t, int m, rng::Stream& rng) {
  if (!(t > 0.0) || m < 1) throw std::invalid_argument("sample_path_pair: bad grid");
  PathPair pair;
  pair.t = t;
  pair.m = m;
  pair.d = p.d;
  const double dt = t / m;
  const std::size_t n = static_cast<std::size_t>(m + 1) * p.d;
  pair.x1.assign(n, 0.0);
  pair.x2.assign(n, 0.0);
  auto fill = [&](std::vector<double>& x) {
    for (int k = 0; k < m; ++k) {
      double var;  // per-coordinate increment variance of the driving B (variance 2)
      if (p.beta == 2.0) {
        var = 2.0 * dt;
      } else {
        // subordinator increment with E e^{-lambda S} = e^{-dt lambda^{beta/2}}
        const double s_inc = std::pow(dt, 2.0 / p.beta) * sample_positive_stable(0.5 * p.beta, rng);
        var = 2.0 * s_inc;
      }
      const double sd = std::sqrt(var);
      for (int c = 0; c < p.d; ++c)
        x[(k + 1) * p.d + c] = x[k * p.d + c] + sd * rng.normal();
    }
  };
  fill(pair.x1);
  fill(pair.x2);
  return pair;
}

PathPair coarsen(const PathPair& pair) {
  if (pair.m % 2 != 0) throw std::invalid_argument("coarsen: m must be even");
  PathPair out;
  out.t = pair.t;
  out.m = pair.m / 2;
  out.d = pair.d;
  out.x1.resize(static_cast<std::size_t>(out.m + 1) * out.d);
  out.x2.resize(out.x1.size());
  for (int k = 0; k <= out.m; ++k)
    for (int c = 0; c < out.d; ++c) {
      out.x1[k * out.d + c] = pair.x1[2 * k * pair.d + c];
      out.x2[k * out.d + c] = pair.x2[2 * k * pair.d + c];
    }
  return out;
}

Functionals collision_functionals(const PathPair& pair, double alpha, double hurst,
                                  std::span<const double> cell_weights) {
  const int m = pair.m, d = pair.d;
  if (static_cast<int>(cell_weights.size()) != m)
    throw std::invalid_argument("collision_functionals: cell_weights size mismatch");
  const double alpha_h = hurst * (2.0 * hurst - 1.0);
  const double dt = pair.t / m;
  const double area = dt * dt;

  // centroid positions by linear interpolation between nodes
  std::vector<double> c1(static_cast<std::size_t>(m) * d), c2(c1.size());
  for (int k = 0; k < m; ++k)
    for (int c = 0; c < d; ++c) {
      c1[k * d + c] = 0.5 * (pair.x1[k * d + c] + pair.x1[(k + 1) * d + c]);
      c2[k * d + c] = 0.5 * (pair.x2[k * d + c] + pair.x2[(k + 1) * d + c]);
    }

  double acc_l = 0.0, acc_z = 0.0;
  double min_nonzero = std::numeric_limits<double>::infinity();
  std::vector<std::pair<int, int>> zero_cells;
  for (int i = 0; i < m; ++i) {
    const double* a = &c1[static_cast<std::size_t>(i) * d];
    double row_l = 0.0, row_z = 0.0;
    for (int j = 0; j < m; ++j) {
      const double r = dist(a, &c2[static_cast<std::size_t>(j) * d], d);
      if (r == 0.0) {
        zero_cells.emplace_back(i, j);
        continue;
      }
      min_nonzero = std::min(min_nonzero, r);
      const double v = neg_pow(r, alpha);
      row_l += cell_weights[static_cast<std::size_t>(std::abs(i - j))] * v;
      row_z += v;
    }
    acc_l += row_l;
    acc_z += row_z;
  }
  // float-rounding coincidences: substitute half the smallest nonzero distance
  for (const auto& [i, j] : zero_cells) {
    const double v = neg_pow(0.5 * min_nonzero, alpha);
    acc_l += cell_weights[static_cast<std::size_t>(std::abs(i - j))] * v;
    acc_z += v;
  }
  return {alpha_h * acc_l, area * acc_z, static_cast<long>(zero_cells.size())};
}

double pairwise_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

McEstimate mc_mean(std::span<const double> samples) {
  McEstimate e;
  e.n_samples = static_cast<long>(samples.size());
  if (samples.empty()) return e;
  const double n = static_cast<double>(samples.size());
  e.mean = pairwise_sum(samples) / n;
  double ss = 0.0, max_abs = 0.0, sum_abs = 0.0;
  for (double x : samples) {
    const double dev = x - e.mean;
    ss += dev * dev;
    max_abs = std::max(max_abs, std::fabs(x));
    sum_abs += std::fabs(x);
  }
  e.std_err = samples.size() > 1 ? std::sqrt(ss / (n * (n - 1.0))) : 0.0;
  e.max_term_share = sum_abs > 0.0 ? max_abs / sum_abs : 0.0;
  return e;
}

McEstimate exp_moment(std::span<const double> samples, double theta) {
  if (theta < 0.0) throw std::invalid_argument("exp_moment: requires theta >= 0");
  McEstimate e;
  e.n_samples = static_cast<long>(samples.size());
  if (samples.empty()) return e;
  if (theta == 0.0) {
    e.mean = 1.0;
    e.max_term_share = 1.0 / static_cast<double>(samples.size());
    return e;
  }
  const double n = static_cast<double>(samples.size());
  double lmax = -std::numeric_limits<double>::infinity();
  for (double s : samples) lmax = std::max(lmax, theta * s);
  std::vector<double> w(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) w[i] = std::exp(theta * samples[i] - lmax);
  const double sum_w = pairwise_sum(w);
  e.mean = std::exp(lmax + std::log(sum_w) - std::log(n));
  e.max_term_share = 1.0 / sum_w;  // the max-shifted weight is exactly 1
  double ss = 0.0;
  const double mean_w = sum_w / n;
  for (double x : w) ss += (x - mean_w) * (x - mean_w);
  const double sd_w = samples.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  e.std_err = std::exp(lmax) * sd_w / std::sqrt(n);
  return e;
}

bool exp_moment_reliable(const McEstimate& e) { return e.max_term_share <= 0.05; }

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d_stat = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double xa = sa[i], xb = sb[j];
    if (xa <= xb) ++i;
    if (xb <= xa) ++j;
    d_stat = std::max(d_stat, std::fabs(i / na - j / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  const double lambda = (ne + 0.12 + 0.11 / ne) * d_stat;
  double p;
  if (lambda < 0.2) {
    p = 1.0;
  } else {
    p = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
      const double term = sign * 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
      p += term;
      if (std::fabs(term) < 1e-12) break;
      sign = -sign;
    }
    p = std::min(1.0, std::max(0.0, p));
  }
  return {d_stat, p};
}

namespace {

CollisionSamples collision_mc_impl(const model::ModelParams& p, double t, int m, long n_paths,
                                   std::uint64_t seed, std::uint64_t stream_offset,
                                   bool parallel) {
  CollisionSamples out;
  out.L.resize(static_cast<std::size_t>(n_paths));
  out.zeta.resize(static_cast<std::size_t>(n_paths));
  out.total_cells = n_paths * static_cast<long>(m) * m;
  const std::vector<double> w = quad::hurst_cell_weights(m, t, p.hurst);
  std::vector<long> coincidences(static_cast<std::size_t>(n_paths), 0);

#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (long i = 0; i < n_paths; ++i) {
    rng::Stream stream(seed, stream_offset + static_cast<std::uint64_t>(i));
    const PathPair pair = sample_path_pair(p, t, m, stream);
    const Functionals f = collision_functionals(pair, p.alpha, p.hurst, w);
    out.L[static_cast<std::size_t>(i)] = f.L;
    out.zeta[static_cast<std::size_t>(i)] = f.zeta;
    coincidences[static_cast<std::size_t>(i)] = f.coincidences;
  }

  for (long c : coincidences) out.coincidence_events += c;
  if (out.coincidence_events * 1000000L >= out.total_cells && out.coincidence_events > 0)
    throw std::runtime_error("collision_mc: coincidence rate above 1 per 1e6 cells");
  return out;
}

}  // namespace

CollisionSamples collision_mc(const model::ModelParams& p, double t, int m, long n_paths,
                              std::uint64_t seed, std::uint64_t stream_offset) {
  return collision_mc_impl(p, t, m, n_paths, seed, stream_offset, true);
}

CollisionSamples collision_mc_serial(const model::ModelParams& p, double t, int m, long n_paths,
                                     std::uint64_t seed, std::uint64_t stream_offset) {
  return collision_mc_impl(p, t, m, n_paths, seed, stream_offset, false);
}

}  // namespace fracheat::sim
