#include "fracheat/runner.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fracheat/kernels.hpp"
#include "fracheat/moments.hpp"
#include "fracheat/quad.hpp"
#include "fracheat/sim.hpp"
#include "fracheat/special.hpp"

namespace fracheat::runner {

namespace {

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1));
  return v;
}

// Tracks files created by one run so a throwing command leaves nothing behind.
class OutputSet {
 public:
  explicit OutputSet(std::string prefix) : prefix_(std::move(prefix)) {
    const std::filesystem::path parent = std::filesystem::path(prefix_ + "x").parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
  }
  std::string path(const std::string& name) {
    std::string p = prefix_ + name;
    created_.push_back(p);
    return p;
  }
  void remove_all() {
    for (const auto& p : created_) std::filesystem::remove(p);
  }
  const std::vector<std::string>& created() const { return created_; }

 private:
  std::string prefix_;
  std::vector<std::string> created_;
};

quad::Options quad_options(const ExperimentConfig& cfg) {
  return {cfg.quad.tol, cfg.quad.panel_budget};
}

void config_echo(std::ostream& os, const ExperimentConfig& cfg) {
  os << "command = " << cfg.command << "\n";
  os << "d = " << cfg.params.d << "\n";
  os << "alpha = " << format_real(cfg.params.alpha) << "\n";
  os << "beta = " << format_real(cfg.params.beta) << "\n";
  os << "hurst = " << format_real(cfg.params.hurst) << "\n";
  os << "a = " << format_real(cfg.params.a) << "\n";
  os << "b = " << format_real(cfg.params.b) << "\n";
  os << "t_grid =";
  for (double t : cfg.t_grid) os << " " << format_real(t);
  os << "\n";
  os << "p_grid =";
  for (double p : cfg.p_grid) os << " " << format_real(p);
  os << "\n";
  os << "mc.n_paths = " << cfg.mc.n_paths << "\n";
  os << "mc.grid_m = " << cfg.mc.grid_m << "\n";
  os << "mc.seed = " << cfg.mc.seed << "\n";
  os << "mc.dump_paths = " << (cfg.mc.dump_paths ? 1 : 0) << "\n";
  os << "mc.theta = " << format_real(cfg.mc.theta) << "\n";
  os << "quad.tol = " << format_real(cfg.quad.tol) << "\n";
  os << "quad.panel_budget = " << cfg.quad.panel_budget << "\n";
  os << "series.c_growth = " << format_real(cfg.c_growth) << "\n";
  os << "out = " << cfg.out_prefix << "\n";
  os << "input = " << cfg.input_csv << "\n";
  os << "threads = " << cfg.threads << "\n";
}

SweepRow row_of(const ExperimentConfig& cfg, double t, const std::string& quantity, double value,
                double err, const std::string& method, std::uint64_t seed = 0) {
  SweepRow r;
  r.d = cfg.params.d;
  r.alpha = cfg.params.alpha;
  r.beta = cfg.params.beta;
  r.hurst = cfg.params.hurst;
  r.t = t;
  r.quantity = quantity;
  r.value = value;
  r.err = err;
  r.method = method;
  r.seed = seed;
  return r;
}

// ---- commands ------------------------------------------------------------

int cmd_constants(const ExperimentConfig& cfg, std::vector<SweepRow>& rows) {
  const model::ModelParams p = model::validate(cfg.params);
  const model::ExponentSet e = model::exponents(p);
  auto put = [&](const std::string& q, double v) {
    rows.push_back(row_of(cfg, 0.0, q, v, 0.0, "closed-form"));
  };
  put("rho", e.rho);
  put("rho_defined", e.rho_defined ? 1.0 : 0.0);
  put("delta", e.delta);
  put("delta_defined", e.delta_defined ? 1.0 : 0.0);
  put("alpha_H", e.alpha_h);
  put("beta_H", e.beta_h);
  put("m", e.m);
  put("h", e.h);
  put("existence_condition", model::existence_condition(p) ? 1.0 : 0.0);
  put("necessity_precondition", model::necessity_precondition(p) ? 1.0 : 0.0);
  const special::SpectralConstants sc = special::spectral_constants(p.alpha, p.beta, p.d);
  put("c_d", sc.c_d);
  put("C_riesz", sc.c_riesz);
  put("kappa", sc.kappa);
  put("c_beta", sc.c_beta);
  put("stable_negative_moment", sc.stable_negmom);
  put("bessel_riesz_integral", sc.bessel_riesz);
  put("gaussian_negative_moment_t1", special::gaussian_negative_moment(p.alpha, p.d, 1.0));
  return 0;
}

int cmd_verify_identities(const ExperimentConfig& cfg, std::vector<SweepRow>& rows) {
  const quad::Options opt = quad_options(cfg);
  bool ok = true;
  auto gap_row = [&](double alpha, double beta, int d, double t, const std::string& q, double gap,
                     double threshold) {
    SweepRow r;
    r.d = d;
    r.alpha = alpha;
    r.beta = beta;
    r.hurst = cfg.params.hurst;
    r.t = t;
    r.quantity = q;
    r.value = gap;
    r.err = threshold;
    r.method = "quadrature";
    rows.push_back(r);
    if (!(gap < threshold)) ok = false;
  };

  struct PCase {
    double t1, t2, alpha;
    int d;
  };
  for (const PCase& c : {PCase{1, 1, 0.5, 1}, PCase{1, 2, 1.0, 2}, PCase{0.5, 2, 0.7, 1},
                         PCase{1, 1, 0.95, 1}, PCase{2, 1, 1.3, 2}}) {
    const kernels::ParsevalReport rep = kernels::verify_parseval(c.t1, c.t2, c.alpha, c.d, opt);
    std::ostringstream q;
    q << "parseval_gap_t1=" << c.t1 << "_t2=" << c.t2;
    gap_row(c.alpha, 2.0, c.d, 0.0, q.str(), rep.rel_gap, c.alpha >= 0.9 ? 1e-3 : 1e-4);
  }

  struct ICase {
    double alpha, beta;
    int d;
  };
  for (const ICase& c : {ICase{0.5, 2.0, 1}, ICase{0.5, 0.75, 1}, ICase{1.0, 1.5, 2},
                         ICase{0.25, 0.6, 1}}) {
    const kernels::Identity1Report rep = kernels::verify_identity1(c.alpha, c.beta, c.d, opt);
    gap_row(c.alpha, c.beta, c.d, 0.0, "identity1_gap", rep.finite ? rep.rel_gap : 1.0, 1e-4);
  }
  {
    const kernels::Identity1Report rep = kernels::verify_identity1(1.0, 1.0, 2, opt);
    gap_row(1.0, 1.0, 2, 0.0, "identity1_divergence_flagged",
            (rep.lhs_diverged && rep.rhs_diverged) ? 0.0 : 1.0, 0.5);
  }

  struct I2Case {
    double alpha, beta, shift;
  };
  double rhs_at_zero = 0.0;
  for (const I2Case& c : {I2Case{0.5, 2.0, 0.0}, I2Case{0.5, 2.0, 1.0}, I2Case{0.5, 2.0, 5.0},
                          I2Case{0.3, 1.2, 2.0}, I2Case{0.7, 1.6, 0.5}}) {
    const kernels::Identity2Report rep =
        kernels::verify_identity2(c.alpha, c.beta, 1, c.shift, opt);
    std::ostringstream q;
    q << "identity2_gap_a=" << c.shift;
    gap_row(c.alpha, c.beta, 1, 0.0, q.str(), rep.rel_gap, 1e-4);
    std::ostringstream qi;
    qi << "identity2_imag_residual_a=" << c.shift;
    gap_row(c.alpha, c.beta, 1, 0.0, qi.str(), std::fabs(rep.imag_residual), 1e-6);
    if (c.alpha == 0.5 && c.beta == 2.0) {
      if (c.shift == 0.0) rhs_at_zero = rep.rhs;
      if (c.shift == 5.0)
        gap_row(c.alpha, c.beta, 1, 0.0, "identity2_sup_at_origin",
                rep.rhs <= rhs_at_zero * (1.0 + 1e-9) ? 0.0 : 1.0, 0.5);
    }
  }

  const double ts[] = {0.1, 1.0, 10.0};
  const double etas[] = {0.0, 1.0, 10.0};
  for (const ICase& c : {ICase{0.5, 2.0, 1}, ICase{0.5, 1.2, 1}}) {
    const kernels::ElemIneqReport rep = kernels::verify_elem_ineq(c.alpha, c.beta, 1, ts, etas, opt);
    gap_row(c.alpha, c.beta, 1, 0.0, "elem_ineq_all_points", rep.all_ok ? 0.0 : 1.0, 0.5);
    double cmin = 1e300, cmax = 0.0;
    for (const auto& pt : rep.points)
      if (pt.eta == 0.0) {
        const double v = pt.lhs * std::pow(pt.t, c.alpha / c.beta);
        cmin = std::min(cmin, v);
        cmax = std::max(cmax, v);
      }
    gap_row(c.alpha, c.beta, 1, 0.0, "elem_ineq_scaling_constancy", (cmax - cmin) / cmax, 1e-3);
  }

  for (const auto& [oa, ob, tol] :
       {std::tuple{1.0, 1.0, 1e-4}, std::tuple{2.0, 2.0, 1e-4}, std::tuple{0.5, 0.5, 1e-3}}) {
    const kernels::SemigroupReport rep = kernels::verify_semigroup(oa, ob, opt);
    std::ostringstream q;
    q << "semigroup_max_gap_" << oa << "+" << ob;
    gap_row(oa, ob, 1, 0.0, q.str(), rep.max_gap, tol);
  }

  {
    const kernels::DalangResult fin = kernels::dalang_integral(2.0, 1.0, 2, opt);
    gap_row(1.0, 2.0, 2, 0.0, "dalang_finite", fin.divergent ? 1.0 : 0.0, 0.5);
    rows.push_back(row_of(cfg, 0.0, "dalang_value_b2_a1_d2", fin.integral.value,
                          fin.integral.err_est, "quadrature"));
    const kernels::DalangResult div = kernels::dalang_integral(1.0, 1.0, 2, opt);
    gap_row(1.0, 1.0, 2, 0.0, "dalang_divergent_flagged", div.divergent ? 0.0 : 1.0, 0.5);
  }
  return ok ? 0 : 1;
}

int cmd_simulate(const ExperimentConfig& cfg, std::vector<SweepRow>& rows, OutputSet& out) {
  const model::ModelParams p = model::validate(cfg.params);
  std::ofstream paths;
  if (cfg.mc.dump_paths) {
    paths.open(out.path("paths.csv"));
    paths << "seed,stream,L,zeta\n";
  }
  std::uint64_t stream_base = 0;
  for (double t : cfg.t_grid) {
    const sim::CollisionSamples cs =
        sim::collision_mc(p, t, cfg.mc.grid_m, cfg.mc.n_paths, cfg.mc.seed, stream_base);
    stream_base += static_cast<std::uint64_t>(cfg.mc.n_paths);
    const sim::McEstimate l_est = sim::mc_mean(cs.L);
    const sim::McEstimate z_est = sim::mc_mean(cs.zeta);
    const sim::McEstimate e_est = sim::exp_moment(cs.L, cfg.mc.theta);
    rows.push_back(row_of(cfg, t, "E_L", l_est.mean, l_est.std_err, "mc", cfg.mc.seed));
    rows.push_back(row_of(cfg, t, "E_zeta", z_est.mean, z_est.std_err, "mc", cfg.mc.seed));
    rows.push_back(row_of(cfg, t, "exp_moment_L", e_est.mean, e_est.std_err, "mc", cfg.mc.seed));
    rows.push_back(row_of(cfg, t, "exp_moment_max_term_share", e_est.max_term_share, 0.0, "mc",
                          cfg.mc.seed));
    rows.push_back(row_of(cfg, t, "coincidence_events",
                          static_cast<double>(cs.coincidence_events), 0.0, "mc", cfg.mc.seed));
    if (cfg.mc.dump_paths) {
      for (std::size_t i = 0; i < cs.L.size(); ++i) {
        paths << cfg.mc.seed << "," << (stream_base - cfg.mc.n_paths + i) << ","
              << format_real(cs.L[i]) << "," << format_real(cs.zeta[i]) << "\n";
      }
    }
  }
  return 0;
}

int cmd_moments(const ExperimentConfig& cfg, std::vector<SweepRow>& rows) {
  const model::ModelParams p = model::validate(cfg.params);
  const quad::Options opt = quad_options(cfg);
  const double c_growth = cfg.c_growth > 0.0 ? cfg.c_growth : moments::default_c_growth(p, opt);
  rows.push_back(row_of(cfg, 0.0, "c_growth", c_growth, 0.0, "calibration"));
  int status = 0;
  std::uint64_t stream_base = 0;
  for (double t : cfg.t_grid) {
    const moments::Alpha1Result a1 = moments::alpha1_exact(p, t, opt);
    if (a1.divergent) {
      rows.push_back(row_of(cfg, t, "alpha1_divergent", 1.0, 0.0, "quadrature"));
      continue;
    }
    rows.push_back(row_of(cfg, t, "alpha1", a1.q.value, a1.q.err_est, "quadrature"));
    const sim::CollisionSamples cs =
        sim::collision_mc(p, t, cfg.mc.grid_m, cfg.mc.n_paths, cfg.mc.seed, stream_base);
    stream_base += static_cast<std::uint64_t>(cfg.mc.n_paths);
    const sim::McEstimate l_est = sim::mc_mean(cs.L);
    rows.push_back(row_of(cfg, t, "E_L", l_est.mean, l_est.std_err, "mc", cfg.mc.seed));
    const double gap = std::fabs(l_est.mean - a1.q.value) / a1.q.value;
    rows.push_back(row_of(cfg, t, "alpha1_vs_mc_rel_gap", gap, 0.0, "mc"));
    const moments::Sandwich sw = moments::second_moment_sandwich(p, t, cs.L);
    rows.push_back(row_of(cfg, t, "second_moment_lower", sw.lower, 0.0, "mc", cfg.mc.seed));
    rows.push_back(row_of(cfg, t, "second_moment_upper", sw.upper, 0.0, "mc", cfg.mc.seed));
    rows.push_back(row_of(cfg, t, "sandwich_reliable", sw.reliable ? 1.0 : 0.0, 0.0, "mc"));
    const moments::ZetaMomentReport zr = moments::zeta_moment_growth(p, 4, cs.zeta);
    for (const auto& zrow : zr.rows) {
      std::ostringstream q;
      q << "zeta_moment_n=" << zrow.n;
      rows.push_back(row_of(cfg, t, q.str(), zrow.moment, zrow.std_err, "mc", cfg.mc.seed));
      std::ostringstream qr;
      qr << "zeta_moment_ratio_n=" << zrow.n;
      rows.push_back(row_of(cfg, t, qr.str(), zrow.ratio, 0.0, "mc", cfg.mc.seed));
    }
    const moments::SeriesBound ub = moments::upper_bound_series(p, t, c_growth);
    rows.push_back(row_of(cfg, t, "upper_bound_log", ub.log_sum, 0.0, "series"));
  }
  return status;
}

int cmd_sweep(const ExperimentConfig& cfg, std::vector<SweepRow>& rows) {
  const model::ModelParams p = model::validate(cfg.params);
  const quad::Options opt = quad_options(cfg);
  const double c_growth = cfg.c_growth > 0.0 ? cfg.c_growth : moments::default_c_growth(p, opt);
  rows.push_back(row_of(cfg, 0.0, "c_growth", c_growth, 0.0, "calibration"));
  for (double t : cfg.t_grid) {
    const moments::SeriesBound ub = moments::upper_bound_series(p, t, c_growth);
    if (ub.divergent) {
      rows.push_back(row_of(cfg, t, "upper_bound_divergent", 1.0, 0.0, "series"));
    } else {
      rows.push_back(row_of(cfg, t, "upper_bound_log", ub.log_sum, 0.0, "series"));
    }
  }
  const double t_for_p = cfg.t_grid.empty() ? 1000.0 : cfg.t_grid.back();
  for (double pi : cfg.p_grid) {
    const double v = moments::p_moment_log_bound(p, pi, t_for_p, c_growth);
    rows.push_back(row_of(cfg, pi, "p_moment_log_bound", v, 0.0, "series"));
  }
  return 0;
}

int cmd_exponent_fit(const ExperimentConfig& cfg, std::vector<SweepRow>& rows) {
  std::vector<SweepRow> sweep_rows;
  if (!cfg.input_csv.empty()) {
    sweep_rows = read_results_csv(cfg.input_csv);
  } else {
    ExperimentConfig sub = cfg;
    sub.command = "sweep";
    cmd_sweep(sub, sweep_rows);
    for (const SweepRow& r : sweep_rows) rows.push_back(r);
  }

  std::vector<double> ts, vals, ps, pvals;
  for (const SweepRow& r : sweep_rows) {
    if (r.quantity == "upper_bound_log") {
      ts.push_back(r.t);
      vals.push_back(r.value);
    } else if (r.quantity == "p_moment_log_bound") {
      ps.push_back(r.t);
      pvals.push_back(r.value);
    }
  }
  if (ts.size() >= 3) {
    const moments::FitResult fit =
        moments::exponent_fit(ts, vals, ts.front(), ts.back());
    rows.push_back(row_of(cfg, 0.0, "rho_slope", fit.slope, 0.0, "fit"));
    rows.push_back(row_of(cfg, 0.0, "rho_fit_r_squared", fit.r_squared, 0.0, "fit"));
    const model::ExponentSet e = model::exponents(cfg.params);
    if (e.rho_defined)
      rows.push_back(row_of(cfg, 0.0, "rho_closed_form", e.rho, 0.0, "closed-form"));
  }
  if (ps.size() >= 3) {
    const moments::FitResult fit = moments::exponent_fit(ps, pvals, ps.front(), ps.back());
    rows.push_back(row_of(cfg, 0.0, "p_exponent_slope", fit.slope, 0.0, "fit"));
  }
  return 0;
}

}  // namespace

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "command") cfg.command = value;
  else if (key == "d") cfg.params.d = std::stoi(value);
  else if (key == "alpha") cfg.params.alpha = std::stod(value);
  else if (key == "beta") cfg.params.beta = std::stod(value);
  else if (key == "hurst") cfg.params.hurst = std::stod(value);
  else if (key == "a") cfg.params.a = std::stod(value);
  else if (key == "b") cfg.params.b = std::stod(value);
  else if (key == "t" || key == "t_grid") cfg.t_grid = parse_list(value);
  else if (key == "p_grid") cfg.p_grid = parse_list(value);
  else if (key == "mc.n_paths") cfg.mc.n_paths = std::stol(value);
  else if (key == "mc.grid_m") cfg.mc.grid_m = std::stoi(value);
  else if (key == "mc.seed") cfg.mc.seed = std::stoull(value);
  else if (key == "mc.dump_paths") cfg.mc.dump_paths = std::stoi(value) != 0;
  else if (key == "mc.theta") cfg.mc.theta = std::stod(value);
  else if (key == "quad.tol") cfg.quad.tol = std::stod(value);
  else if (key == "quad.panel_budget") cfg.quad.panel_budget = std::stol(value);
  else if (key == "series.c_growth") cfg.c_growth = std::stod(value);
  else if (key == "out") cfg.out_prefix = value;
  else if (key == "input") cfg.input_csv = value;
  else if (key == "threads") cfg.threads = std::stoi(value);
  else throw std::invalid_argument("unknown config key: " + key);
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    apply_key(cfg, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
  return cfg;
}

std::string format_real(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_results_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "d,alpha,beta,hurst,t,quantity,value,err,method,seed\n";
  for (const SweepRow& r : rows) {
    out << r.d << "," << format_real(r.alpha) << "," << format_real(r.beta) << ","
        << format_real(r.hurst) << "," << format_real(r.t) << "," << r.quantity << ","
        << format_real(r.value) << "," << format_real(r.err) << "," << r.method << "," << r.seed
        << "\n";
  }
}

std::vector<SweepRow> read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<SweepRow> rows;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
  if (line != "d,alpha,beta,hurst,t,quantity,value,err,method,seed")
    throw std::runtime_error("unexpected CSV header in " + path);
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::stringstream ss(line);
    std::string field;
    SweepRow r;
    auto next = [&]() {
      if (!std::getline(ss, field, ',')) throw std::runtime_error("malformed CSV row: " + line);
      return field;
    };
    r.d = std::stoi(next());
    r.alpha = std::stod(next());
    r.beta = std::stod(next());
    r.hurst = std::stod(next());
    r.t = std::stod(next());
    r.quantity = next();
    r.value = std::stod(next());
    r.err = std::stod(next());
    r.method = next();
    r.seed = std::stoull(next());
    rows.push_back(r);
  }
  return rows;
}

void emit_plot_data(const std::string& csv_path, const std::string& out_prefix) {
  const std::vector<SweepRow> rows = read_results_csv(csv_path);
  std::ofstream rho(out_prefix + "plotdata-rho.tsv");
  rho << "log_t\tlog_log_bound\n";
  std::ofstream pf(out_prefix + "plotdata-p.tsv");
  pf << "log_p\tlog_log_bound\n";
  for (const SweepRow& r : rows) {
    if (r.quantity == "upper_bound_log" && r.t > 0.0 && r.value > 0.0)
      rho << format_real(std::log(r.t)) << "\t" << format_real(std::log(r.value)) << "\n";
    if (r.quantity == "p_moment_log_bound" && r.t > 0.0 && r.value > 0.0)
      pf << format_real(std::log(r.t)) << "\t" << format_real(std::log(r.value)) << "\n";
  }
}

int run(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  if (cfg.t_grid.empty()) {
    if (cfg.command == "sweep" || cfg.command == "exponent-fit")
      cfg.t_grid = logspace(1e2, 1e6, 9);
    else
      cfg.t_grid = {1.0};
  }
  if (cfg.p_grid.empty())
    for (int i = 2; i <= 64; ++i) cfg.p_grid.push_back(i);

  OutputSet out(cfg.out_prefix);
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<SweepRow> rows;
  int status = 0;
  try {
    if (cfg.command == "constants") status = cmd_constants(cfg, rows);
    else if (cfg.command == "verify-identities") status = cmd_verify_identities(cfg, rows);
    else if (cfg.command == "simulate") status = cmd_simulate(cfg, rows, out);
    else if (cfg.command == "moments") status = cmd_moments(cfg, rows);
    else if (cfg.command == "sweep") status = cmd_sweep(cfg, rows);
    else if (cfg.command == "exponent-fit") status = cmd_exponent_fit(cfg, rows);
    else return 2;

    const std::string csv = out.path("results.csv");
    write_results_csv(csv, rows);
    if (cfg.command == "sweep" || cfg.command == "exponent-fit") {
      out.path("plotdata-rho.tsv");
      out.path("plotdata-p.tsv");
      emit_plot_data(csv, cfg.out_prefix);
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double elapsed = std::chrono::duration<double>(t1 - t0).count();

    std::ofstream man(out.path("manifest.txt"));
    man << "# " << kVersion << " run manifest\n";
    man << "version = " << kVersion << "\n";
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    man << "timestamp_unix = "
        << std::chrono::duration_cast<std::chrono::seconds>(now).count() << "\n";
    man << "elapsed_seconds = " << format_real(elapsed) << "\n";
    man << "exit_status = " << status << "\n";
    man << "[config]\n";
    config_echo(man, cfg);
    man << "[outputs]\n";
    for (const auto& f : out.created()) man << f << "\n";
  } catch (...) {
    out.remove_all();
    throw;
  }
  return status;
}

}  // namespace fracheat::runner
