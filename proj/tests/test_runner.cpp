#include "fracheat/runner.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

using namespace fracheat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path dir;
  TempDir() : dir(fs::temp_directory_path() / ("fracheat-test-" + std::to_string(::getpid()))) {
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string prefix(const std::string& name) const { return (dir / name).string() + "-"; }
};

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("config parsing: keys, comments, unknown-key rejection") {
  TempDir tmp;
  const std::string path = (tmp.dir / "cfg.txt").string();
  {
    std::ofstream out(path);
    out << "# reference parameters\n";
    out << "alpha = 0.5\n";
    out << "beta = 2.0\n";
    out << "mc.n_paths = 1234   # small run\n";
    out << "t_grid = 1, 2, 4\n";
  }
  const runner::ExperimentConfig cfg = runner::load_config_file(path);
  CHECK(cfg.params.alpha == 0.5);
  CHECK(cfg.mc.n_paths == 1234);
  REQUIRE(cfg.t_grid.size() == 3);
  CHECK(cfg.t_grid[2] == 4.0);

  {
    std::ofstream out(path);
    out << "alpa = 0.5\n";  // typo must be rejected, not ignored
  }
  CHECK_THROWS(runner::load_config_file(path));

  runner::ExperimentConfig c2;
  CHECK_THROWS(runner::apply_key(c2, "no.such.key", "1"));
}

TEST_CASE("format_real round-trips doubles") {
  for (double x : {1.0 / 3.0, 2.718281828459045, 1e-17, 6.02214076e23, -0.0, 123456789.123456789}) {
    CHECK(std::stod(runner::format_real(x)) == x);
  }
}

TEST_CASE("constants command writes rho and the run manifest") {
  TempDir tmp;
  runner::ExperimentConfig cfg;
  cfg.command = "constants";
  cfg.params = {2, 1.0, 2.0, 0.75, 1.0, 1.0};
  cfg.out_prefix = tmp.prefix("constants");
  CHECK(runner::run(cfg) == 0);

  const auto rows = runner::read_results_csv(cfg.out_prefix + "results.csv");
  bool saw_rho = false;
  for (const auto& r : rows)
    if (r.quantity == "rho") {
      saw_rho = true;
      CHECK(r.value == doctest::Approx(2.0));
    }
  CHECK(saw_rho);
  const std::string man = slurp(cfg.out_prefix + "manifest.txt");
  CHECK(man.find("version = ") != std::string::npos);
  CHECK(man.find("alpha = 1") != std::string::npos);
}

TEST_CASE("simulate determinism: identical bytes across seeds and thread counts") {
  TempDir tmp;
  runner::ExperimentConfig cfg;
  cfg.command = "simulate";
  cfg.params = {1, 0.5, 2.0, 0.75, 1.0, 1.0};
  cfg.mc.n_paths = 400;
  cfg.mc.grid_m = 32;
  cfg.mc.seed = 42;
  cfg.threads = 1;
  cfg.out_prefix = tmp.prefix("sim1");
  CHECK(runner::run(cfg) == 0);
  runner::ExperimentConfig cfg2 = cfg;
  cfg2.out_prefix = tmp.prefix("sim2");
  cfg2.threads = 8;
  CHECK(runner::run(cfg2) == 0);

  CHECK(slurp(cfg.out_prefix + "results.csv") == slurp(cfg2.out_prefix + "results.csv"));
  CHECK(slurp(cfg.out_prefix + "paths.csv") == slurp(cfg2.out_prefix + "paths.csv"));

  // different seed changes the bytes
  runner::ExperimentConfig cfg3 = cfg;
  cfg3.out_prefix = tmp.prefix("sim3");
  cfg3.mc.seed = 43;
  CHECK(runner::run(cfg3) == 0);
  CHECK(slurp(cfg.out_prefix + "paths.csv") != slurp(cfg3.out_prefix + "paths.csv"));
}

TEST_CASE("sweep emits plot data and the CSV round-trips") {
  TempDir tmp;
  runner::ExperimentConfig cfg;
  cfg.command = "sweep";
  cfg.params = {2, 1.0, 2.0, 0.75, 1.0, 1.0};
  cfg.c_growth = 2.0;
  cfg.t_grid = {100.0, 1000.0, 10000.0, 100000.0, 1000000.0};
  cfg.out_prefix = tmp.prefix("sweep");
  CHECK(runner::run(cfg) == 0);

  const std::string csv = cfg.out_prefix + "results.csv";
  const auto rows = runner::read_results_csv(csv);
  int bound_rows = 0;
  for (const auto& r : rows)
    if (r.quantity == "upper_bound_log") ++bound_rows;
  CHECK(bound_rows == 5);

  const std::string rho_tsv = slurp(cfg.out_prefix + "plotdata-rho.tsv");
  CHECK(rho_tsv.find("log_t\tlog_log_bound") == 0);
  // monotone first column with one line per sweep point
  std::istringstream ss(rho_tsv);
  std::string line;
  std::getline(ss, line);
  double prev = -1e300;
  int count = 0;
  while (std::getline(ss, line)) {
    const double v = std::stod(line.substr(0, line.find('\t')));
    CHECK(v > prev);
    prev = v;
    ++count;
  }
  CHECK(count == 5);

  // p-sweep slope cross-check via the emitted plot file and the fit command
  runner::ExperimentConfig fit = cfg;
  fit.command = "exponent-fit";
  fit.input_csv = csv;
  fit.out_prefix = tmp.prefix("fit");
  CHECK(runner::run(fit) == 0);
  const auto fit_rows = runner::read_results_csv(fit.out_prefix + "results.csv");
  bool saw_rho_slope = false, saw_p_slope = false;
  for (const auto& r : fit_rows) {
    if (r.quantity == "rho_slope") {
      saw_rho_slope = true;
      CHECK(r.value == doctest::Approx(2.0).epsilon(0.05));
    }
    if (r.quantity == "p_exponent_slope") {
      saw_p_slope = true;
      CHECK(r.value == doctest::Approx(3.0).epsilon(0.10));
    }
  }
  CHECK(saw_rho_slope);
  CHECK(saw_p_slope);
}

TEST_CASE("moments command cross-checks the two alpha1 routes") {
  TempDir tmp;
  runner::ExperimentConfig cfg;
  cfg.command = "moments";
  cfg.params = {1, 0.5, 2.0, 0.75, 1.0, 1.0};
  cfg.mc.n_paths = 2000;
  cfg.mc.grid_m = 64;
  cfg.t_grid = {0.5};
  cfg.out_prefix = tmp.prefix("mom");
  CHECK(runner::run(cfg) == 0);
  const auto rows = runner::read_results_csv(cfg.out_prefix + "results.csv");
  bool saw_gap = false, saw_reliable = false, saw_c = false;
  for (const auto& r : rows) {
    if (r.quantity == "alpha1_vs_mc_rel_gap") {
      saw_gap = true;
      CHECK(r.value < 0.05);
    }
    if (r.quantity == "sandwich_reliable") {
      saw_reliable = true;
      CHECK(r.value == 1.0);
    }
    if (r.quantity == "c_growth") {
      saw_c = true;
      CHECK(r.value == doctest::Approx(2.0 * 1.5363129870787563).epsilon(1e-3));
    }
  }
  CHECK(saw_gap);
  CHECK(saw_reliable);
  CHECK(saw_c);
}

TEST_CASE("empty sweep produces header-only plot data") {
  TempDir tmp;
  const std::string csv = (tmp.dir / "empty.csv").string();
  {
    std::ofstream out(csv);
    out << "d,alpha,beta,hurst,t,quantity,value,err,method,seed\n";
  }
  runner::emit_plot_data(csv, tmp.prefix("empty"));
  CHECK(slurp(tmp.prefix("empty") + "plotdata-rho.tsv") == "log_t\tlog_log_bound\n");
}

TEST_CASE("failed runs leave no partial outputs") {
  TempDir tmp;
  runner::ExperimentConfig cfg;
  cfg.command = "exponent-fit";
  cfg.input_csv = (tmp.dir / "missing.csv").string();
  cfg.out_prefix = tmp.prefix("fail");
  CHECK_THROWS(runner::run(cfg));
  CHECK_FALSE(fs::exists(cfg.out_prefix + "results.csv"));
  CHECK_FALSE(fs::exists(cfg.out_prefix + "manifest.txt"));
}

TEST_CASE("unknown command is a usage error") {
  runner::ExperimentConfig cfg;
  cfg.command = "fnord";
  cfg.out_prefix = (fs::temp_directory_path() / "fracheat-unknown-").string();
  CHECK(runner::run(cfg) == 2);
}

}  // TEST_SUITE
