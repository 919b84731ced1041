#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracheat/model.hpp"

namespace fracheat::runner {

inline constexpr const char* kVersion = "fracheat 0.1.0";

struct ExperimentConfig {
  model::ModelParams params;
  std::string command;              // constants | verify-identities | simulate |
                                    // moments | exponent-fit | sweep
  std::vector<double> t_grid;       // command-dependent default when empty
  struct {
    long n_paths = 100000;
    int grid_m = 256;
    std::uint64_t seed = 1;
    bool dump_paths = true;
    double theta = 1.0;
  } mc;
  struct {
    double tol = 1e-6;
    long panel_budget = 1 << 16;
  } quad;
  std::vector<double> p_grid;       // default 2, 3, ..., 64
  double c_growth = 0.0;            // 0 = calibrate as 2 max(alpha_1(1), 1)
  std::string out_prefix = "fracheat-";
  std::string input_csv;            // exponent-fit may read an existing sweep
  int threads = 1;
};

// Flat "key = value" lines, '#' comments; dotted namespaces (mc.n_paths = 1000).
// Unknown keys are an error.
ExperimentConfig load_config_file(const std::string& path);
void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);

struct SweepRow {
  int d = 1;
  double alpha = 0, beta = 0, hurst = 0, t = 0;
  std::string quantity;
  double value = 0, err = 0;
  std::string method;
  std::uint64_t seed = 0;
};

std::string format_real(double x);  // 17 significant digits, lossless round trip
void write_results_csv(const std::string& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_results_csv(const std::string& path);

// (log t, log log-bound) and (log p, log log-bound) series extracted from a
// sweep CSV into <prefix>plotdata-rho.tsv / <prefix>plotdata-p.tsv.
void emit_plot_data(const std::string& csv_path, const std::string& out_prefix);

// Executes the configured command; writes <prefix>results.csv,
// <prefix>manifest.txt and command-specific extras. Returns 0 on success,
// 1 when a verification failed, 2 on usage errors. Files created by a run that
// throws are removed before the error propagates.
int run(const ExperimentConfig& cfg);

}  // namespace fracheat::runner
