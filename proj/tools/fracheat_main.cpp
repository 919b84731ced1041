#include <cstdio>
#include <cstring>
#include <exception>
#include <stdexcept>
#include <string>

#include "fracheat/runner.hpp"

namespace {

void usage() {
  std::fprintf(stderr,
               "usage: fracheat <command> [--config PATH] [--seed N] [--out PREFIX]\n"
               "                [--threads N] [--tol X]\n"
               "commands: constants | verify-identities | simulate | moments |\n"
               "          exponent-fit | sweep\n"
               "Config files are flat `key = value` lines; flags override file values.\n");
}

}  // namespace

int main(int argc, char** argv) {
  using fracheat::runner::ExperimentConfig;
  if (argc < 2) {
    usage();
    return 2;
  }
  try {
    ExperimentConfig cfg;
    std::string config_path;
    std::string command = argv[1];
    // flags override file values, so scan for --config first
    for (int i = 2; i < argc; ++i) {
      if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) config_path = argv[i + 1];
    }
    if (!config_path.empty()) cfg = fracheat::runner::load_config_file(config_path);
    cfg.command = command;
    for (int i = 2; i < argc; ++i) {
      const std::string flag = argv[i];
      auto value = [&]() -> std::string {
        if (i + 1 >= argc) throw std::invalid_argument("missing value for " + flag);
        return argv[++i];
      };
      if (flag == "--config") {
        (void)value();  // already loaded
      } else if (flag == "--seed") {
        fracheat::runner::apply_key(cfg, "mc.seed", value());
      } else if (flag == "--out") {
        fracheat::runner::apply_key(cfg, "out", value());
      } else if (flag == "--threads") {
        fracheat::runner::apply_key(cfg, "threads", value());
      } else if (flag == "--tol") {
        fracheat::runner::apply_key(cfg, "quad.tol", value());
      } else {
        std::fprintf(stderr, "unknown flag: %s\n", flag.c_str());
        usage();
        return 2;
      }
    }
    const int status = fracheat::runner::run(cfg);
    if (status == 2) usage();
    return status;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
