// salopt: experiment driver.
//
//   salopt run        --config <path>   PAA estimates per algorithm and alpha*
//   salopt sweep      --config <path>   estimates plus log-log slopes
//   salopt conditions --config <path>   per-iteration condition checks
//   salopt theory     --config <path>   closed-form bound values
//
// Exit codes: 0 success, 2 config error, 3 unattainable quantile, 1 other failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sal/harness/conditions.hpp"
#include "sal/harness/config.hpp"
#include "sal/harness/paa.hpp"
#include "sal/harness/report.hpp"
#include "sal/harness/sweep.hpp"

namespace {

using namespace sal::harness;

constexpr int kExitConfig = 2;
constexpr int kExitUnattainable = 3;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out;
};

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--config", opt.config, "experiment config file")->required();
  sub->add_option("--seed", opt.seed, "master seed (overrides the config)");
  sub->add_option("--workers", opt.workers, "concurrent trial workers (overrides the config)");
  sub->add_option("--out", opt.out, "output directory (overrides the config)");
}

ExperimentConfig resolve(const Options& opt) {
  ExperimentConfig cfg = load_config(opt.config);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.workers) cfg.workers = *opt.workers;
  if (opt.out) cfg.output = *opt.out;
  cfg.validate();
  return cfg;
}

int finish_estimates(const ExperimentConfig& cfg, const std::vector<PAAEstimate>& estimates,
                     const std::vector<SlopeReport>& slopes) {
  const std::filesystem::path dir(cfg.output);
  emit_report(dir, cfg, estimates, slopes);
  write_text(dir / "config.cfg", to_config_text(cfg));
  std::cout << summary_text(cfg, estimates, slopes);
  for (const PAAEstimate& e : estimates) {
    if (!e.valid()) {
      std::cerr << "unattainable quantile: " << to_string(e.algorithm) << " at alpha* = " << e.alpha_star
                << " (" << e.censored << " censored trials)\n";
      return kExitUnattainable;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sampling-and-learning optimization experiments"};
  app.require_subcommand(1);
  Options opt;
  CLI::App* run = app.add_subcommand("run", "estimate PAA query complexity");
  CLI::App* sweep = app.add_subcommand("sweep", "scaling sweep over alpha*");
  CLI::App* conditions = app.add_subcommand("conditions", "per-iteration condition report");
  CLI::App* theory = app.add_subcommand("theory", "print bound values for a config");
  for (CLI::App* sub : {run, sweep, conditions, theory}) add_common(sub, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const ExperimentConfig cfg = resolve(opt);
    const std::filesystem::path dir(cfg.output);
    if (run->parsed()) {
      return finish_estimates(cfg, estimate_paa(cfg), {});
    }
    if (sweep->parsed()) {
      const SweepResult r = scaling_sweep(cfg);
      return finish_estimates(cfg, r.estimates, r.slopes);
    }
    if (conditions->parsed()) {
      const std::vector<ConditionRow> rows = condition_report(cfg);
      std::filesystem::create_directories(dir);
      write_text(dir / kConditionsFile, conditions_csv(rows));
      write_text(dir / "config.cfg", to_config_text(cfg));
      int one_side = 0, measure = 0;
      for (const ConditionRow& r : rows) {
        one_side += !r.one_side_ok();
        measure += !r.measure_ok();
      }
      std::cout << rows.size() << " iteration rows; one-side violations beyond 3 sigma: " << one_side
                << "; measure inequality failures: " << measure << '\n';
      return 0;
    }
    const std::string text = theory_csv(cfg);
    std::filesystem::create_directories(dir);
    write_text(dir / kTheoryFile, text);
    std::cout << text;
    return 0;
  } catch (const sal::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
