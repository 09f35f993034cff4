// resit: run RESIT accuracy sweeps over synthetic additive-noise models.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "resit/errors.hpp"
#include "resit/harness.hpp"
#include "resit/report.hpp"
#include "resit/sweep_config.hpp"

namespace {

struct SweepOptions {
  std::optional<std::string> profile;
  std::optional<std::string> config_file;
  std::optional<std::string> models;
  std::optional<std::string> estimators;
  std::optional<std::string> noise_levels;
  std::optional<unsigned> reps;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> cubic_handling;
  std::string out_csv = "accuracy.csv";
  std::optional<std::string> plots;
  std::optional<std::string> summary;
  bool quiet = false;
};

resit::SweepConfig build_config(const SweepOptions& opt) {
  std::vector<std::pair<std::string, std::string>> file_settings;
  std::string profile = "desk";
  if (opt.config_file) {
    for (auto& [k, v] : resit::read_key_values(*opt.config_file)) {
      if (k == "profile") {
        profile = v;
      } else {
        file_settings.emplace_back(k, v);
      }
    }
  }
  if (opt.profile) profile = *opt.profile;

  resit::SweepConfig config = resit::profile_config(profile);
  for (const auto& [k, v] : file_settings) resit::apply_setting(config, k, v);

  if (opt.models) resit::apply_setting(config, "models", *opt.models);
  if (opt.estimators) resit::apply_setting(config, "estimators", *opt.estimators);
  if (opt.noise_levels) resit::apply_setting(config, "i", *opt.noise_levels);
  if (opt.reps) config.repetitions = *opt.reps;
  if (opt.samples) config.n_samples = *opt.samples;
  if (opt.seed) config.base_seed = *opt.seed;
  if (opt.workers) config.workers = *opt.workers;
  if (opt.cubic_handling) resit::apply_setting(config, "cubic_handling", *opt.cubic_handling);
  config.validate();
  return config;
}

int run_sweep_command(const SweepOptions& opt) {
  const auto config = build_config(opt);
  const std::size_t trials =
      config.models.size() * config.noise_levels.size() * config.repetitions;
  if (!opt.quiet) {
    std::cerr << "sweep: " << config.models.size() << " models x " << config.noise_levels.size()
              << " noise levels x " << config.repetitions << " reps (" << trials
              << " trials), " << config.estimators.size() << " estimators, "
              << config.workers << " workers\n";
  }

  const auto start = std::chrono::steady_clock::now();
  std::size_t last_pct = 0;
  resit::ProgressFn progress;
  if (!opt.quiet) {
    progress = [&](std::size_t done, std::size_t total) {
      const std::size_t pct = done * 100 / total;
      if (pct >= last_pct + 5 || done == total) {
        last_pct = pct;
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cerr << "  " << pct << "% (" << done << "/" << total << ", " << secs << " s)\n";
      }
    };
  }
  const auto records = resit::run_sweep(config, progress);

  resit::emit_csv(records, opt.out_csv);
  const auto errors_path = opt.out_csv + ".errors.csv";
  const std::size_t errored = resit::emit_error_log(records, errors_path);
  if (opt.plots) {
    const auto files = resit::emit_plots(records, *opt.plots);
    if (!opt.quiet) std::cerr << "wrote " << files.size() << " plots to " << *opt.plots << "\n";
  }
  if (opt.summary) resit::emit_summary(resit::summarize_ranges(records), *opt.summary);
  if (!opt.quiet) {
    std::cerr << "wrote " << records.size() << " records to " << opt.out_csv << "\n";
    if (errored > 0) std::cerr << errored << " cells had errors, see " << errors_path << "\n";
  }
  return errored > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RESIT causal-direction accuracy sweeps over additive-noise models"};
  app.require_subcommand(1);

  SweepOptions opt;
  auto* sweep = app.add_subcommand("sweep", "Run an accuracy sweep and write CSV, plots, tables");
  sweep->add_option("--profile", opt.profile, "paper | desk | custom (default desk)")
      ->check(CLI::IsMember({"paper", "desk", "custom"}));
  sweep->add_option("--config", opt.config_file, "Flat key = value settings file")
      ->check(CLI::ExistingFile);
  sweep->add_option("--models", opt.models, "all | linear | cubic | list such as N+U,L3+L");
  sweep->add_option("--estimators", opt.estimators, "all | dependence | entropy | tag list");
  sweep->add_option("--i", opt.noise_levels, "grid | desk | grid:LO:HI | list such as 0.1,1,10");
  sweep->add_option("--reps", opt.reps, "Repetitions per cell")->check(CLI::PositiveNumber);
  sweep->add_option("--samples", opt.samples, "Samples per trial")->check(CLI::Range(20, 100000000));
  sweep->add_option("--seed", opt.seed, "Base seed");
  sweep->add_option("--workers", opt.workers, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--cubic", opt.cubic_handling,
                    "Cubic models: cube-cause (default) | cube-regressor | linear-backward");
  sweep->add_option("--out-csv", opt.out_csv, "Accuracy CSV path")->capture_default_str();
  sweep->add_option("--plots", opt.plots, "Directory for per-model SVG plots");
  sweep->add_option("--summary", opt.summary, "Path for the range summary tables");
  sweep->add_flag("-q,--quiet", opt.quiet, "No progress output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return run_sweep_command(opt);
  } catch (const resit::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
