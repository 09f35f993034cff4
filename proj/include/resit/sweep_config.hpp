#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "resit/harness.hpp"

// Text forms of sweep settings shared by the command line and config files.
//
//   models      all | linear | cubic | comma list of "N+U" (linear) / "N3+U" (cubic)
//   estimators  all | dependence | entropy | comma list of tags ("HSIC,SH_KNN_2")
//   i           grid | desk | grid:LO:HI | comma list ("0.1,0.5,1,10")
//
// A config file is a flat "key = value" document, '#' starts a comment. Keys:
// profile, models, estimators, i, repetitions, n_samples, base_seed, workers,
// cubic_handling, train_fraction.

namespace resit {

std::vector<ModelKey> parse_models(std::string_view list);
std::vector<Estimator> parse_estimators(std::string_view list);
std::vector<NoiseLevel> parse_noise_levels(std::string_view spec);
/// "cube-cause", "cube-regressor" or "linear-backward".
CubicHandling parse_cubic_handling(std::string_view text);

/// "paper", "desk" or "custom" (paper protocol, meant to be narrowed by
/// further settings).
SweepConfig profile_config(std::string_view profile);

/// Applies one config-file key to `config`; throws ParameterError on unknown
/// keys or malformed values. The "profile" key is not handled here.
void apply_setting(SweepConfig& config, std::string_view key, std::string_view value);

/// Reads a flat key-value file in insertion order.
std::vector<std::pair<std::string, std::string>> read_key_values(const std::filesystem::path& path);

}  // namespace resit
