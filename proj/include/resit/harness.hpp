#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "resit/distributions.hpp"
#include "resit/estimator.hpp"
#include "resit/regression.hpp"
#include "resit/resit.hpp"

namespace resit {

/// One of the 18 structural models: Y = X + N or Y = X^3 + N with the cause
/// and noise families.
struct ModelKey {
  Structure structure = Structure::Linear;
  Distribution cause = Distribution::Normal;
  Distribution noise = Distribution::Normal;

  friend auto operator<=>(const ModelKey&, const ModelKey&) = default;
};

/// "N+U" for linear, "N3+U" for cubic models.
std::string model_label(const ModelKey& m);
/// "linear_normal_uniform" style stem for file names.
std::string model_file_stem(const ModelKey& m);
/// All 18 models: linear first, cause-major in N, U, L order.
std::vector<ModelKey> all_models();

struct SweepConfig {
  std::vector<ModelKey> models;
  std::vector<NoiseLevel> noise_levels;
  std::vector<Estimator> estimators;
  unsigned repetitions = 100;
  std::size_t n_samples = 1000;
  std::uint64_t base_seed = 20210301;
  unsigned workers = 1;
  CubicHandling cubic_handling = CubicHandling::CubeCause;
  SplitConfig split{};

  /// Throws ParameterError on empty lists or zero counts.
  void validate() const;
};

/// 18 models x 199 noise levels x 12 estimators, 100 repetitions of 1000
/// samples.
SweepConfig paper_profile();
/// All 18 models and 12 estimators on a 16-point noise grid; 100 repetitions
/// of 1000 samples.
SweepConfig desk_profile();

struct AccuracyRecord {
  ModelKey model;
  Estimator estimator = Estimator::Hsic;
  NoiseLevel noise;
  std::size_t n_samples = 0;
  unsigned repetitions = 0;  // completed (non-errored) trials
  unsigned successes = 0;    // verdicts X->Y
  unsigned errors = 0;
  std::string first_error;
  std::uint64_t base_seed = 0;

  double accuracy() const {
    return repetitions == 0 ? 0.0 : static_cast<double>(successes) / repetitions;
  }
};

/// Seed of repetition `rep` of the (model, noise) cell. Independent of the
/// estimator, so every estimator in a sweep scores the same draws.
Seed trial_seed(std::uint64_t base_seed, const ModelKey& model, NoiseLevel noise, unsigned rep);

/// Generates one pair and decides its direction with the structure's
/// regression plan.
Verdict run_trial(const ModelSpec& spec, Estimator estimator, Seed seed,
                  CubicHandling cubic = CubicHandling::CubeCause, SplitConfig split = {});

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Evaluates every (model, noise, estimator, repetition) combination once.
/// Output is sorted by (structure, cause, noise family, estimator, noise
/// level) and does not depend on the worker count. Trial errors are counted
/// per cell.
std::vector<AccuracyRecord> run_sweep(const SweepConfig& config, const ProgressFn& progress = {});

/// Canonical output order.
void sort_records(std::vector<AccuracyRecord>& records);

/// Range of noise levels over which a (model, estimator) series reaches the
/// threshold accuracy.
struct RangeSummary {
  ModelKey model;
  Estimator estimator = Estimator::Hsic;
  bool reached = false;  // false: threshold never reached
  NoiseLevel lower;      // first level at or above threshold
  NoiseLevel upper;      // last level at or above threshold
  bool lower_open = false;  // reached already at the first grid point
  bool upper_open = false;  // still reached at the last grid point
  std::size_t interior_points = 0;  // grid points strictly between lower and upper
  std::size_t interior_below = 0;   // of those, below threshold
  bool valid = true;  // interior_below <= slack * interior_points

  /// "0.60 -- 4", "3", "0.04 --", "-- 85", "--", or "" when not reached.
  std::string cell_text() const;
};

std::vector<RangeSummary> summarize_ranges(const std::vector<AccuracyRecord>& records,
                                           double threshold = 0.9, double slack = 0.1);

}  // namespace resit
