#include "resit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "resit/errors.hpp"

namespace resit {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::int8_t kFailure = 0;
constexpr std::int8_t kSuccess = 1;
constexpr std::int8_t kError = -1;

struct TaskResult {
  std::vector<std::int8_t> outcome;  // per estimator
  std::vector<std::string> error;    // per estimator, empty unless kError
};

}  // namespace

std::string model_label(const ModelKey& m) {
  std::string s(1, symbol(m.cause));
  if (m.structure == Structure::Cubic) s += '3';
  s += '+';
  s += symbol(m.noise);
  return s;
}

std::string model_file_stem(const ModelKey& m) {
  return lower(name(m.structure)) + "_" + lower(name(m.cause)) + "_" + lower(name(m.noise));
}

std::vector<ModelKey> all_models() {
  std::vector<ModelKey> out;
  constexpr Distribution families[] = {Distribution::Normal, Distribution::Uniform,
                                       Distribution::Laplace};
  for (Structure s : {Structure::Linear, Structure::Cubic}) {
    for (Distribution c : families) {
      for (Distribution n : families) out.push_back({s, c, n});
    }
  }
  return out;
}

void SweepConfig::validate() const {
  if (models.empty()) throw ParameterError("sweep: no models");
  if (noise_levels.empty()) throw ParameterError("sweep: no noise levels");
  if (estimators.empty()) throw ParameterError("sweep: no estimators");
  if (repetitions == 0) throw ParameterError("sweep: repetitions must be positive");
  if (n_samples < 20) throw ParameterError("sweep: n_samples must be at least 20");
  if (workers == 0) throw ParameterError("sweep: workers must be positive");
  for (auto level : noise_levels) {
    if (level.hundredths() <= 0) throw ParameterError("sweep: noise levels must be positive");
  }
}

SweepConfig paper_profile() {
  SweepConfig c;
  c.models = all_models();
  c.noise_levels = i_grid();
  c.estimators.assign(kAllEstimators.begin(), kAllEstimators.end());
  c.repetitions = 100;
  c.n_samples = 1000;
  return c;
}

SweepConfig desk_profile() {
  SweepConfig c = paper_profile();
  c.noise_levels.clear();
  for (std::int64_t h : {1, 3, 10, 20, 30, 50, 70, 100, 200, 300, 500, 700, 1000, 2000, 5000,
                         10000}) {
    c.noise_levels.push_back(NoiseLevel::from_hundredths(h));
  }
  return c;
}

Seed trial_seed(std::uint64_t base_seed, const ModelKey& model, NoiseLevel noise, unsigned rep) {
  const std::string cell = std::string(name(model.structure)) + "|" +
                           std::string(name(model.cause)) + "|" +
                           std::string(name(model.noise)) + "|" +
                           std::to_string(noise.hundredths());
  return Seed{mix64(base_seed ^ fnv1a(cell)), rep};
}

Verdict run_trial(const ModelSpec& spec, Estimator estimator, Seed seed, CubicHandling cubic,
                  SplitConfig split) {
  return decide_with_plan(generate_pair(spec, seed), regression_plan(spec.structure, cubic),
                          estimator, split);
}

void sort_records(std::vector<AccuracyRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const AccuracyRecord& a, const AccuracyRecord& b) {
                     return std::tie(a.model, a.estimator, a.noise) <
                            std::tie(b.model, b.estimator, b.noise);
                   });
}

std::vector<AccuracyRecord> run_sweep(const SweepConfig& config, const ProgressFn& progress) {
  config.validate();
  const std::size_t n_models = config.models.size();
  const std::size_t n_levels = config.noise_levels.size();
  const std::size_t n_reps = config.repetitions;
  const std::size_t n_est = config.estimators.size();
  const std::size_t n_tasks = n_models * n_levels * n_reps;

  std::vector<TaskResult> results(n_tasks);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto run_task = [&](std::size_t task) {
    const std::size_t rep = task % n_reps;
    const std::size_t level = (task / n_reps) % n_levels;
    const std::size_t model = task / (n_reps * n_levels);
    const ModelKey& key = config.models[model];
    const NoiseLevel noise = config.noise_levels[level];

    TaskResult& out = results[task];
    out.outcome.assign(n_est, kError);
    out.error.assign(n_est, {});

    ModelSpec spec{key.structure, key.cause, key.noise, noise.value(), config.n_samples};
    const Seed seed = trial_seed(config.base_seed, key, noise, static_cast<unsigned>(rep));
    std::optional<ResidualSplit> split;
    try {
      split = prepare_with_plan(generate_pair(spec, seed),
                                regression_plan(key.structure, config.cubic_handling),
                                config.split);
    } catch (const std::exception& e) {
      for (auto& msg : out.error) msg = e.what();
      return;
    }
    for (std::size_t e = 0; e < n_est; ++e) {
      try {
        const Verdict v = decide_from_residuals(*split, config.estimators[e]);
        out.outcome[e] = v.direction == Direction::XtoY ? kSuccess : kFailure;
      } catch (const std::exception& ex) {
        out.error[e] = ex.what();
      }
    }
  };

  auto worker = [&]() {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= n_tasks) return;
      run_task(task);
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, n_tasks);
      }
    }
  };

  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::size_t>(config.workers, std::max<std::size_t>(n_tasks, 1)));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<AccuracyRecord> records;
  records.reserve(n_models * n_levels * n_est);
  for (std::size_t m = 0; m < n_models; ++m) {
    for (std::size_t l = 0; l < n_levels; ++l) {
      for (std::size_t e = 0; e < n_est; ++e) {
        AccuracyRecord rec;
        rec.model = config.models[m];
        rec.estimator = config.estimators[e];
        rec.noise = config.noise_levels[l];
        rec.n_samples = config.n_samples;
        rec.base_seed = config.base_seed;
        for (std::size_t r = 0; r < n_reps; ++r) {
          const TaskResult& tr = results[(m * n_levels + l) * n_reps + r];
          switch (tr.outcome[e]) {
            case kSuccess: ++rec.successes; ++rec.repetitions; break;
            case kFailure: ++rec.repetitions; break;
            default:
              if (rec.errors++ == 0) rec.first_error = tr.error[e];
          }
        }
        records.push_back(std::move(rec));
      }
    }
  }
  sort_records(records);
  return records;
}

std::string RangeSummary::cell_text() const {
  if (!reached) return "";
  if (lower_open && upper_open) return "--";
  if (lower_open) return "-- " + upper.str();
  if (upper_open) return lower.str() + " --";
  if (lower == upper) return lower.str();
  return lower.str() + " -- " + upper.str();
}

std::vector<RangeSummary> summarize_ranges(const std::vector<AccuracyRecord>& records,
                                           double threshold, double slack) {
  std::map<std::pair<ModelKey, Estimator>, std::vector<const AccuracyRecord*>> series;
  for (const auto& r : records) series[{r.model, r.estimator}].push_back(&r);

  std::vector<RangeSummary> out;
  out.reserve(series.size());
  for (auto& [key, points] : series) {
    std::sort(points.begin(), points.end(),
              [](const AccuracyRecord* a, const AccuracyRecord* b) { return a->noise < b->noise; });
    RangeSummary s;
    s.model = key.first;
    s.estimator = key.second;

    std::optional<std::size_t> first, last;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (points[j]->accuracy() >= threshold) {
        if (!first) first = j;
        last = j;
      }
    }
    if (first) {
      s.reached = true;
      s.lower = points[*first]->noise;
      s.upper = points[*last]->noise;
      s.lower_open = *first == 0;
      s.upper_open = *last + 1 == points.size();
      for (std::size_t j = *first + 1; j < *last; ++j) {
        ++s.interior_points;
        if (points[j]->accuracy() < threshold) ++s.interior_below;
      }
      s.valid = static_cast<double>(s.interior_below) <=
                slack * static_cast<double>(s.interior_points);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace resit
