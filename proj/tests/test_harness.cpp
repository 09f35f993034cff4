#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include <sys/wait.h>

#include "doctest.h"
#include "resit/errors.hpp"
#include "resit/harness.hpp"
#include "resit/report.hpp"
#include "resit/sweep_config.hpp"
#include "svg_inspect.hpp"

using namespace resit;
namespace fs = std::filesystem;

namespace {

const ModelKey kLinearNN{Structure::Linear, Distribution::Normal, Distribution::Normal};
const ModelKey kLinearNU{Structure::Linear, Distribution::Normal, Distribution::Uniform};
const ModelKey kCubicLL{Structure::Cubic, Distribution::Laplace, Distribution::Laplace};

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("resit_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

unsigned successes(const ModelKey& m, double i, Estimator e, unsigned reps,
                   std::uint64_t base = 20210301) {
  unsigned ok = 0;
  const NoiseLevel level = NoiseLevel::from_hundredths(std::llround(i * 100));
  for (unsigned r = 0; r < reps; ++r) {
    const ModelSpec spec{m.structure, m.cause, m.noise, level.value(), 1000};
    ok += run_trial(spec, e, trial_seed(base, m, level, r)).direction == Direction::XtoY;
  }
  return ok;
}

SweepConfig small_config() {
  SweepConfig c;
  c.models = {kLinearNU, kCubicLL};
  c.noise_levels = {NoiseLevel::parse("0.2"), NoiseLevel::parse("1"), NoiseLevel::parse("5")};
  c.estimators = {Estimator::Hsic, Estimator::DistCorr, Estimator::ShKnn2, Estimator::ShSpacingV};
  c.repetitions = 6;
  c.n_samples = 200;
  return c;
}

AccuracyRecord record(const ModelKey& m, Estimator e, const char* level, unsigned ok,
                      unsigned reps = 100) {
  AccuracyRecord r;
  r.model = m;
  r.estimator = e;
  r.noise = NoiseLevel::parse(level);
  r.n_samples = 1000;
  r.repetitions = reps;
  r.successes = ok;
  r.base_seed = 1;
  return r;
}

}  // namespace

TEST_CASE("gaussian linear model is not identifiable") {
  const unsigned ok = successes(kLinearNN, 1.0, Estimator::Hsic, 100);
  CHECK(ok >= 30);
  CHECK(ok <= 70);
}

TEST_CASE("cubic laplace model is identified by the spacing estimator") {
  CHECK(successes(kCubicLL, 10.0, Estimator::ShSpacingV, 100) >= 95);
}

TEST_CASE("run_trial is deterministic") {
  const ModelSpec spec{Structure::Cubic, Distribution::Uniform, Distribution::Normal, 3.0, 500};
  const Seed seed = trial_seed(9, kCubicLL, NoiseLevel::parse("3"), 4);
  for (Estimator e : kAllEstimators) {
    const auto a = run_trial(spec, e, seed), b = run_trial(spec, e, seed);
    CHECK(a.direction == b.direction);
    CHECK(a.score_xy == b.score_xy);
    CHECK(a.score_yx == b.score_yx);
  }
}

TEST_CASE("trial seeds separate cells and repetitions but not estimators") {
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (const auto& m : all_models())
    for (const char* level : {"0.01", "0.5", "1", "100"})
      for (unsigned r = 0; r < 3; ++r) {
        const Seed s = trial_seed(1, m, NoiseLevel::parse(level), r);
        seen.insert({s.base, s.trial_index});
      }
  CHECK(seen.size() == 18 * 4 * 3);
  CHECK(trial_seed(1, kLinearNN, NoiseLevel::parse("1"), 0) ==
        trial_seed(1, kLinearNN, NoiseLevel::parse("1"), 0));
  CHECK_FALSE(trial_seed(1, kLinearNN, NoiseLevel::parse("1"), 0) ==
              trial_seed(2, kLinearNN, NoiseLevel::parse("1"), 0));
}

TEST_CASE("profiles") {
  const auto paper = paper_profile();
  CHECK(paper.models.size() == 18);
  CHECK(paper.noise_levels.size() == 199);
  CHECK(paper.estimators.size() == 12);
  CHECK(paper.repetitions == 100);
  CHECK(paper.n_samples == 1000);
  CHECK(paper.models.size() * paper.noise_levels.size() * paper.estimators.size() == 42984);
  const auto desk = desk_profile();
  CHECK(desk.models.size() == 18);
  CHECK(desk.estimators.size() == 12);
  CHECK(desk.repetitions == 100);
  const auto models = all_models();
  CHECK(std::set<ModelKey>(models.begin(), models.end()).size() == 18);
  CHECK(model_label(kCubicLL) == "L3+L");
  CHECK(model_label(kLinearNU) == "N+U");
  CHECK(model_file_stem(kLinearNU) == "linear_normal_uniform");
}

TEST_CASE("one cell, one record") {
  SweepConfig c;
  c.models = {kLinearNU};
  c.noise_levels = {NoiseLevel::parse("1")};
  c.estimators = {Estimator::Hsic};
  c.repetitions = 1;
  const auto records = run_sweep(c);
  REQUIRE(records.size() == 1);
  CHECK(records[0].repetitions == 1);
  CHECK(records[0].successes <= 1);
}

TEST_CASE("sweep output does not depend on the worker count") {
  auto c = small_config();
  const auto dir = scratch("workers");
  c.workers = 1;
  emit_csv(run_sweep(c), dir / "one.csv");
  c.workers = 8;
  emit_csv(run_sweep(c), dir / "eight.csv");
  emit_csv(run_sweep(c), dir / "eight_again.csv");
  const auto one = svg_inspect::read_file(dir / "one.csv");
  CHECK(one == svg_inspect::read_file(dir / "eight.csv"));
  CHECK(one == svg_inspect::read_file(dir / "eight_again.csv"));
  CHECK(read_lines(dir / "one.csv").size() == 2 * 3 * 4 + 1);
}

TEST_CASE("a cell recomputed alone matches the sweep") {
  auto c = small_config();
  const auto all = run_sweep(c);
  for (const auto& r : all) {
    if (r.noise != NoiseLevel::parse("1") || r.estimator == Estimator::Hsic) continue;
    SweepConfig one = c;
    one.models = {r.model};
    one.noise_levels = {r.noise};
    one.estimators = {r.estimator};
    const auto alone = run_sweep(one);
    REQUIRE(alone.size() == 1);
    CHECK(alone[0].successes == r.successes);
    CHECK(alone[0].repetitions == r.repetitions);
  }
}

TEST_CASE("records respect accuracy bounds") {
  for (const auto& r : run_sweep(small_config())) {
    CHECK(r.successes <= r.repetitions);
    CHECK(r.accuracy() >= 0.0);
    CHECK(r.accuracy() <= 1.0);
    CHECK(r.repetitions + r.errors == 6);
  }
}

TEST_CASE("failing trials are counted per cell") {
  SweepConfig c;
  c.models = {kLinearNN};
  c.noise_levels = {NoiseLevel::parse("1")};
  c.estimators = {Estimator::Hsic, Estimator::ShKnn3};
  c.repetitions = 5;
  c.n_samples = 20;
  c.split.train_fraction = 0.84;  // 16 training, 4 test samples: too few for k = 5
  const auto records = run_sweep(c);
  REQUIRE(records.size() == 2);
  CHECK(records[0].estimator == Estimator::Hsic);
  CHECK(records[0].errors == 0);
  CHECK(records[0].repetitions == 5);
  CHECK(records[1].errors == 5);
  CHECK(records[1].repetitions == 0);
  CHECK(records[1].accuracy() == 0.0);
  CHECK(records[1].first_error.find("SH_KNN_3") != std::string::npos);

  const auto dir = scratch("errors");
  CHECK(emit_error_log(records, dir / "errors.csv") == 1);
  CHECK(read_lines(dir / "errors.csv").size() == 2);
}

TEST_CASE("two seeds agree within monte carlo noise") {
  auto c = small_config();
  c.repetitions = 40;
  const auto a = run_sweep(c);
  c.base_seed = 777;
  const auto b = run_sweep(c);
  REQUIRE(a.size() == b.size());
  std::size_t flagged = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double p = 0.5 * (a[j].accuracy() + b[j].accuracy());
    const double sd = std::sqrt(std::max(p * (1 - p), 0.01) / c.repetitions);
    // the difference of two estimates has sqrt(2) times the single-run deviation
    if (std::fabs(a[j].accuracy() - b[j].accuracy()) > 3 * std::sqrt(2.0) * sd) ++flagged;
  }
  CHECK(flagged <= 1);
}

TEST_CASE("sweep validation") {
  SweepConfig c = small_config();
  c.repetitions = 0;
  CHECK_THROWS_AS(run_sweep(c), ParameterError);
  c = small_config();
  c.models.clear();
  CHECK_THROWS_AS(run_sweep(c), ParameterError);
}

TEST_CASE("range summaries") {
  const std::vector<const char*> grid{"0.1", "0.5", "1", "5", "10"};
  std::vector<AccuracyRecord> recs;
  for (const char* l : grid) recs.push_back(record(kLinearNU, Estimator::Hsic, l, 40));
  for (const char* l : grid) recs.push_back(record(kLinearNU, Estimator::ShKnn, l, 95));
  const std::vector<unsigned> bump{50, 92, 95, 91, 60};
  for (std::size_t j = 0; j < grid.size(); ++j)
    recs.push_back(record(kLinearNU, Estimator::ShSpacingV, grid[j], bump[j]));
  const std::vector<unsigned> holes{95, 20, 30, 91, 10};
  for (std::size_t j = 0; j < grid.size(); ++j)
    recs.push_back(record(kLinearNU, Estimator::DistCov, grid[j], holes[j]));

  const auto s = summarize_ranges(recs);
  REQUIRE(s.size() == 4);
  std::map<Estimator, RangeSummary> by;
  for (const auto& r : s) by[r.estimator] = r;

  CHECK_FALSE(by[Estimator::Hsic].reached);
  CHECK(by[Estimator::Hsic].cell_text().empty());
  CHECK(by[Estimator::ShKnn].lower_open);
  CHECK(by[Estimator::ShKnn].upper_open);
  CHECK(by[Estimator::ShKnn].cell_text() == "--");
  CHECK(by[Estimator::ShSpacingV].lower == NoiseLevel::parse("0.5"));
  CHECK(by[Estimator::ShSpacingV].upper == NoiseLevel::parse("5"));
  CHECK(by[Estimator::ShSpacingV].valid);
  CHECK(by[Estimator::ShSpacingV].cell_text() == "0.50 -- 5");
  CHECK(by[Estimator::DistCov].interior_points == 2);
  CHECK(by[Estimator::DistCov].interior_below == 2);
  CHECK_FALSE(by[Estimator::DistCov].valid);
  CHECK(by[Estimator::DistCov].cell_text() == "-- 5");

  const auto table = format_summary(s);
  CHECK(table.find("| SH_SPACING_V | 0.50 -- 5 |") != std::string::npos);
  CHECK(table.find("-- 5 *") != std::string::npos);
}

TEST_CASE("csv output") {
  const auto dir = scratch("csv");
  emit_csv({}, dir / "empty.csv");
  CHECK(read_lines(dir / "empty.csv") == std::vector<std::string>{kCsvHeader});

  emit_csv({record(kLinearNU, Estimator::HsicIc2, "0.6", 87)}, dir / "one.csv");
  const auto lines = read_lines(dir / "one.csv");
  REQUIRE(lines.size() == 2);
  CHECK(lines[1] == "Linear,Normal,Uniform,0.60,HSIC_IC2,1000,100,87,0.87,1");

  CHECK_THROWS(emit_csv({}, dir));  // a directory is not writable as a file
}

TEST_CASE("plot files") {
  const auto dir = scratch("plots");
  std::vector<AccuracyRecord> recs;
  for (const char* l : {"0.01", "0.1", "1", "10", "100"}) {
    recs.push_back(record(kCubicLL, Estimator::Hsic, l, 50));
    recs.push_back(record(kCubicLL, Estimator::ShMaxent2, l, 90));
  }
  const auto files = emit_plots(recs, dir);
  REQUIRE(files.size() == 1);
  CHECK(files[0].filename() == "cubic_laplace_laplace.svg");

  const auto plot = svg_inspect::parse(files[0]);
  CHECK(plot.model == "L3+L");
  CHECK(plot.closed);
  CHECK(plot.has_legend);
  REQUIRE(plot.series.size() == 2);
  REQUIRE(plot.reference_y.count("0.5") == 1);
  REQUIRE(plot.reference_y.count("0.9") == 1);
  for (const auto& s : plot.series) {
    CHECK(s.points.size() == 5);
    const double ref = plot.reference_y.at(s.estimator == "HSIC" ? "0.5" : "0.9");
    for (const auto& [x, y] : s.points) CHECK(y == doctest::Approx(ref));
    CHECK(s.dashed == (s.kind == "entropy"));
    CHECK(s.kind == (s.estimator == "HSIC" ? "dependence" : "entropy"));
    for (std::size_t j = 1; j < s.points.size(); ++j) {
      // decades are evenly spaced on a log axis
      CHECK(s.points[j].first - s.points[j - 1].first ==
            doctest::Approx(s.points[1].first - s.points[0].first));
    }
  }
}

TEST_CASE("sweep settings text") {
  CHECK(parse_models("all").size() == 18);
  CHECK(parse_models("linear").size() == 9);
  CHECK(parse_models("N3+U,L+L") ==
        std::vector<ModelKey>{{Structure::Cubic, Distribution::Normal, Distribution::Uniform},
                              {Structure::Linear, Distribution::Laplace, Distribution::Laplace}});
  CHECK_THROWS_AS(parse_models("N+Q"), ParameterError);
  CHECK(parse_estimators("entropy").size() == 6);
  CHECK(parse_estimators("hsic,SH_KNN_2") ==
        std::vector<Estimator>{Estimator::Hsic, Estimator::ShKnn2});
  CHECK_THROWS_AS(parse_estimators("HSIC,NOPE"), ParameterError);
  CHECK(parse_noise_levels("grid").size() == 199);
  const auto window = parse_noise_levels("grid:0.3:8");
  CHECK(window.size() == 78);
  CHECK(window.front() == NoiseLevel::parse("0.3"));
  CHECK(window.back() == NoiseLevel::parse("8"));
  CHECK(parse_noise_levels("0.1,1,10").size() == 3);
  CHECK(parse_cubic_handling("cube-regressor") == CubicHandling::CubeRegressor);
  CHECK_THROWS_AS(parse_cubic_handling("squash"), ParameterError);

  SweepConfig c = profile_config("desk");
  apply_setting(c, "reps", "7");
  apply_setting(c, "estimators", "DISTCOV");
  apply_setting(c, "train_fraction", "0.75");
  CHECK(c.repetitions == 7);
  CHECK(c.estimators == std::vector<Estimator>{Estimator::DistCov});
  CHECK(c.split.train_fraction == 0.75);
  CHECK_THROWS_AS(apply_setting(c, "colour", "blue"), ParameterError);
  CHECK_THROWS_AS(apply_setting(c, "workers", "many"), ParameterError);
  CHECK_THROWS_AS(profile_config("huge"), ParameterError);

  const auto dir = scratch("config");
  std::ofstream(dir / "sweep.conf") << "# comment\nmodels = N+U\n\ni = 1, 2\nrepetitions=3\n";
  const auto kv = read_key_values(dir / "sweep.conf");
  REQUIRE(kv.size() == 3);
  CHECK(kv[0] == std::pair<std::string, std::string>{"models", "N+U"});
  CHECK(kv[1].second == "1, 2");
}

TEST_CASE("command line end to end") {
  const auto dir = scratch("cli");
  std::ofstream(dir / "sweep.conf") << "models = N+U, L3+L\nestimators = HSIC, SH_SPACING_V\n"
                                       "i = 0.5, 5\nn_samples = 200\n";
  const std::string cli = RESIT_CLI_PATH;
  const std::string base = cli + " sweep --profile custom --config " + (dir / "sweep.conf").string() +
                           " --reps 4 --workers 2 -q --out-csv ";
  REQUIRE(std::system((base + (dir / "a.csv").string() + " --plots " + (dir / "plots").string() +
                       " --summary " + (dir / "summary.md").string())
                          .c_str()) == 0);
  REQUIRE(std::system((base + (dir / "b.csv").string()).c_str()) == 0);
  const auto lines = read_lines(dir / "a.csv");
  CHECK(lines.size() == 2 * 2 * 2 + 1);
  CHECK(lines[0] == kCsvHeader);
  CHECK(svg_inspect::read_file(dir / "a.csv") == svg_inspect::read_file(dir / "b.csv"));
  CHECK(fs::exists(dir / "plots" / "linear_normal_uniform.svg"));
  CHECK(fs::exists(dir / "plots" / "cubic_laplace_laplace.svg"));
  CHECK(svg_inspect::read_file(dir / "summary.md").find("| SH_SPACING_V |") != std::string::npos);

  // flags override the config file
  REQUIRE(std::system((base + (dir / "c.csv").string() + " --estimators DISTCORR").c_str()) == 0);
  CHECK(read_lines(dir / "c.csv").size() == 2 * 2 + 1);

  CHECK(std::system((cli + " sweep --models X+Y -q --out-csv " + (dir / "d.csv").string() +
                     " 2>/dev/null").c_str()) != 0);

  // a sweep with errored cells still writes its outputs and exits with 2
  std::ofstream(dir / "tiny.conf") << "n_samples = 20\ntrain_fraction = 0.84\n";
  const int status = std::system((cli + " sweep --profile custom --config " +
                                  (dir / "tiny.conf").string() +
                                  " --models N+N --i 1 --estimators HSIC,SH_KNN_3 --reps 2 -q "
                                  "--out-csv " + (dir / "e.csv").string() + " 2>/dev/null")
                                     .c_str());
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(read_lines(dir / "e.csv").size() == 3);
  CHECK(read_lines(dir / "e.csv.errors.csv").size() == 2);
}
