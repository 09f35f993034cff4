#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "resit/harness.hpp"

namespace resit {

inline constexpr const char* kCsvHeader =
    "structure,x_dist,noise_dist,i,estimator,n_samples,repetitions,successes,accuracy,base_seed";

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

/// One row per record in canonical order, preceded by kCsvHeader. Throws
/// std::runtime_error naming the path on I/O failure.
void emit_csv(std::vector<AccuracyRecord> records, const std::filesystem::path& path);

/// Side file listing cells with errored trials:
/// structure,x_dist,noise_dist,i,estimator,errors,first_error.
/// Returns the number of errored cells.
std::size_t emit_error_log(const std::vector<AccuracyRecord>& records,
                           const std::filesystem::path& path);

/// One SVG per model: accuracy against a log-scaled noise axis, one series
/// per estimator (solid: independence scores, dashed: entropy estimators),
/// reference lines at 0.5 and 0.9, and a legend. Returns the written files
/// in model order.
std::vector<std::filesystem::path> emit_plots(const std::vector<AccuracyRecord>& records,
                                              const std::filesystem::path& out_dir);

/// Markdown tables of threshold ranges, linear and cubic models separately,
/// estimators as rows and models as columns.
std::string format_summary(const std::vector<RangeSummary>& summaries);
void emit_summary(const std::vector<RangeSummary>& summaries, const std::filesystem::path& path);

}  // namespace resit
