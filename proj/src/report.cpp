#include "resit/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace resit {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string color_of(Estimator e) {
  switch (e) {
    case Estimator::Hsic: return "#1f77b4";
    case Estimator::HsicIc: return "#ff7f0e";
    case Estimator::HsicIc2: return "#d4a017";
    case Estimator::DistCov: return "#006400";
    case Estimator::DistCorr: return "#9370db";
    case Estimator::Hoeffding: return "#d62728";
    case Estimator::ShKnn: return "#8c564b";
    case Estimator::ShKnn2: return "#e377c2";
    case Estimator::ShKnn3: return "#7f7f7f";
    case Estimator::ShMaxent1: return "#bcbd22";
    case Estimator::ShMaxent2: return "#17becf";
    case Estimator::ShSpacingV: return "#000000";
  }
  return "#000000";
}

std::string panel_title(const ModelKey& m) {
  std::string t = "Y = ";
  t += symbol(m.cause);
  if (m.structure == Structure::Cubic) t += "³";
  t += " + ";
  t += symbol(m.noise);
  return t;
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void emit_csv(std::vector<AccuracyRecord> records, const std::filesystem::path& path) {
  sort_records(records);
  auto out = open_output(path);
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << name(r.model.structure) << ',' << name(r.model.cause) << ',' << name(r.model.noise)
        << ',' << r.noise.str() << ',' << name(r.estimator) << ',' << r.n_samples << ','
        << r.repetitions << ',' << r.successes << ',' << format_double(r.accuracy()) << ','
        << r.base_seed << '\n';
  }
  finish(out, path);
}

std::size_t emit_error_log(const std::vector<AccuracyRecord>& records,
                           const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "structure,x_dist,noise_dist,i,estimator,errors,first_error\n";
  std::size_t cells = 0;
  for (const auto& r : records) {
    if (r.errors == 0) continue;
    ++cells;
    out << name(r.model.structure) << ',' << name(r.model.cause) << ',' << name(r.model.noise)
        << ',' << r.noise.str() << ',' << name(r.estimator) << ',' << r.errors << ','
        << csv_escape(r.first_error) << '\n';
  }
  finish(out, path);
  return cells;
}

std::vector<std::filesystem::path> emit_plots(const std::vector<AccuracyRecord>& records,
                                              const std::filesystem::path& out_dir) {
  std::map<ModelKey, std::map<Estimator, std::vector<const AccuracyRecord*>>> by_model;
  for (const auto& r : records) by_model[r.model][r.estimator].push_back(&r);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + out_dir.string() + "': " + ec.message());

  constexpr double kWidth = 760, kHeight = 440;
  constexpr double kLeft = 60, kRight = 560, kTop = 40, kBottom = 390;

  std::vector<std::filesystem::path> written;
  for (auto& [model, series] : by_model) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (auto& [est, pts] : series) {
      std::sort(pts.begin(), pts.end(),
                [](const AccuracyRecord* a, const AccuracyRecord* b) { return a->noise < b->noise; });
      for (const auto* p : pts) {
        lo = std::min(lo, p->noise.value());
        hi = std::max(hi, p->noise.value());
      }
    }
    double log_lo = std::log10(lo), log_hi = std::log10(hi);
    if (log_hi - log_lo < 1e-9) {
      log_lo -= 0.5;
      log_hi += 0.5;
    }
    auto px = [&](double i) {
      return kLeft + (std::log10(i) - log_lo) / (log_hi - log_lo) * (kRight - kLeft);
    };
    auto py = [&](double acc) { return kBottom - acc * (kBottom - kTop); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" "
        << "font-size=\"11\" data-model=\"" << model_label(model) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text class=\"title\" x=\"" << (kLeft + kRight) / 2 << "\" y=\"22\" "
        << "text-anchor=\"middle\" font-size=\"14\">" << panel_title(model) << "</text>\n";

    // axes and grid
    svg << "<g class=\"axes\" stroke=\"#444\" fill=\"none\">\n"
        << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kRight - kLeft
        << "\" height=\"" << kBottom - kTop << "\"/>\n</g>\n";
    svg << "<g class=\"y-ticks\">\n";
    for (double acc : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      svg << "<line x1=\"" << kLeft - 4 << "\" x2=\"" << kLeft << "\" y1=\"" << py(acc)
          << "\" y2=\"" << py(acc) << "\" stroke=\"#444\"/>"
          << "<text x=\"" << kLeft - 7 << "\" y=\"" << py(acc) + 4
          << "\" text-anchor=\"end\">" << fixed(acc) << "</text>\n";
    }
    svg << "</g>\n<g class=\"x-ticks\">\n";
    for (int e = static_cast<int>(std::ceil(log_lo - 1e-9));
         e <= static_cast<int>(std::floor(log_hi + 1e-9)); ++e) {
      const double v = std::pow(10.0, e);
      svg << "<line x1=\"" << px(v) << "\" x2=\"" << px(v) << "\" y1=\"" << kBottom
          << "\" y2=\"" << kBottom + 4 << "\" stroke=\"#444\"/>"
          << "<text x=\"" << px(v) << "\" y=\"" << kBottom + 16 << "\" text-anchor=\"middle\">"
          << format_double(v) << "</text>\n";
    }
    svg << "</g>\n"
        << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 18
        << "\" text-anchor=\"middle\">i-factor (log scale)</text>\n"
        << "<text x=\"16\" y=\"" << (kTop + kBottom) / 2 << "\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 16 " << (kTop + kBottom) / 2 << ")\">accuracy</text>\n";

    for (double level : {0.5, 0.9}) {
      svg << "<line class=\"reference\" data-level=\"" << level << "\" x1=\"" << kLeft
          << "\" x2=\"" << kRight << "\" y1=\"" << py(level) << "\" y2=\"" << py(level)
          << "\" stroke=\"#999\" stroke-width=\"1\" stroke-dasharray=\"2,3\"/>\n";
    }

    svg << "<g class=\"series-group\" fill=\"none\" stroke-width=\"1.5\">\n";
    for (const auto& [est, pts] : series) {
      const bool entropy = is_entropy(est);
      svg << "<polyline class=\"series " << (entropy ? "entropy" : "dependence")
          << "\" data-estimator=\"" << name(est) << "\" stroke=\"" << color_of(est) << '"';
      if (entropy) svg << " stroke-dasharray=\"6,4\"";
      svg << " points=\"";
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (j) svg << ' ';
        svg << fixed(px(pts[j]->noise.value())) << ',' << fixed(py(pts[j]->accuracy()));
      }
      svg << "\"/>\n";
      if (pts.size() == 1) {
        svg << "<circle cx=\"" << fixed(px(pts[0]->noise.value())) << "\" cy=\""
            << fixed(py(pts[0]->accuracy())) << "\" r=\"2.5\" fill=\"" << color_of(est)
            << "\"/>\n";
      }
    }
    svg << "</g>\n<g class=\"legend\">\n";
    double ly = kTop + 6;
    for (const auto& [est, pts] : series) {
      svg << "<line x1=\"" << kRight + 16 << "\" x2=\"" << kRight + 46 << "\" y1=\"" << ly
          << "\" y2=\"" << ly << "\" stroke=\"" << color_of(est) << "\" stroke-width=\"1.5\"";
      if (is_entropy(est)) svg << " stroke-dasharray=\"6,4\"";
      svg << "/><text x=\"" << kRight + 52 << "\" y=\"" << ly + 4 << "\">" << name(est)
          << "</text>\n";
      ly += 18;
    }
    svg << "</g>\n</svg>\n";

    const auto path = out_dir / (model_file_stem(model) + ".svg");
    auto out = open_output(path);
    out << svg.str();
    finish(out, path);
    written.push_back(path);
  }
  return written;
}

std::string format_summary(const std::vector<RangeSummary>& summaries) {
  std::ostringstream os;
  os << "# Noise ranges reaching the accuracy threshold\n\n"
     << "Cells give the first and last i-factor at or above the threshold. "
     << "Empty: never reached. Open side: reached at the grid edge. "
     << "`*`: more than the allowed fraction of interior points fell below.\n";

  for (Structure s : {Structure::Linear, Structure::Cubic}) {
    std::vector<ModelKey> models;
    std::set<Estimator> estimators;
    std::map<std::pair<ModelKey, Estimator>, const RangeSummary*> cell;
    for (const auto& m : all_models()) {
      if (m.structure != s) continue;
      bool present = false;
      for (const auto& r : summaries) {
        if (r.model == m) {
          present = true;
          estimators.insert(r.estimator);
          cell[{m, r.estimator}] = &r;
        }
      }
      if (present) models.push_back(m);
    }
    if (models.empty()) continue;

    os << "\n## " << (s == Structure::Linear ? "Linear models: Y = X + N" : "Nonlinear models: Y = X^3 + N")
       << "\n\n| Estimator |";
    for (const auto& m : models) os << ' ' << model_label(m) << " |";
    os << "\n|---|";
    for (std::size_t j = 0; j < models.size(); ++j) os << "---|";
    os << '\n';
    for (Estimator e : estimators) {
      os << "| " << name(e) << " |";
      for (const auto& m : models) {
        auto it = cell.find({m, e});
        std::string text;
        if (it != cell.end()) {
          text = it->second->cell_text();
          if (it->second->reached && !it->second->valid) text += " *";
        }
        os << ' ' << text << " |";
      }
      os << '\n';
    }
  }
  return os.str();
}

void emit_summary(const std::vector<RangeSummary>& summaries, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << format_summary(summaries);
  finish(out, path);
}

}  // namespace resit
