#include "resit/sweep_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>

#include "resit/errors.hpp"

namespace resit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    auto part = trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (!part.empty()) parts.push_back(part);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::optional<Distribution> family(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'N': return Distribution::Normal;
    case 'U': return Distribution::Uniform;
    case 'L': return Distribution::Laplace;
    default: return std::nullopt;
  }
}

template <typename T>
T parse_number(std::string_view text, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParameterError(std::string(what) + ": cannot parse '" + std::string(text) + "'");
  }
  return v;
}

template <typename T>
std::vector<T> dedup_keep_order(const std::vector<T>& in) {
  std::vector<T> out;
  for (const auto& v : in) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<ModelKey> parse_models(std::string_view list) {
  std::vector<ModelKey> out;
  for (auto tok : split(list, ',')) {
    if (tok == "all") {
      for (const auto& m : all_models()) out.push_back(m);
      continue;
    }
    if (tok == "linear" || tok == "cubic") {
      const auto s = tok == "linear" ? Structure::Linear : Structure::Cubic;
      for (const auto& m : all_models()) {
        if (m.structure == s) out.push_back(m);
      }
      continue;
    }
    // "N+U" or "N3+U"
    const bool cubic = tok.size() == 4 && tok[1] == '3' && tok[2] == '+';
    const bool linear = tok.size() == 3 && tok[1] == '+';
    std::optional<Distribution> cause, noise;
    if (cubic || linear) {
      cause = family(tok[0]);
      noise = family(tok.back());
    }
    if (!cause || !noise) {
      throw ParameterError("models: unknown model '" + std::string(tok) +
                           "' (expected e.g. N+U or N3+U)");
    }
    out.push_back({cubic ? Structure::Cubic : Structure::Linear, *cause, *noise});
  }
  if (out.empty()) throw ParameterError("models: empty list");
  return dedup_keep_order(out);
}

std::vector<Estimator> parse_estimators(std::string_view list) {
  std::vector<Estimator> out;
  for (auto tok : split(list, ',')) {
    if (tok == "all" || tok == "dependence" || tok == "entropy") {
      for (Estimator e : kAllEstimators) {
        if (tok == "all" || (tok == "entropy") == is_entropy(e)) out.push_back(e);
      }
      continue;
    }
    std::string upper(tok);
    for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    auto e = parse_estimator(upper);
    if (!e) throw ParameterError("estimators: unknown estimator '" + std::string(tok) + "'");
    out.push_back(*e);
  }
  if (out.empty()) throw ParameterError("estimators: empty list");
  return dedup_keep_order(out);
}

std::vector<NoiseLevel> parse_noise_levels(std::string_view spec) {
  spec = trim(spec);
  if (spec == "grid") return i_grid();
  if (spec == "desk") return desk_profile().noise_levels;
  if (spec.starts_with("grid:")) {
    const auto parts = split(spec.substr(5), ':');
    if (parts.size() != 2) throw ParameterError("i: expected grid:LO:HI");
    const auto lo = NoiseLevel::parse(parts[0]);
    const auto hi = NoiseLevel::parse(parts[1]);
    std::vector<NoiseLevel> out;
    for (auto level : i_grid()) {
      if (level >= lo && level <= hi) out.push_back(level);
    }
    if (out.empty()) throw ParameterError("i: grid range selects no values");
    return out;
  }
  std::vector<NoiseLevel> out;
  for (auto tok : split(spec, ',')) out.push_back(NoiseLevel::parse(tok));
  if (out.empty()) throw ParameterError("i: empty list");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CubicHandling parse_cubic_handling(std::string_view text) {
  text = trim(text);
  for (auto h : {CubicHandling::CubeCause, CubicHandling::CubeRegressor,
                 CubicHandling::LinearBackward}) {
    if (text == name(h)) return h;
  }
  throw ParameterError("cubic_handling: expected cube-cause, cube-regressor or linear-backward, got '" +
                       std::string(text) + "'");
}

SweepConfig profile_config(std::string_view profile) {
  if (profile == "paper" || profile == "custom") return paper_profile();
  if (profile == "desk") return desk_profile();
  throw ParameterError("unknown profile '" + std::string(profile) + "'");
}

void apply_setting(SweepConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "models") {
    config.models = parse_models(value);
  } else if (key == "estimators") {
    config.estimators = parse_estimators(value);
  } else if (key == "i" || key == "i_values") {
    config.noise_levels = parse_noise_levels(value);
  } else if (key == "repetitions" || key == "reps") {
    config.repetitions = parse_number<unsigned>(value, "repetitions");
  } else if (key == "n_samples" || key == "samples") {
    config.n_samples = parse_number<std::size_t>(value, "n_samples");
  } else if (key == "base_seed" || key == "seed") {
    config.base_seed = parse_number<std::uint64_t>(value, "base_seed");
  } else if (key == "workers") {
    config.workers = parse_number<unsigned>(value, "workers");
  } else if (key == "cubic_handling") {
    config.cubic_handling = parse_cubic_handling(value);
  } else if (key == "train_fraction") {
    config.split.train_fraction = parse_number<double>(value, "train_fraction");
  } else {
    throw ParameterError("unknown setting '" + std::string(key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read config '" + path.string() + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    out.emplace_back(std::string(trim(view.substr(0, eq))), std::string(trim(view.substr(eq + 1))));
  }
  return out;
}

}  // namespace resit
