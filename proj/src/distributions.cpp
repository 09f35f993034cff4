#include "resit/distributions.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "resit/errors.hpp"

namespace resit {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

std::string_view name(Distribution d) {
  switch (d) {
    case Distribution::Normal: return "Normal";
    case Distribution::Uniform: return "Uniform";
    case Distribution::Laplace: return "Laplace";
  }
  return "?";
}

char symbol(Distribution d) {
  switch (d) {
    case Distribution::Normal: return 'N';
    case Distribution::Uniform: return 'U';
    case Distribution::Laplace: return 'L';
  }
  return '?';
}

std::string_view name(Structure s) {
  return s == Structure::Linear ? "Linear" : "Cubic";
}

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CounterStream::CounterStream(Seed seed, std::uint64_t stream) {
  std::uint64_t k = mix64(seed.base + kGolden);
  k = mix64(k ^ (seed.trial_index * 0xd1342543de82ef95ULL + kGolden));
  key_ = mix64(k ^ ((stream + 1) * 0xaf251af3b0f025b5ULL));
}

std::uint64_t CounterStream::bits(std::uint64_t counter) const noexcept {
  return mix64(key_ + (counter + 1) * kGolden);
}

double CounterStream::uniform(std::uint64_t counter) const noexcept {
  // 53 random bits centred in their cell: never 0 or 1.
  return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1p-53;
}

double standard_quantile(Distribution d, double u) {
  switch (d) {
    case Distribution::Normal:
      return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
    case Distribution::Uniform:
      return 2.0 * u - 1.0;
    case Distribution::Laplace: {
      const double v = u - 0.5;
      const double mag = -std::log1p(-2.0 * std::abs(v));
      return v < 0 ? -mag : mag;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> sample(Distribution d, double scale, std::size_t n, Seed seed,
                           std::uint64_t stream) {
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw ParameterError("sample: scale must be positive and finite");
  }
  if (n == 0) throw ParameterError("sample: n must be at least 1");
  const CounterStream gen(seed, stream);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = scale * standard_quantile(d, gen.uniform(j));
  }
  return out;
}

NoiseLevel NoiseLevel::parse(std::string_view text) {
  double v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParameterError("noise level: cannot parse '" + std::string(text) + "'");
  }
  const double h = v * 100.0;
  const double rounded = std::round(h);
  if (!(rounded >= 1) || std::abs(h - rounded) > 1e-6) {
    throw ParameterError("noise level: '" + std::string(text) +
                         "' is not a positive multiple of 0.01");
  }
  return NoiseLevel(static_cast<std::int64_t>(rounded));
}

std::string NoiseLevel::str() const {
  const auto whole = hundredths_ / 100;
  const auto frac = hundredths_ % 100;
  if (frac == 0) return std::to_string(whole);
  std::string s = std::to_string(whole) + ".";
  if (frac < 10) s += '0';
  s += std::to_string(frac);
  return s;
}

std::vector<NoiseLevel> i_grid() {
  std::vector<NoiseLevel> grid;
  grid.reserve(199);
  for (std::int64_t h = 1; h <= 100; ++h) grid.push_back(NoiseLevel::from_hundredths(h));
  for (std::int64_t v = 2; v <= 100; ++v) grid.push_back(NoiseLevel::from_hundredths(100 * v));
  return grid;
}

void ModelSpec::validate() const {
  if (!(i_factor > 0) || !std::isfinite(i_factor)) {
    throw ParameterError("model spec: i_factor must be positive");
  }
  if (n_samples < 10) throw ParameterError("model spec: n_samples must be at least 10");
}

SamplePair generate_pair(const ModelSpec& spec, Seed seed) {
  spec.validate();
  SamplePair pair;
  pair.x = sample(spec.cause, 1.0, spec.n_samples, seed, 0);
  pair.y = sample(spec.noise, spec.i_factor, spec.n_samples, seed, 1);
  for (std::size_t j = 0; j < spec.n_samples; ++j) {
    const double x = pair.x[j];
    pair.y[j] += spec.structure == Structure::Linear ? x : x * x * x;
  }
  return pair;
}

}  // namespace resit
