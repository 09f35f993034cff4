#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace resit {

enum class Distribution { Normal, Uniform, Laplace };

std::string_view name(Distribution d);
/// Short symbol used in model labels: "N", "U", "L".
char symbol(Distribution d);

/// Identifies one reproducible random stream family. Two samplers given the
/// same (base, trial_index) produce bit-identical output.
struct Seed {
  std::uint64_t base = 0;
  std::uint64_t trial_index = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// Counter-based generator: the j-th uniform of a stream is a pure function
/// of (seed, stream, j), so draws can be produced in any order.
class CounterStream {
 public:
  CounterStream(Seed seed, std::uint64_t stream);

  std::uint64_t bits(std::uint64_t counter) const noexcept;
  /// Uniform on the open interval (0, 1).
  double uniform(std::uint64_t counter) const noexcept;

 private:
  std::uint64_t key_;
};

std::uint64_t mix64(std::uint64_t z) noexcept;

/// Inverse-CDF draw of the standard member (scale 1) of a family from a
/// uniform u in (0, 1).
double standard_quantile(Distribution d, double u);

/// n i.i.d. draws from the family at the given scale. Normal: sd = scale,
/// Uniform: [-scale, scale], Laplace: location 0, scale b = scale.
/// Output equals scale * sample(d, 1, n, seed, stream) exactly.
std::vector<double> sample(Distribution d, double scale, std::size_t n, Seed seed,
                           std::uint64_t stream = 0);

enum class Structure { Linear, Cubic };

std::string_view name(Structure s);

/// Noise scale factor stored as integer hundredths so that grid values are
/// exact in file names and CSV keys.
class NoiseLevel {
 public:
  constexpr NoiseLevel() = default;
  static constexpr NoiseLevel from_hundredths(std::int64_t h) { return NoiseLevel(h); }
  /// Parses "0.05", "3", "1.50". Rejects values that are not a positive
  /// multiple of 0.01.
  static NoiseLevel parse(std::string_view text);

  constexpr std::int64_t hundredths() const { return hundredths_; }
  double value() const { return static_cast<double>(hundredths_) / 100.0; }
  /// "0.05" below one, plain integers at and above one ("1", "100"),
  /// two decimals for non-integral values above one ("1.50").
  std::string str() const;

  friend constexpr auto operator<=>(const NoiseLevel&, const NoiseLevel&) = default;

 private:
  constexpr explicit NoiseLevel(std::int64_t h) : hundredths_(h) {}
  std::int64_t hundredths_ = 0;
};

/// {0.01, 0.02, ..., 1.00} union {1, 2, ..., 100}, ascending, 199 values.
std::vector<NoiseLevel> i_grid();

struct ModelSpec {
  Structure structure = Structure::Linear;
  Distribution cause = Distribution::Normal;
  Distribution noise = Distribution::Normal;
  double i_factor = 1.0;
  std::size_t n_samples = 1000;

  /// Throws ParameterError unless i_factor > 0 and n_samples >= 10.
  void validate() const;
};

struct SamplePair {
  std::vector<double> x;
  std::vector<double> y;
};

/// Cause drawn at scale 1 on stream 0, noise at scale i_factor on stream 1;
/// y = x + noise (Linear) or y = x^3 + noise (Cubic).
SamplePair generate_pair(const ModelSpec& spec, Seed seed);

}  // namespace resit
