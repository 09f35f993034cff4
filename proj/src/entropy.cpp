#include "resit/entropy.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "resit/errors.hpp"
#include "resit/kd_tree.hpp"

namespace resit {

namespace {

// Exhaustive scan keeping the k smallest distances. The scan wraps around
// from the point after the query, so on sorted input the running k-th best
// tightens at once. Blocks are rejected together when none of their points
// beats it.
double brute_kth_distance(std::span<const double> y, std::size_t self, unsigned k,
                          std::vector<double>& best) {
  constexpr std::size_t kBlock = 32;
  std::fill(best.begin(), best.end(), std::numeric_limits<double>::infinity());
  const double* p = y.data();
  const double q = p[self];
  auto consider = [&](std::size_t s) {
    const double d = std::abs(p[s] - q);
    if (d < best[k - 1]) {
      auto pos = std::upper_bound(best.begin(), best.end(), d);
      best.insert(pos, d);
      best.pop_back();
    }
  };
  auto scan = [&](std::size_t s, std::size_t end) {
    for (; s + kBlock <= end; s += kBlock) {
      const double worst = best[k - 1];
      int hits = 0;
      for (std::size_t j = 0; j < kBlock; ++j) hits += std::abs(p[s + j] - q) < worst;
      if (hits) {
        for (std::size_t j = 0; j < kBlock; ++j) consider(s + j);
      }
    }
    for (; s < end; ++s) consider(s);
  };
  scan(self + 1, y.size());
  scan(0, self);
  return best[k - 1];
}

// Sorted copy of the input. Estimates are summed over it so that they do not
// depend on the input order, not even in the last bit.
std::vector<double> sorted_copy(std::span<const double> y) {
  std::vector<double> s(y.begin(), y.end());
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<double> require_knn_input(std::span<const double> y, unsigned k) {
  if (k == 0) throw ParameterError("knn_entropy: k must be positive");
  if (y.size() <= static_cast<std::size_t>(k) + 1) {
    throw EstimatorError("knn_entropy: need more than k + 1 samples");
  }
  auto sorted = sorted_copy(y);
  std::size_t distinct = 1;
  for (std::size_t j = 1; j < sorted.size(); ++j) distinct += sorted[j] != sorted[j - 1];
  if (distinct < static_cast<std::size_t>(k) + 1) {
    throw EstimatorError("knn_entropy: need at least k + 1 distinct values");
  }
  return sorted;
}

double clamped_log(double v, EntropyDiagnostics* diag) {
  if (v < kMinSpacing) {
    v = kMinSpacing;
    if (diag) ++diag->clamped;
  }
  return std::log(v);
}

}  // namespace

std::vector<double> kth_neighbor_distances(std::span<const double> y, unsigned k,
                                           NeighborSearch search) {
  if (k == 0 || static_cast<std::size_t>(k) >= y.size()) {
    throw ParameterError("kth_neighbor_distances: k must be in [1, n-1]");
  }
  std::vector<double> out(y.size());
  if (search == NeighborSearch::KdTree) {
    const KdTree tree(y);
    for (std::size_t t = 0; t < y.size(); ++t) out[t] = tree.kth_neighbor_distance(t, k);
  } else {
    std::vector<double> best(k);
    for (std::size_t t = 0; t < y.size(); ++t) out[t] = brute_kth_distance(y, t, k, best);
  }
  return out;
}

double knn_entropy(std::span<const double> y, unsigned k, NeighborSearch search,
                   EntropyDiagnostics* diag) {
  const auto sorted = require_knn_input(y, k);
  const auto rho = kth_neighbor_distances(sorted, k, search);
  const double T = static_cast<double>(y.size());
  double sum_log = 0;
  for (double r : rho) sum_log += clamped_log(r, diag);
  return std::log(T - 1) - boost::math::digamma(static_cast<double>(k)) + std::log(2.0) +
         sum_log / T;
}

bool knn_entropy_equivalence(std::span<const double> y, unsigned k) {
  const double brute = knn_entropy(y, k, NeighborSearch::BruteForce);
  const double tree = knn_entropy(y, k, NeighborSearch::KdTree);
  return std::abs(brute - tree) <= 1e-10;
}

double maxent_entropy(std::span<const double> y, MaxEntVariant variant, bool center) {
  const std::size_t n = y.size();
  if (n < 3) throw EstimatorError("maxent_entropy: need at least 3 samples");
  const auto s = sorted_copy(y);
  const double T = static_cast<double>(n);

  double mean = 0;
  if (center) {
    for (double v : s) mean += v;
    mean /= T;
  }
  double ss = 0;
  for (double v : s) ss += (v - mean) * (v - mean);
  const double sigma = std::sqrt(ss / (T - 1));
  if (!(sigma > 0) || !std::isfinite(sigma)) {
    throw EstimatorError("maxent_entropy: zero scale");
  }

  const double sqrt3 = std::numbers::sqrt3;
  const double k1 = 36.0 / (8.0 * sqrt3 - 9.0);
  double k2 = 0, c = 0;
  if (variant == MaxEntVariant::AbsoluteValue) {
    k2 = 1.0 / (2.0 - 6.0 / std::numbers::pi);
    c = std::sqrt(2.0 / std::numbers::pi);
  } else {
    k2 = 24.0 / (16.0 * sqrt3 - 27.0);
    c = std::sqrt(0.5);
  }

  double g1 = 0, g2 = 0;
  for (double v : s) {
    const double z = (v - mean) / sigma;
    const double gauss = std::exp(-0.5 * z * z);
    g1 += z * gauss;
    g2 += variant == MaxEntVariant::AbsoluteValue ? std::abs(z) : gauss;
  }
  g1 /= T;
  g2 /= T;

  const double h_normal = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
  return h_normal - (k1 * g1 * g1 + k2 * (g2 - c) * (g2 - c)) + std::log(sigma);
}

double vasicek_entropy(std::span<const double> y, EntropyDiagnostics* diag) {
  const std::size_t n = y.size();
  if (n < 4) throw EstimatorError("vasicek_entropy: need at least 4 samples");
  const auto s = sorted_copy(y);
  const auto m = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  const double T = static_cast<double>(n);
  const double factor = T / (2.0 * static_cast<double>(m));

  double acc = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double hi = s[std::min(t + m, n - 1)];
    const double lo = s[t >= m ? t - m : 0];
    acc += std::log(factor) + clamped_log(hi - lo, diag);
  }
  return acc / T;
}

}  // namespace resit
