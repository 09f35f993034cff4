#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Differential Shannon entropy estimators for scalar samples, in nats.

namespace resit {

enum class NeighborSearch { BruteForce, KdTree };

/// Per-call diagnostics. `clamped` counts neighbour distances or spacings
/// that were raised to kMinSpacing before taking the logarithm.
struct EntropyDiagnostics {
  std::size_t clamped = 0;
};

inline constexpr double kMinSpacing = 1e-300;

/// k-th nearest-neighbour distance of every point among the other points.
std::vector<double> kth_neighbor_distances(std::span<const double> y, unsigned k,
                                           NeighborSearch search);

/// Kozachenko-Leonenko estimate
///   log(T-1) - psi(k) + log(2) + (1/T) sum_t log rho_k(t)
/// for d = 1 (unit-ball volume 2). Requires T > k + 1 and at least k + 1
/// distinct values.
double knn_entropy(std::span<const double> y, unsigned k, NeighborSearch search,
                   EntropyDiagnostics* diag = nullptr);

/// True iff the brute-force and kd-tree paths agree within 1e-10.
bool knn_entropy_equivalence(std::span<const double> y, unsigned k);

enum class MaxEntVariant { AbsoluteValue = 1, Gaussian = 2 };

/// Maximum-entropy approximation
///   H(n) - [k1 (mean G1(y'))^2 + k2 (mean G2(y') - c)^2] + log(sigma)
/// with sigma = sqrt(sum y^2 / (T-1)) and y' = y / sigma. With
/// `center` set the sample mean is removed first; off by default.
double maxent_entropy(std::span<const double> y, MaxEntVariant variant, bool center = false);

/// Vasicek m-spacing estimate with m = floor(sqrt(T)) and order statistics
/// clamped to the sample extremes at both ends.
double vasicek_entropy(std::span<const double> y, EntropyDiagnostics* diag = nullptr);

}  // namespace resit
