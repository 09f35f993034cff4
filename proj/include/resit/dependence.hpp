#pragma once

#include <span>
#include <vector>

// Pairwise dependence scores I(a, b) between two equally long samples. Larger
// means more dependent; RESIT prefers the direction with the smaller score.

namespace resit {

/// Median of the strictly positive pairwise distances |a_i - a_j|, i < j
/// (mean of the two middle values for an even count). Throws EstimatorError
/// when every pair coincides.
double median_pairwise_distance(std::span<const double> a);

/// Biased HSIC V-statistic trace(K H L H) / n^2 with Gaussian RBF kernels
/// exp(-d^2 / (2 sigma^2)), sigma from median_pairwise_distance per input.
double hsic(std::span<const double> a, std::span<const double> b);

/// Pivoted incomplete Cholesky factor G (n x rank, row-major) of the RBF Gram
/// matrix, pivoting until the trace of the residual K - G G^T is <= eta.
struct LowRankFactor {
  std::size_t n = 0;
  std::size_t rank = 0;
  std::vector<double> g;  // n * rank, row-major

  double at(std::size_t row, std::size_t col) const { return g[row * rank + col]; }
};

LowRankFactor incomplete_cholesky_rbf(std::span<const double> a, double bandwidth, double eta);

/// HSIC from low-rank factors of both Gram matrices: ||G_a^T H G_b||_F^2 / n^2.
/// Identical to hsic() when both factorizations reach full rank.
double hsic_incomplete_cholesky(std::span<const double> a, std::span<const double> b,
                                double eta);

/// Sample distance covariance on the norm scale: sqrt(mean(A_hat o B_hat))
/// with A_hat, B_hat the double-centred |a_i - a_j| and |b_i - b_j| matrices.
double dist_cov(std::span<const double> a, std::span<const double> b);
double dist_var(std::span<const double> a);

/// dist_cov(a, b) / sqrt(dist_var(a) * dist_var(b)), and 0 when that product
/// is not positive.
double dist_corr(std::span<const double> a, std::span<const double> b);

/// Average (mid) ranks, 1-based.
std::vector<double> average_ranks(std::span<const double> v);

/// Hoeffding's Phi of the bivariate empirical copula built from average
/// ranks / n, normalized with h2(2) = 90 so a comonotone sample is close to 1.
double hoeffding_phi(std::span<const double> a, std::span<const double> b);

}  // namespace resit
