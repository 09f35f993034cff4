#include "resit/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "resit/errors.hpp"

namespace resit {

namespace {

void require_pair(std::span<const double> a, std::span<const double> b, std::size_t min_n,
                  const char* who) {
  if (a.size() != b.size()) {
    throw ParameterError(std::string(who) + ": inputs differ in length");
  }
  if (a.size() < min_n) {
    throw ParameterError(std::string(who) + ": need at least " + std::to_string(min_n) +
                         " samples");
  }
}

// Full symmetric RBF Gram matrix, row-major.
std::vector<double> rbf_gram(std::span<const double> a, double bandwidth) {
  const std::size_t n = a.size();
  const double gamma = 1.0 / (2.0 * bandwidth * bandwidth);
  std::vector<double> k(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    k[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = a[i] - a[j];
      const double v = std::exp(-gamma * d * d);
      k[i * n + j] = v;
      k[j * n + i] = v;
    }
  }
  return k;
}

// Mean of |v_i - v_j| over j, per row, and the grand mean.
void distance_means(std::span<const double> v, std::vector<double>& row, double& grand) {
  const std::size_t n = v.size();
  row.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(v[i] - v[j]);
      row[i] += d;
      row[j] += d;
    }
  }
  grand = 0;
  for (auto& r : row) {
    grand += r;
    r /= static_cast<double>(n);
  }
  grand /= static_cast<double>(n) * static_cast<double>(n);
}

}  // namespace

double median_pairwise_distance(std::span<const double> a) {
  std::vector<double> d;
  d.reserve(a.size() * (a.size() - 1) / 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double v = std::abs(a[i] - a[j]);
      if (v > 0) d.push_back(v);
    }
  }
  if (d.empty()) throw EstimatorError("RBF bandwidth undefined for constant input");
  const std::size_t mid = d.size() / 2;
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid), d.end());
  const double upper = d[mid];
  if (d.size() % 2 == 1) return upper;
  const double lower = *std::max_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double hsic(std::span<const double> a, std::span<const double> b) {
  require_pair(a, b, 4, "hsic");
  const std::size_t n = a.size();
  const auto k = rbf_gram(a, median_pairwise_distance(a));
  const auto l = rbf_gram(b, median_pairwise_distance(b));

  // trace(K H L H) = sum_ij (H K H)_ij L_ij
  std::vector<double> row(n, 0.0);
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row[i] += k[i * n + j];
    total += row[i];
  }
  const double nn = static_cast<double>(n);
  for (auto& r : row) r /= nn;
  const double grand = total / (nn * nn);

  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = grand - row[i];
    for (std::size_t j = 0; j < n; ++j) {
      acc += (k[i * n + j] + ri - row[j]) * l[i * n + j];
    }
  }
  return std::max(0.0, acc / (nn * nn));
}

LowRankFactor incomplete_cholesky_rbf(std::span<const double> a, double bandwidth, double eta) {
  if (!(eta > 0)) throw ParameterError("incomplete Cholesky: eta must be positive");
  const std::size_t n = a.size();
  const double gamma = 1.0 / (2.0 * bandwidth * bandwidth);

  std::vector<double> diag(n, 1.0);
  std::vector<std::vector<double>> cols;
  double residual = static_cast<double>(n);

  while (residual > eta && cols.size() < n) {
    const auto pivot = static_cast<std::size_t>(
        std::max_element(diag.begin(), diag.end()) - diag.begin());
    const double pivot_val = diag[pivot];
    if (!(pivot_val > 0)) break;
    const double root = std::sqrt(pivot_val);

    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = a[i] - a[pivot];
      double v = std::exp(-gamma * d * d);
      for (const auto& c : cols) v -= c[i] * c[pivot];
      col[i] = v / root;
    }
    col[pivot] = root;
    residual = 0;
    for (std::size_t i = 0; i < n; ++i) {
      diag[i] = std::max(0.0, diag[i] - col[i] * col[i]);
      residual += diag[i];
    }
    diag[pivot] = 0;
    cols.push_back(std::move(col));
  }

  LowRankFactor f;
  f.n = n;
  f.rank = cols.size();
  f.g.resize(n * f.rank);
  for (std::size_t c = 0; c < f.rank; ++c) {
    for (std::size_t i = 0; i < n; ++i) f.g[i * f.rank + c] = cols[c][i];
  }
  return f;
}

double hsic_incomplete_cholesky(std::span<const double> a, std::span<const double> b,
                                double eta) {
  require_pair(a, b, 4, "hsic_incomplete_cholesky");
  const std::size_t n = a.size();
  auto fa = incomplete_cholesky_rbf(a, median_pairwise_distance(a), eta);
  auto fb = incomplete_cholesky_rbf(b, median_pairwise_distance(b), eta);

  auto center = [n](LowRankFactor& f) {
    for (std::size_t c = 0; c < f.rank; ++c) {
      double m = 0;
      for (std::size_t i = 0; i < n; ++i) m += f.g[i * f.rank + c];
      m /= static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) f.g[i * f.rank + c] -= m;
    }
  };
  center(fa);
  center(fb);

  // ||G_a^T G_b||_F^2 over the centred factors
  std::vector<double> cross(fa.rank * fb.rank, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < fa.rank; ++p) {
      const double ga = fa.at(i, p);
      for (std::size_t q = 0; q < fb.rank; ++q) cross[p * fb.rank + q] += ga * fb.at(i, q);
    }
  }
  double acc = 0;
  for (double c : cross) acc += c * c;
  const double nn = static_cast<double>(n);
  return acc / (nn * nn);
}

double dist_cov(std::span<const double> a, std::span<const double> b) {
  require_pair(a, b, 2, "dist_cov");
  const std::size_t n = a.size();
  std::vector<double> ra, rb;
  double ga = 0, gb = 0;
  distance_means(a, ra, ga);
  distance_means(b, rb, gb);

  // Off-diagonal pairs counted twice; diagonal of the centred matrices is
  // (-2 r_i + g) since |a_i - a_i| = 0.
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += (ga - 2 * ra[i]) * (gb - 2 * rb[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double ca = std::abs(a[i] - a[j]) - ra[i] - ra[j] + ga;
      const double cb = std::abs(b[i] - b[j]) - rb[i] - rb[j] + gb;
      acc += 2 * ca * cb;
    }
  }
  const double nn = static_cast<double>(n);
  return std::sqrt(std::max(0.0, acc / (nn * nn)));
}

double dist_var(std::span<const double> a) { return dist_cov(a, a); }

double dist_corr(std::span<const double> a, std::span<const double> b) {
  const double cov = dist_cov(a, b);
  const double denom = dist_var(a) * dist_var(b);
  if (!(denom > 0)) return 0.0;
  return std::min(1.0, cov / std::sqrt(denom));
}

std::vector<double> average_ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
  std::vector<double> ranks(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && v[order[end]] == v[order[start]]) ++end;
    const double mid = 0.5 * static_cast<double>(start + 1 + end);  // mean of start+1..end
    for (std::size_t r = start; r < end; ++r) ranks[order[r]] = mid;
    start = end;
  }
  return ranks;
}

double hoeffding_phi(std::span<const double> a, std::span<const double> b) {
  require_pair(a, b, 2, "hoeffding_phi");
  const std::size_t n = a.size();
  const double nn = static_cast<double>(n);
  auto u = average_ranks(a);
  auto v = average_ranks(b);
  for (auto& x : u) x /= nn;
  for (auto& x : v) x /= nn;

  // Closed-form integral of (C_n - Pi)^2 over the unit square.
  double joint = 0;
  for (std::size_t j = 0; j < n; ++j) {
    joint += (1 - u[j]) * (1 - v[j]);
    for (std::size_t k = j + 1; k < n; ++k) {
      joint += 2 * (1 - std::max(u[j], u[k])) * (1 - std::max(v[j], v[k]));
    }
  }
  double cross = 0;
  for (std::size_t j = 0; j < n; ++j) cross += (1 - u[j] * u[j]) * (1 - v[j] * v[j]);

  constexpr double h2 = 90.0;
  const double integral = joint / (nn * nn) - cross / (2 * nn) + 1.0 / 9.0;
  return std::sqrt(std::max(0.0, h2 * integral));
}

}  // namespace resit
