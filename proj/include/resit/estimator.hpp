#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "resit/entropy.hpp"

namespace resit {

/// The twelve score estimators, independence scores first.
enum class Estimator {
  Hsic,
  HsicIc,
  HsicIc2,
  DistCov,
  DistCorr,
  Hoeffding,
  ShKnn,
  ShKnn2,
  ShKnn3,
  ShMaxent1,
  ShMaxent2,
  ShSpacingV,
};

inline constexpr std::array<Estimator, 12> kAllEstimators = {
    Estimator::Hsic,      Estimator::HsicIc,    Estimator::HsicIc2,   Estimator::DistCov,
    Estimator::DistCorr,  Estimator::Hoeffding, Estimator::ShKnn,     Estimator::ShKnn2,
    Estimator::ShKnn3,    Estimator::ShMaxent1, Estimator::ShMaxent2, Estimator::ShSpacingV,
};

/// Upper-case tag as used in tables and CSV, e.g. "HSIC_IC2", "SH_SPACING_V".
std::string_view name(Estimator e);
std::optional<Estimator> parse_estimator(std::string_view tag);

/// Entropy estimators score H(a) + H(r); the rest score I(a, r).
bool is_entropy(Estimator e);

/// Incomplete-Cholesky precision: 1e-6 for HSIC_IC, 1e-2 for HSIC_IC2.
std::optional<double> cholesky_eta(Estimator e);

struct KnnParams {
  unsigned k;
  NeighborSearch search;
};

/// SH_KNN: k=3 brute force, SH_KNN_2: k=3 kd-tree, SH_KNN_3: k=5 brute force.
std::optional<KnnParams> knn_params(Estimator e);

/// Independence score I(a, b) for the six dependence estimators.
double dependence_score(Estimator e, std::span<const double> a, std::span<const double> b);

/// Entropy H(y) for the six entropy estimators.
double entropy_score(Estimator e, std::span<const double> y);

}  // namespace resit
