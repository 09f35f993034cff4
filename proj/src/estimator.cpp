#include "resit/estimator.hpp"

#include <string>

#include "resit/dependence.hpp"
#include "resit/errors.hpp"

namespace resit {

std::string_view name(Estimator e) {
  switch (e) {
    case Estimator::Hsic: return "HSIC";
    case Estimator::HsicIc: return "HSIC_IC";
    case Estimator::HsicIc2: return "HSIC_IC2";
    case Estimator::DistCov: return "DISTCOV";
    case Estimator::DistCorr: return "DISTCORR";
    case Estimator::Hoeffding: return "HOEFFDING";
    case Estimator::ShKnn: return "SH_KNN";
    case Estimator::ShKnn2: return "SH_KNN_2";
    case Estimator::ShKnn3: return "SH_KNN_3";
    case Estimator::ShMaxent1: return "SH_MAXENT1";
    case Estimator::ShMaxent2: return "SH_MAXENT2";
    case Estimator::ShSpacingV: return "SH_SPACING_V";
  }
  return "?";
}

std::optional<Estimator> parse_estimator(std::string_view tag) {
  for (Estimator e : kAllEstimators) {
    if (name(e) == tag) return e;
  }
  return std::nullopt;
}

bool is_entropy(Estimator e) {
  return static_cast<int>(e) >= static_cast<int>(Estimator::ShKnn);
}

std::optional<double> cholesky_eta(Estimator e) {
  if (e == Estimator::HsicIc) return 1e-6;
  if (e == Estimator::HsicIc2) return 1e-2;
  return std::nullopt;
}

std::optional<KnnParams> knn_params(Estimator e) {
  switch (e) {
    case Estimator::ShKnn: return KnnParams{3, NeighborSearch::BruteForce};
    case Estimator::ShKnn2: return KnnParams{3, NeighborSearch::KdTree};
    case Estimator::ShKnn3: return KnnParams{5, NeighborSearch::BruteForce};
    default: return std::nullopt;
  }
}

double dependence_score(Estimator e, std::span<const double> a, std::span<const double> b) {
  switch (e) {
    case Estimator::Hsic: return hsic(a, b);
    case Estimator::HsicIc:
    case Estimator::HsicIc2: return hsic_incomplete_cholesky(a, b, *cholesky_eta(e));
    case Estimator::DistCov: return dist_cov(a, b);
    case Estimator::DistCorr: return dist_corr(a, b);
    case Estimator::Hoeffding: return hoeffding_phi(a, b);
    default: break;
  }
  throw ParameterError(std::string(name(e)) + " is not an independence score");
}

double entropy_score(Estimator e, std::span<const double> y) {
  if (auto p = knn_params(e)) return knn_entropy(y, p->k, p->search);
  switch (e) {
    case Estimator::ShMaxent1: return maxent_entropy(y, MaxEntVariant::AbsoluteValue);
    case Estimator::ShMaxent2: return maxent_entropy(y, MaxEntVariant::Gaussian);
    case Estimator::ShSpacingV: return vasicek_entropy(y);
    default: break;
  }
  throw ParameterError(std::string(name(e)) + " is not an entropy estimator");
}

}  // namespace resit
