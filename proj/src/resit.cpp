#include "resit/resit.hpp"

#include <cmath>
#include <optional>

#include "resit/errors.hpp"

namespace resit {

std::string_view name(Direction d) {
  switch (d) {
    case Direction::XtoY: return "X->Y";
    case Direction::YtoX: return "Y->X";
    case Direction::Undecided: return "?";
  }
  return "?";
}

Direction compare_scores(double score_xy, double score_yx) {
  if (score_xy < score_yx) return Direction::XtoY;
  if (score_xy > score_yx) return Direction::YtoX;
  return Direction::Undecided;
}

namespace {

struct Fit {
  std::optional<LinearModel> model;
  std::string error;
};

Fit try_fit(std::span<const double> x, std::span<const double> y, Transform t) {
  try {
    return {fit(x, y, t), {}};
  } catch (const std::exception& e) {
    return {std::nullopt, e.what()};
  }
}

}  // namespace

ResidualSplit prepare_residuals(const SamplePair& pair, Transform forward_transform,
                                Transform backward_transform, SplitConfig split) {
  const std::size_t n = pair.x.size();
  if (pair.y.size() != n) throw ParameterError("decide_direction: x and y lengths differ");
  if (n < 20) throw ParameterError("decide_direction: need at least 20 samples");
  if (!(split.train_fraction > 0 && split.train_fraction < 1)) {
    throw ParameterError("decide_direction: train_fraction must lie in (0, 1)");
  }
  const auto n_train = static_cast<std::size_t>(
      std::floor(split.train_fraction * static_cast<double>(n) + 1e-9));
  if (n_train < 3 || n - n_train < 3) {
    throw ParameterError("decide_direction: split leaves a partition with fewer than 3 samples");
  }

  const std::span<const double> x(pair.x), y(pair.y);
  const auto x_train = x.first(n_train), y_train = y.first(n_train);
  const auto x_test = x.subspan(n_train), y_test = y.subspan(n_train);

  const Fit fwd = try_fit(x_train, y_train, forward_transform);
  const Fit bwd = try_fit(y_train, x_train, backward_transform);
  if (!fwd.model && !bwd.model) {
    throw ResitError(FailedSide::Both,
                     "X->Y regression: " + fwd.error + "; Y->X regression: " + bwd.error);
  }
  if (!fwd.model) throw ResitError(FailedSide::Forward, "X->Y regression: " + fwd.error);
  if (!bwd.model) throw ResitError(FailedSide::Backward, "Y->X regression: " + bwd.error);

  ResidualSplit out;
  out.x_test.assign(x_test.begin(), x_test.end());
  out.y_test.assign(y_test.begin(), y_test.end());
  out.forward = *fwd.model;
  out.backward = *bwd.model;
  out.y_res = residuals(out.forward, x_test, y_test);
  out.x_res = residuals(out.backward, y_test, x_test);
  return out;
}

double score_pair(std::span<const double> a, std::span<const double> r, Estimator estimator) {
  if (a.size() != r.size()) throw ParameterError("score_pair: inputs differ in length");
  if (is_entropy(estimator)) return entropy_score(estimator, a) + entropy_score(estimator, r);
  return dependence_score(estimator, a, r);
}

Verdict decide_from_residuals(const ResidualSplit& split, Estimator estimator) {
  Verdict v;
  std::string fwd_error, bwd_error;
  try {
    v.score_xy = score_pair(split.x_test, split.y_res, estimator);
  } catch (const std::exception& e) {
    fwd_error = e.what();
  }
  try {
    v.score_yx = score_pair(split.y_test, split.x_res, estimator);
  } catch (const std::exception& e) {
    bwd_error = e.what();
  }
  const std::string tag(name(estimator));
  if (!fwd_error.empty() && !bwd_error.empty()) {
    throw ResitError(FailedSide::Both,
                     tag + " X->Y: " + fwd_error + "; " + tag + " Y->X: " + bwd_error);
  }
  if (!fwd_error.empty()) throw ResitError(FailedSide::Forward, tag + " X->Y: " + fwd_error);
  if (!bwd_error.empty()) throw ResitError(FailedSide::Backward, tag + " Y->X: " + bwd_error);
  v.direction = compare_scores(v.score_xy, v.score_yx);
  return v;
}

Verdict decide_direction(const SamplePair& pair, Transform forward_transform,
                         Transform backward_transform, Estimator estimator,
                         SplitConfig split) {
  return decide_from_residuals(
      prepare_residuals(pair, forward_transform, backward_transform, split), estimator);
}

std::string_view name(CubicHandling h) {
  switch (h) {
    case CubicHandling::CubeCause: return "cube-cause";
    case CubicHandling::CubeRegressor: return "cube-regressor";
    case CubicHandling::LinearBackward: return "linear-backward";
  }
  return "?";
}

RegressionPlan regression_plan(Structure structure, CubicHandling cubic) {
  if (structure == Structure::Linear) return {};
  switch (cubic) {
    case CubicHandling::CubeCause: return {true, Transform::Identity, Transform::Identity};
    case CubicHandling::CubeRegressor: return {false, Transform::Cube, Transform::SignedCubeRoot};
    case CubicHandling::LinearBackward: return {false, Transform::Cube, Transform::Identity};
  }
  return {};
}

ResidualSplit prepare_with_plan(SamplePair pair, const RegressionPlan& plan, SplitConfig split) {
  if (plan.cube_cause) {
    for (auto& v : pair.x) v = v * v * v;
  }
  return prepare_residuals(pair, plan.forward, plan.backward, split);
}

Verdict decide_with_plan(SamplePair pair, const RegressionPlan& plan, Estimator estimator,
                         SplitConfig split) {
  return decide_from_residuals(prepare_with_plan(std::move(pair), plan, split), estimator);
}

}  // namespace resit
