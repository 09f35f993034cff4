#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace resit {

/// Coordinate transform applied to the regressor before the affine fit.
enum class Transform { Identity, Cube, SignedCubeRoot };

std::string_view name(Transform t);
double apply(Transform t, double v);

/// y_hat = slope * t(x) + intercept. Immutable after fit().
struct LinearModel {
  Transform transform = Transform::Identity;
  double slope = 0.0;
  double intercept = 0.0;

  double predict(double x) const { return slope * apply(transform, x) + intercept; }
  std::vector<double> predict(std::span<const double> x) const;
};

/// Ordinary least squares of y on t(x), with intercept.
/// Throws RegressionError when t(x) has zero variance, ParameterError on
/// mismatched or too-short (< 3) input.
LinearModel fit(std::span<const double> x, std::span<const double> y, Transform transform);

/// predict(x) - y, i.e. prediction minus observation.
std::vector<double> residuals(const LinearModel& model, std::span<const double> x,
                              std::span<const double> y);

}  // namespace resit
