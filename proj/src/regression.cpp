#include "resit/regression.hpp"

#include <cmath>

#include "resit/errors.hpp"

namespace resit {

std::string_view name(Transform t) {
  switch (t) {
    case Transform::Identity: return "identity";
    case Transform::Cube: return "cube";
    case Transform::SignedCubeRoot: return "signed-cbrt";
  }
  return "?";
}

double apply(Transform t, double v) {
  switch (t) {
    case Transform::Identity: return v;
    case Transform::Cube: return v * v * v;
    case Transform::SignedCubeRoot: return std::cbrt(v);
  }
  return v;
}

std::vector<double> LinearModel::predict(std::span<const double> x) const {
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = predict(x[j]);
  return out;
}

LinearModel fit(std::span<const double> x, std::span<const double> y, Transform transform) {
  if (x.size() != y.size()) throw ParameterError("fit: x and y lengths differ");
  if (x.size() < 3) throw ParameterError("fit: need at least 3 points");
  const auto n = static_cast<double>(x.size());

  std::vector<double> t(x.size());
  double t_mean = 0, y_mean = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    t[j] = apply(transform, x[j]);
    t_mean += t[j];
    y_mean += y[j];
  }
  t_mean /= n;
  y_mean /= n;

  double sxx = 0, sxy = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double dt = t[j] - t_mean;
    sxx += dt * dt;
    sxy += dt * (y[j] - y_mean);
  }
  if (!(sxx > 0) || !std::isfinite(sxx)) {
    throw RegressionError("fit: regressor has zero variance after " +
                          std::string(name(transform)) + " transform");
  }
  LinearModel model;
  model.transform = transform;
  model.slope = sxy / sxx;
  model.intercept = y_mean - model.slope * t_mean;
  return model;
}

std::vector<double> residuals(const LinearModel& model, std::span<const double> x,
                              std::span<const double> y) {
  if (x.size() != y.size()) throw ParameterError("residuals: x and y lengths differ");
  std::vector<double> r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) r[j] = model.predict(x[j]) - y[j];
  return r;
}

}  // namespace resit
