#include <cmath>
#include <numeric>

#include "doctest.h"
#include "resit/distributions.hpp"
#include "resit/errors.hpp"
#include "resit/regression.hpp"

using namespace resit;

namespace {

double sample_variance(const std::vector<double>& v) {
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

}  // namespace

TEST_CASE("noiseless line is recovered exactly") {
  const std::vector<double> x{0, 1, 2, 3};
  std::vector<double> y;
  for (double v : x) y.push_back(2 * v + 1);
  const auto m = fit(x, y, Transform::Identity);
  CHECK(m.slope == 2.0);
  CHECK(m.intercept == 1.0);
}

TEST_CASE("exact cubic model leaves no residual in cubed coordinates") {
  const auto x = sample(Distribution::Normal, 1.0, 200, Seed{1, 1});
  std::vector<double> y;
  for (double v : x) y.push_back(v * v * v);
  const auto m = fit(x, y, Transform::Cube);
  for (double r : residuals(m, x, y)) CHECK(std::fabs(r) <= 1e-9);
}

TEST_CASE("constant response gives zero slope") {
  const std::vector<double> x{1, 2, 3}, y{1, 1, 1};
  const auto m = fit(x, y, Transform::Identity);
  CHECK(m.slope == 0.0);
  CHECK(m.intercept == 1.0);
}

TEST_CASE("residuals are prediction minus observation") {
  const LinearModel identity{Transform::Identity, 1.0, 0.0};
  const std::vector<double> x{1, 2}, y{0, 0};
  CHECK(residuals(identity, x, y) == std::vector<double>{1, 2});

  const auto xs = sample(Distribution::Laplace, 1.0, 100, Seed{2, 2});
  const LinearModel m{Transform::SignedCubeRoot, -0.7, 0.25};
  for (double r : residuals(m, xs, m.predict(xs))) CHECK(r == 0.0);
}

TEST_CASE("held-out residual variance of a gaussian linear model") {
  ModelSpec spec{Structure::Linear, Distribution::Normal, Distribution::Normal, 1.0, 1000};
  const auto train = generate_pair(spec, Seed{77, 0});
  const auto test = generate_pair(spec, Seed{77, 1});
  const auto m = fit(train.x, train.y, Transform::Identity);
  CHECK(std::fabs(sample_variance(residuals(m, test.x, test.y)) - 1.0) <= 0.15);
}

TEST_CASE("fit satisfies the normal equations and residuals are orthogonal") {
  for (auto t : {Transform::Identity, Transform::Cube, Transform::SignedCubeRoot}) {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      ModelSpec spec{trial % 2 ? Structure::Cubic : Structure::Linear, Distribution::Uniform,
                     Distribution::Laplace, 0.1 + trial, 300};
      const auto p = generate_pair(spec, Seed{31, trial});
      const auto m = fit(p.x, p.y, t);
      const auto r = residuals(m, p.x, p.y);
      double sum_r = 0, sum_tr = 0, scale = 0, tx_scale = 0;
      for (std::size_t j = 0; j < r.size(); ++j) {
        const double tx = apply(t, p.x[j]);
        sum_r += r[j];
        sum_tr += tx * r[j];
        scale = std::max(scale, std::fabs(p.y[j]));
        tx_scale = std::max(tx_scale, std::fabs(tx));
      }
      const double n = static_cast<double>(r.size());
      CHECK(std::fabs(sum_r) <= 1e-6 * n * scale);
      CHECK(std::fabs(sum_tr) <= 1e-6 * n * scale * tx_scale);
      // the gradient of the squared error, relative to its natural size
      CHECK(std::fabs(sum_tr) <= 1e-8 * n * std::max(1.0, scale * tx_scale));
    }
  }
}

TEST_CASE("transforms") {
  CHECK(apply(Transform::Identity, -2.5) == -2.5);
  CHECK(apply(Transform::Cube, -2.0) == -8.0);
  CHECK(apply(Transform::SignedCubeRoot, -8.0) == doctest::Approx(-2.0));
  CHECK(apply(Transform::SignedCubeRoot, 27.0) == doctest::Approx(3.0));
  CHECK(name(Transform::SignedCubeRoot) == "signed-cbrt");
}

TEST_CASE("degenerate and malformed fits") {
  const std::vector<double> x{2, 2, 2, 2}, y{1, 2, 3, 4};
  CHECK_THROWS_AS(fit(x, y, Transform::Identity), RegressionError);
  CHECK_THROWS_AS(fit(x, y, Transform::Cube), RegressionError);
  const std::vector<double> short_x{1, 2}, short_y{1, 2};
  CHECK_THROWS_AS(fit(short_x, short_y, Transform::Identity), ParameterError);
  const std::vector<double> z{1, 2, 3};
  CHECK_THROWS_AS(fit(z, y, Transform::Identity), ParameterError);
}
