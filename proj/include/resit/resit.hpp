#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "resit/distributions.hpp"
#include "resit/estimator.hpp"
#include "resit/regression.hpp"

// Bivariate regression with subsequent independence test, decoupled
// estimation: regressions are fit on a leading training block and scored on
// the disjoint trailing test block.

namespace resit {

enum class Direction { XtoY, YtoX, Undecided };

std::string_view name(Direction d);

struct Verdict {
  Direction direction = Direction::Undecided;
  double score_xy = 0.0;  // C(X_test, Y_res)
  double score_yx = 0.0;  // C(Y_test, X_res)
};

/// XtoY iff score_xy < score_yx, YtoX iff greater, otherwise Undecided.
Direction compare_scores(double score_xy, double score_yx);

/// Leading block of round-down(train_fraction * n) samples trains, the rest
/// tests. No shuffling.
struct SplitConfig {
  double train_fraction = 0.8;
};

/// Which hypothesised direction an error came from.
enum class FailedSide { Forward, Backward, Both };

/// A RESIT step failed. `side` says whether the X->Y computation (regress y
/// on x, score X_test against Y_res), the Y->X one, or both failed.
class ResitError : public std::runtime_error {
 public:
  ResitError(FailedSide side, const std::string& what)
      : std::runtime_error(what), side_(side) {}
  FailedSide side() const { return side_; }

 private:
  FailedSide side_;
};

/// Test-block data and residuals for both hypothesised directions.
struct ResidualSplit {
  std::vector<double> x_test;
  std::vector<double> y_test;
  std::vector<double> y_res;  // reg1.predict(x_test) - y_test
  std::vector<double> x_res;  // reg2.predict(y_test) - x_test
  LinearModel forward;        // y on t_fwd(x)
  LinearModel backward;       // x on t_bwd(y)
};

/// Splits the pair and fits both regressions. Both are always attempted;
/// failures are reported together as ResitError.
ResidualSplit prepare_residuals(const SamplePair& pair, Transform forward_transform,
                                Transform backward_transform, SplitConfig split = {});

/// I(a, r) for independence scores, H(a) + H(r) for entropy estimators.
double score_pair(std::span<const double> a, std::span<const double> r, Estimator estimator);

/// Scores both directions of a prepared split and compares them.
Verdict decide_from_residuals(const ResidualSplit& split, Estimator estimator);

Verdict decide_direction(const SamplePair& pair, Transform forward_transform,
                         Transform backward_transform, Estimator estimator,
                         SplitConfig split = {});

/// How a cubic mechanism y = x^3 + n is made fit for linear regression.
enum class CubicHandling {
  CubeCause,       // replace x by x^3 and run the linear procedure on (x^3, y)
  CubeRegressor,   // keep x; regress y on x^3 and x on sgn(y)|y|^(1/3)
  LinearBackward,  // keep x; regress y on x^3 and x on y
};

std::string_view name(CubicHandling h);

/// Data transform plus regressor transforms used for one structure.
struct RegressionPlan {
  bool cube_cause = false;
  Transform forward = Transform::Identity;
  Transform backward = Transform::Identity;
};

/// Linear structures always use identity regressions on the raw pair.
RegressionPlan regression_plan(Structure structure,
                               CubicHandling cubic = CubicHandling::CubeCause);

/// Applies the plan's coordinate change (if any) and runs decide_direction.
Verdict decide_with_plan(SamplePair pair, const RegressionPlan& plan, Estimator estimator,
                         SplitConfig split = {});
ResidualSplit prepare_with_plan(SamplePair pair, const RegressionPlan& plan,
                                SplitConfig split = {});

}  // namespace resit
