#pragma once

#include <Eigen/Dense>
#include <functional>

namespace biocomb {

struct ObjectiveEvaluation {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

using SmoothObjective = std::function<ObjectiveEvaluation(const Eigen::VectorXd&)>;

struct AscentOptions {
  int max_iterations = 500;
  double gradient_tolerance = 1e-6;
  double armijo = 1e-4;
  double shrink = 0.5;
  int max_backtracks = 60;
};

struct AscentResult {
  Eigen::VectorXd argmax;
  double value = 0.0;
  double gradient_norm = 0.0;  // infinity norm at argmax
  int iterations = 0;
  bool converged = false;
};

/// BFGS ascent with Armijo backtracking (initial step 1). The inverse-Hessian
/// approximation is reset to a scaled identity whenever the search direction
/// stops being an ascent direction or a line search fails; a failure from the
/// identity ends the run. Throws NumericError if the objective is NaN.
AscentResult maximize_bfgs(const SmoothObjective& objective, Eigen::VectorXd start, const AscentOptions& options);

}  // namespace biocomb
