#include "biocomb/bfgs.h"

#include <cmath>

#include "biocomb/errors.h"

namespace biocomb {

namespace {

ObjectiveEvaluation checked(const SmoothObjective& objective, const Eigen::VectorXd& x) {
  ObjectiveEvaluation e = objective(x);
  if (std::isnan(e.value) || !e.gradient.allFinite()) throw NumericError("objective evaluated to NaN");
  return e;
}

}  // namespace

AscentResult maximize_bfgs(const SmoothObjective& objective, Eigen::VectorXd start, const AscentOptions& options) {
  const Eigen::Index n = start.size();
  AscentResult result;
  result.argmax = std::move(start);
  if (n == 0) {
    const ObjectiveEvaluation e = checked(objective, result.argmax);
    result.value = e.value;
    result.converged = true;
    return result;
  }

  ObjectiveEvaluation cur = checked(objective, result.argmax);
  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(n, n);
  bool identity = true;
  bool first_update = true;

  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    if (cur.gradient.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
      result.converged = true;
      break;
    }
    Eigen::VectorXd direction = inv_hessian * cur.gradient;
    double slope = cur.gradient.dot(direction);
    if (!(slope > 0.0)) {
      inv_hessian.setIdentity();
      identity = true;
      direction = cur.gradient;
      slope = cur.gradient.squaredNorm();
    }

    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd trial;
    ObjectiveEvaluation next;
    for (int b = 0; b <= options.max_backtracks; ++b) {
      trial = result.argmax + step * direction;
      next = objective(trial);
      if (std::isnan(next.value)) throw NumericError("objective evaluated to NaN");
      if (next.value >= cur.value + options.armijo * step * slope && next.gradient.allFinite()) {
        accepted = true;
        break;
      }
      step *= options.shrink;
    }
    if (!accepted) {
      if (identity) break;
      inv_hessian.setIdentity();
      identity = true;
      first_update = true;
      continue;
    }

    const Eigen::VectorXd s = trial - result.argmax;
    // curvature pair for the minimization of -f
    const Eigen::VectorXd y = cur.gradient - next.gradient;
    const double sy = s.dot(y);
    result.argmax = std::move(trial);
    const bool stalled = s.lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + result.argmax.lpNorm<Eigen::Infinity>());
    cur = std::move(next);
    if (stalled) {
      ++iter;
      break;
    }
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (first_update) {
        inv_hessian = (sy / y.squaredNorm()) * Eigen::MatrixXd::Identity(n, n);
        first_update = false;
      }
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd left = Eigen::MatrixXd::Identity(n, n) - rho * s * y.transpose();
      inv_hessian = left * inv_hessian * left.transpose() + rho * s * s.transpose();
      identity = false;
    }
  }
  if (!result.converged && cur.gradient.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
    result.converged = true;
  }
  result.value = cur.value;
  result.gradient_norm = cur.gradient.lpNorm<Eigen::Infinity>();
  result.iterations = iter;
  return result;
}

}  // namespace biocomb
