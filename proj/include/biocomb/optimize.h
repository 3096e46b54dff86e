#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "biocomb/auc.h"
#include "biocomb/bfgs.h"
#include "biocomb/core.h"

namespace biocomb {

enum class LineSearch { Backtracking };

struct OptimizerConfig {
  int max_iterations = 500;
  double gradient_tolerance = 1e-6;
  int n_starts = 10;
  /// Starts 1..n-1 add N(0, start_spread^2) noise to each component of the
  /// unit-norm moment-start direction; each start then takes its own orientation.
  double start_spread = 0.5;
  std::uint64_t seed = 0x5eed;
  LineSearch line_search = LineSearch::Backtracking;

  /// Throws ValidationError when a field is out of range.
  void validate() const;
};

/// Moment-based starting point: the discriminant direction S^-1 (m1 - m0),
/// S the pooled within-class covariance, normalized by its first component. `flipped` is set when that component is negative, in
/// which case the fit is carried out on the sign-reversed score.
struct MomentStart {
  Eigen::VectorXd free;
  bool flipped = false;
};
MomentStart moment_start(const BiomarkerPanel& panel);

struct WeightEstimate {
  CombinationWeights weights = CombinationWeights::unit();
  double objective = 0.0;
  /// True when the winning start met the gradient tolerance.
  bool converged = true;
  int best_start = 0;
  /// Objective at each start point, before ascent.
  std::vector<double> start_values;
  /// Objective reached from each start.
  std::vector<double> final_values;
};

/// Stage 1: maximize the smoothed AUC over the free coefficients, best of
/// config.n_starts BFGS runs (lowest start index wins ties).
WeightEstimate estimate_weights(const BiomarkerPanel& panel, const OptimizerConfig& config, Bandwidth h);

/// Smoothed Youden objective of the simultaneous baseline,
///   (1/n0) sum_j Phi((c - s_j)/h) - (1/n1) sum_i Phi((c - s_i)/h),
/// with its gradient over (free coefficients..., c).
ObjectiveEvaluation evaluate_sim_objective(const BiomarkerPanel& panel, const CombinationWeights& weights,
                                           double cutoff, Bandwidth h);

struct SimEstimate {
  CombinationWeights weights = CombinationWeights::unit();
  double cutoff = 0.0;
  double objective = 0.0;
  bool converged = true;
  int best_start = 0;
  std::vector<double> start_values;
  std::vector<double> final_values;
};

/// Baseline: maximize the smoothed Youden objective jointly over the free
/// coefficients and the cutoff.
SimEstimate estimate_weights_sim(const BiomarkerPanel& panel, const OptimizerConfig& config, Bandwidth h);

}  // namespace biocomb
