#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "biocomb/core.h"

namespace biocomb {

/// Smoothing scale of the normal-CDF surrogate, in score units. Always > 0.
class Bandwidth {
 public:
  explicit Bandwidth(double h);
  double value() const { return h_; }

 private:
  double h_;
};

/// (n1 * n0)^(-0.1)
Bandwidth default_bandwidth(std::size_t n1, std::size_t n0);

/// Mann-Whitney AUC with ties counted 1/2, by the O(n1 n0) double loop.
/// This is the reference definition.
double empirical_auc(const ScoreSplit& scores);

/// Same value as empirical_auc via sorting, O(n log n). Both routes count
/// twice the statistic in integers before the final division, so the results
/// are bit-identical.
double empirical_auc_ranked(const ScoreSplit& scores);

/// (1 / n1 n0) sum_ij Phi((d_i - h_j) / h) on precomputed scores.
double smoothed_auc(const ScoreSplit& scores, Bandwidth h);

/// Smoothed AUC of the combined score on a panel.
double smoothed_auc(const BiomarkerPanel& panel, const CombinationWeights& weights, Bandwidth h);

/// Derivative of smoothed_auc with respect to the free coefficients
/// values()[1..p-1] (length p - 1). The orientation sign is accounted for.
Eigen::VectorXd smoothed_auc_gradient(const BiomarkerPanel& panel, const CombinationWeights& weights,
                                      Bandwidth h);

struct SmoothedAucEvaluation {
  double value = 0.0;
  Eigen::VectorXd gradient;  // over the free coefficients
};

/// Value and gradient in one pass over the n1 x n0 pairs.
SmoothedAucEvaluation evaluate_smoothed_auc(const BiomarkerPanel& panel, const CombinationWeights& weights,
                                            Bandwidth h);

}  // namespace biocomb
