#pragma once

#include <optional>

#include "biocomb/core.h"
#include "biocomb/optimize.h"

namespace biocomb {

/// Predictive values of an imperfect reference test R against the true
/// disease status D: ppv = P(D=1 | R=1), npv = P(D=0 | R=0).
class ReferenceQuality {
 public:
  /// Requires ppv, npv in [0, 1] and ppv + npv > 1.
  ReferenceQuality(double ppv, double npv);

  /// Predictive values implied by a reference with the given sensitivity and
  /// specificity at disease prevalence `prevalence` (Bayes' rule).
  static ReferenceQuality from_accuracy(double sensitivity, double specificity, double prevalence);

  double ppv() const { return ppv_; }
  double npv() const { return npv_; }
  /// ppv + npv - 1, the factor linking true and proxy indices.
  double informedness() const { return ppv_ + npv_ - 1.0; }

 private:
  double ppv_;
  double npv_;
};

/// AUC against R for a score whose AUC against D is `true_auc`:
///   (ppv + npv - 1) AUC - (ppv + npv)/2 + 1
double proxy_auc(double true_auc, const ReferenceQuality& q);
/// Inverse of proxy_auc. Throws IllConditionedReferenceError when
/// ppv + npv - 1 < 1e-9.
double true_auc_from_proxy(double proxy, const ReferenceQuality& q);

/// (ppv + npv - 1) J
double proxy_youden(double true_j, const ReferenceQuality& q);
/// J~ / (ppv + npv - 1), with the same conditioning guard as above.
double true_youden_from_proxy(double proxy_j, const ReferenceQuality& q);

struct ImperfectFit {
  /// Two-stage fit against the reference labels. Weights and cutoff are
  /// reported as fitted; the Youden index here is the proxy index.
  YoudenFit fit;
  std::optional<double> corrected_youden;
  /// Set when the corrected value lies outside [-1, 1]. The value is kept as is.
  bool correction_out_of_range = false;
};

/// Two-stage pipeline treating the reference labels as the outcome. If `q` is
/// given, also reports the proxy Youden index divided by ppv + npv - 1.
ImperfectFit fit_two_stage_imperfect(const BiomarkerPanel& panel, const OptimizerConfig& config,
                                     CutoffPolicy policy, const std::optional<ReferenceQuality>& q);

}  // namespace biocomb
