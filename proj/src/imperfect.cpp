#include "biocomb/imperfect.h"

#include <cmath>
#include <string>

#include "biocomb/errors.h"
#include "biocomb/youden.h"

namespace biocomb {

namespace {

constexpr double kMinInformedness = 1e-9;

double checked_informedness(const ReferenceQuality& q) {
  const double k = q.informedness();
  if (k < kMinInformedness) {
    throw IllConditionedReferenceError("ppv + npv - 1 = " + std::to_string(k) +
                                       " is too small to invert the proxy relation");
  }
  return k;
}

}  // namespace

ReferenceQuality::ReferenceQuality(double ppv, double npv) : ppv_(ppv), npv_(npv) {
  if (!(ppv >= 0.0 && ppv <= 1.0) || !(npv >= 0.0 && npv <= 1.0)) {
    throw ValidationError("ppv and npv must lie in [0, 1]");
  }
  if (!(ppv + npv > 1.0)) throw ValidationError("reference must satisfy ppv + npv > 1");
}

ReferenceQuality ReferenceQuality::from_accuracy(double sensitivity, double specificity, double prevalence) {
  if (!(prevalence > 0.0 && prevalence < 1.0)) throw ValidationError("prevalence must lie in (0, 1)");
  if (!(sensitivity >= 0.0 && sensitivity <= 1.0) || !(specificity >= 0.0 && specificity <= 1.0)) {
    throw ValidationError("sensitivity and specificity must lie in [0, 1]");
  }
  const double true_pos = sensitivity * prevalence;
  const double false_pos = (1.0 - specificity) * (1.0 - prevalence);
  const double true_neg = specificity * (1.0 - prevalence);
  const double false_neg = (1.0 - sensitivity) * prevalence;
  if (true_pos + false_pos <= 0.0 || true_neg + false_neg <= 0.0) {
    throw ValidationError("reference never returns one of its two results");
  }
  return ReferenceQuality(true_pos / (true_pos + false_pos), true_neg / (true_neg + false_neg));
}

double proxy_auc(double true_auc, const ReferenceQuality& q) {
  if (!(true_auc >= 0.0 && true_auc <= 1.0)) throw ValidationError("AUC must lie in [0, 1]");
  const double s = q.ppv() + q.npv();
  return (s - 1.0) * true_auc - 0.5 * s + 1.0;
}

double true_auc_from_proxy(double proxy, const ReferenceQuality& q) {
  const double k = checked_informedness(q);
  return (proxy + 0.5 * (q.ppv() + q.npv()) - 1.0) / k;
}

double proxy_youden(double true_j, const ReferenceQuality& q) { return q.informedness() * true_j; }

double true_youden_from_proxy(double proxy_j, const ReferenceQuality& q) {
  return proxy_j / checked_informedness(q);
}

ImperfectFit fit_two_stage_imperfect(const BiomarkerPanel& panel, const OptimizerConfig& config,
                                     CutoffPolicy policy, const std::optional<ReferenceQuality>& q) {
  ImperfectFit out;
  out.fit = fit_two_stage(panel, config, policy);
  if (q) {
    const double corrected = true_youden_from_proxy(out.fit.youden, *q);
    out.corrected_youden = corrected;
    out.correction_out_of_range = !(corrected >= -1.0 && corrected <= 1.0);
  }
  return out;
}

}  // namespace biocomb
