#include "biocomb/core.h"

#include <cmath>
#include <string>

#include "biocomb/errors.h"

namespace biocomb {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(CutoffPolicy policy) {
  switch (policy) {
    case CutoffPolicy::Median:
      return "median";
    case CutoffPolicy::Min:
      return "min";
    case CutoffPolicy::Max:
      return "max";
  }
  return "median";
}

CutoffPolicy parse_cutoff_policy(std::string_view text) {
  if (text == "median") return CutoffPolicy::Median;
  if (text == "min") return CutoffPolicy::Min;
  if (text == "max") return CutoffPolicy::Max;
  throw ValidationError("unknown cutoff policy '" + std::string(text) + "' (expected median|min|max)");
}

BiomarkerPanel::BiomarkerPanel(Eigen::MatrixXd measurements, std::vector<int> labels, LabelKind kind)
    : measurements_(std::move(measurements)), labels_(std::move(labels)), kind_(kind) {
  const auto n = static_cast<std::size_t>(measurements_.rows());
  if (n < 2) throw ValidationError("panel needs at least 2 rows");
  if (measurements_.cols() < 1) throw ValidationError("panel needs at least 1 biomarker");
  if (labels_.size() != n) {
    throw ValidationError("label count " + std::to_string(labels_.size()) + " does not match " +
                          std::to_string(n) + " measurement rows");
  }
  if (!measurements_.allFinite()) throw ValidationError("measurements must be finite");

  std::vector<Eigen::Index> pos, neg;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels_[i] == 1) {
      pos.push_back(static_cast<Eigen::Index>(i));
    } else if (labels_[i] == 0) {
      neg.push_back(static_cast<Eigen::Index>(i));
    } else {
      throw ValidationError("label at row " + std::to_string(i) + " is " + std::to_string(labels_[i]) +
                            "; labels must be 0 or 1");
    }
  }
  if (pos.empty() || neg.empty()) {
    throw ValidationError("both label classes must be present (n1 = " + std::to_string(pos.size()) +
                          ", n0 = " + std::to_string(neg.size()) + ")");
  }
  diseased_ = measurements_(pos, Eigen::all);
  healthy_ = measurements_(neg, Eigen::all);
}

BiomarkerPanel BiomarkerPanel::relabeled(std::vector<int> labels, LabelKind kind) const {
  return BiomarkerPanel(measurements_, std::move(labels), kind);
}

BiomarkerPanel BiomarkerPanel::subset(std::span<const std::size_t> rows) const {
  std::vector<Eigen::Index> idx;
  std::vector<int> labels;
  idx.reserve(rows.size());
  labels.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= labels_.size()) throw ValidationError("subset row index out of range");
    idx.push_back(static_cast<Eigen::Index>(r));
    labels.push_back(labels_[r]);
  }
  return BiomarkerPanel(measurements_(idx, Eigen::all), std::move(labels), kind_);
}

CombinationWeights::CombinationWeights(Eigen::VectorXd values, bool flipped)
    : values_(std::move(values)), flipped_(flipped) {}

CombinationWeights CombinationWeights::from_free(const Eigen::VectorXd& free, bool orientation_flipped) {
  if (!free.allFinite()) throw NumericError("combination weights must be finite");
  Eigen::VectorXd v(free.size() + 1);
  v(0) = 1.0;
  v.tail(free.size()) = free;
  return CombinationWeights(std::move(v), orientation_flipped);
}

CombinationWeights CombinationWeights::unit(bool orientation_flipped) {
  return CombinationWeights(Eigen::VectorXd::Ones(1), orientation_flipped);
}

CombinationWeights normalize_weights(const Eigen::VectorXd& raw) {
  if (raw.size() < 1) throw ValidationError("weights must have at least one entry");
  if (!raw.allFinite()) throw ValidationError("weights must be finite");
  if (std::abs(raw(0)) < 1e-10) {
    throw DegenerateNormalizationError("leading coefficient is zero; cannot normalize weights");
  }
  Eigen::VectorXd v = raw / raw(0);
  v(0) = 1.0;
  if (!v.allFinite()) throw NumericError("normalized weights overflowed");
  return CombinationWeights(std::move(v), raw(0) < 0.0);
}

ScoreSplit::ScoreSplit(std::vector<double> diseased_scores, std::vector<double> healthy_scores)
    : diseased(std::move(diseased_scores)), healthy(std::move(healthy_scores)) {
  if (diseased.empty() || healthy.empty()) {
    throw ValidationError("score split needs at least one score per class");
  }
  if (!all_finite(diseased) || !all_finite(healthy)) throw ValidationError("scores must be finite");
}

ScoreSplit project_scores(const BiomarkerPanel& panel, const Eigen::VectorXd& coefficients) {
  if (static_cast<std::size_t>(coefficients.size()) != panel.biomarkers()) {
    throw ValidationError("weight length " + std::to_string(coefficients.size()) + " does not match " +
                          std::to_string(panel.biomarkers()) + " biomarkers");
  }
  const Eigen::VectorXd d = panel.diseased() * coefficients;
  const Eigen::VectorXd h = panel.healthy() * coefficients;
  if (!d.allFinite() || !h.allFinite()) throw NumericError("combined scores overflowed");
  return ScoreSplit(std::vector<double>(d.begin(), d.end()), std::vector<double>(h.begin(), h.end()));
}

ScoreSplit project_scores(const BiomarkerPanel& panel, const CombinationWeights& weights) {
  return project_scores(panel, weights.effective());
}

}  // namespace biocomb
