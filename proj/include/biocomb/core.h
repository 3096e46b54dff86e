#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace biocomb {

enum class LabelKind { GoldStandard, ImperfectReference };

enum class CutoffPolicy { Median, Min, Max };

std::string_view to_string(CutoffPolicy policy);
CutoffPolicy parse_cutoff_policy(std::string_view text);

/// n x p biomarker measurements with binary labels (1 = diseased or positive
/// reference, 0 = healthy or negative reference).
///
/// The class-specific row blocks are materialized at construction since every
/// estimator works on them directly. Immutable once built.
class BiomarkerPanel {
 public:
  BiomarkerPanel(Eigen::MatrixXd measurements, std::vector<int> labels,
                 LabelKind kind = LabelKind::GoldStandard);

  std::size_t rows() const { return labels_.size(); }
  std::size_t biomarkers() const { return static_cast<std::size_t>(measurements_.cols()); }
  std::size_t n_diseased() const { return static_cast<std::size_t>(diseased_.rows()); }
  std::size_t n_healthy() const { return static_cast<std::size_t>(healthy_.rows()); }
  LabelKind label_kind() const { return kind_; }

  const Eigen::MatrixXd& measurements() const { return measurements_; }
  const std::vector<int>& labels() const { return labels_; }

  /// Label-1 rows in original order (n1 x p).
  const Eigen::MatrixXd& diseased() const { return diseased_; }
  /// Label-0 rows in original order (n0 x p).
  const Eigen::MatrixXd& healthy() const { return healthy_; }

  /// Same measurements under a different labelling.
  BiomarkerPanel relabeled(std::vector<int> labels, LabelKind kind) const;

  /// Rows at the given indices, in the given order.
  BiomarkerPanel subset(std::span<const std::size_t> rows) const;

 private:
  Eigen::MatrixXd measurements_;
  std::vector<int> labels_;
  LabelKind kind_;
  Eigen::MatrixXd diseased_;
  Eigen::MatrixXd healthy_;
};

/// Combination coefficients with the leading coefficient fixed at 1.
///
/// `orientation_flipped` records that the raw leading coefficient was
/// negative. The combined score is then -values'T, which keeps the score a
/// positive multiple of the raw combination; project_scores applies the sign.
class CombinationWeights {
 public:
  /// Weights (1, free...) with the given orientation.
  static CombinationWeights from_free(const Eigen::VectorXd& free, bool orientation_flipped = false);
  /// The single-biomarker weight (1).
  static CombinationWeights unit(bool orientation_flipped = false);

  const Eigen::VectorXd& values() const { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  bool orientation_flipped() const { return flipped_; }
  double sign() const { return flipped_ ? -1.0 : 1.0; }
  /// values()[1..p-1]
  Eigen::VectorXd free() const { return values_.tail(values_.size() - 1); }
  /// sign() * values(): the coefficients actually applied to measurements.
  Eigen::VectorXd effective() const { return sign() * values_; }

 private:
  CombinationWeights(Eigen::VectorXd values, bool flipped);
  friend CombinationWeights normalize_weights(const Eigen::VectorXd& raw);

  Eigen::VectorXd values_;
  bool flipped_ = false;
};

/// Divide by raw[0]. A negative raw[0] sets orientation_flipped.
/// Throws DegenerateNormalizationError when |raw[0]| < 1e-10.
CombinationWeights normalize_weights(const Eigen::VectorXd& raw);

/// Combined scores split by class.
struct ScoreSplit {
  std::vector<double> diseased;
  std::vector<double> healthy;

  ScoreSplit(std::vector<double> diseased_scores, std::vector<double> healthy_scores);

  std::size_t n_diseased() const { return diseased.size(); }
  std::size_t n_healthy() const { return healthy.size(); }
};

/// Scores under explicit coefficients, no normalization or sign handling.
ScoreSplit project_scores(const BiomarkerPanel& panel, const Eigen::VectorXd& coefficients);
/// Scores under normalized weights (sign applied).
ScoreSplit project_scores(const BiomarkerPanel& panel, const CombinationWeights& weights);

struct YoudenFit {
  CombinationWeights weights = CombinationWeights::unit();
  double cutoff = 0.0;
  double youden = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  CutoffPolicy cutoff_policy = CutoffPolicy::Median;
  /// False when the weight optimizer stopped without meeting its tolerance.
  bool converged = true;
};

}  // namespace biocomb
