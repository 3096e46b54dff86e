#pragma once

#include <cstddef>
#include <vector>

#include "biocomb/auc.h"
#include "biocomb/core.h"
#include "biocomb/optimize.h"

namespace biocomb {

/// Empirical Youden index at cutoff c:
///   #{healthy <= c} / n0 - #{diseased <= c} / n1.
/// A score equal to the cutoff counts as test-negative.
double youden_at(const ScoreSplit& scores, double c);

/// Strictly increasing candidate cutoffs: midpoints between consecutive
/// distinct pooled scores, plus min - 1 and max + 1. The empirical Youden
/// step function attains its supremum on this set.
struct CutoffCandidates {
  std::vector<double> values;
};
CutoffCandidates candidate_cutoffs(const ScoreSplit& scores);

/// Result of the stage-2 sweep over all candidates.
struct CutoffSearch {
  double cutoff = 0.0;
  double youden = 0.0;
  std::size_t healthy_at_or_below = 0;   // at the returned cutoff
  std::size_t diseased_at_or_below = 0;  // at the returned cutoff
  /// Every candidate attaining the maximum, ascending.
  std::vector<double> tie_set;
};

/// Maximize youden_at over the candidates and pick a cutoff from the tie set.
///
/// Ties are detected exactly on the integer numerator a*n1 - b*n0. The
/// median of an even tie set is the mean of its two central candidates; when
/// that mean falls on a lower part of the step function (the two candidates
/// sit on separate plateaus) the lower central candidate is returned instead.
CutoffSearch search_cutoff(const ScoreSplit& scores, CutoffPolicy policy);

double estimate_cutoff(const ScoreSplit& scores, CutoffPolicy policy);

/// Two-stage fit with the default bandwidth (n1 n0)^(-0.1).
YoudenFit fit_two_stage(const BiomarkerPanel& panel, const OptimizerConfig& config,
                        CutoffPolicy policy = CutoffPolicy::Median);
YoudenFit fit_two_stage(const BiomarkerPanel& panel, const OptimizerConfig& config, CutoffPolicy policy,
                        Bandwidth h);

/// Simultaneous smoothed-Youden baseline, reported at its own fitted cutoff.
YoudenFit fit_simultaneous(const BiomarkerPanel& panel, const OptimizerConfig& config);
YoudenFit fit_simultaneous(const BiomarkerPanel& panel, const OptimizerConfig& config, Bandwidth h);

/// Sensitivity, specificity and Youden index of frozen (weights, cutoff) on
/// another panel. No refitting.
YoudenFit evaluate_fit(const YoudenFit& fit, const BiomarkerPanel& panel);

}  // namespace biocomb
