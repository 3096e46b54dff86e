#include "biocomb/youden.h"

#include <algorithm>
#include <cstdint>

#include "biocomb/errors.h"

namespace biocomb {

namespace {

std::size_t count_at_or_below(const std::vector<double>& v, double c) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [c](double x) { return x <= c; }));
}

double youden_from_counts(std::size_t healthy_le, std::size_t n0, std::size_t diseased_le, std::size_t n1) {
  return static_cast<double>(healthy_le) / static_cast<double>(n0) -
         static_cast<double>(diseased_le) / static_cast<double>(n1);
}

YoudenFit fill_fit(const CombinationWeights& weights, double cutoff, const ScoreSplit& scores) {
  const std::size_t a = count_at_or_below(scores.healthy, cutoff);
  const std::size_t b = count_at_or_below(scores.diseased, cutoff);
  YoudenFit fit;
  fit.weights = weights;
  fit.cutoff = cutoff;
  fit.specificity = static_cast<double>(a) / static_cast<double>(scores.n_healthy());
  fit.sensitivity = 1.0 - static_cast<double>(b) / static_cast<double>(scores.n_diseased());
  fit.youden = youden_from_counts(a, scores.n_healthy(), b, scores.n_diseased());
  return fit;
}

}  // namespace

double youden_at(const ScoreSplit& scores, double c) {
  return youden_from_counts(count_at_or_below(scores.healthy, c), scores.n_healthy(),
                            count_at_or_below(scores.diseased, c), scores.n_diseased());
}

CutoffCandidates candidate_cutoffs(const ScoreSplit& scores) {
  std::vector<double> pooled;
  pooled.reserve(scores.n_diseased() + scores.n_healthy());
  pooled.insert(pooled.end(), scores.diseased.begin(), scores.diseased.end());
  pooled.insert(pooled.end(), scores.healthy.begin(), scores.healthy.end());
  std::sort(pooled.begin(), pooled.end());
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

  CutoffCandidates out;
  out.values.reserve(pooled.size() + 1);
  out.values.push_back(pooled.front() - 1.0);
  for (std::size_t k = 0; k + 1 < pooled.size(); ++k) {
    out.values.push_back(pooled[k] + 0.5 * (pooled[k + 1] - pooled[k]));
  }
  out.values.push_back(pooled.back() + 1.0);
  return out;
}

CutoffSearch search_cutoff(const ScoreSplit& scores, CutoffPolicy policy) {
  const CutoffCandidates candidates = candidate_cutoffs(scores);
  std::vector<double> healthy = scores.healthy;
  std::vector<double> diseased = scores.diseased;
  std::sort(healthy.begin(), healthy.end());
  std::sort(diseased.begin(), diseased.end());
  const auto n0 = static_cast<std::int64_t>(healthy.size());
  const auto n1 = static_cast<std::int64_t>(diseased.size());

  // Sweep ascending candidates; counts only grow.
  std::size_t a = 0, b = 0;
  std::int64_t best_key = 0;
  std::vector<std::size_t> ties;
  for (std::size_t k = 0; k < candidates.values.size(); ++k) {
    const double c = candidates.values[k];
    while (a < healthy.size() && healthy[a] <= c) ++a;
    while (b < diseased.size() && diseased[b] <= c) ++b;
    const std::int64_t key = static_cast<std::int64_t>(a) * n1 - static_cast<std::int64_t>(b) * n0;
    if (ties.empty() || key > best_key) {
      best_key = key;
      ties.assign(1, k);
    } else if (key == best_key) {
      ties.push_back(k);
    }
  }

  CutoffSearch out;
  out.tie_set.reserve(ties.size());
  for (std::size_t k : ties) out.tie_set.push_back(candidates.values[k]);

  const auto key_at = [&](double c) {
    const auto ha = static_cast<std::int64_t>(std::upper_bound(healthy.begin(), healthy.end(), c) - healthy.begin());
    const auto db =
        static_cast<std::int64_t>(std::upper_bound(diseased.begin(), diseased.end(), c) - diseased.begin());
    return ha * n1 - db * n0;
  };

  const std::vector<double>& t = out.tie_set;
  switch (policy) {
    case CutoffPolicy::Min:
      out.cutoff = t.front();
      break;
    case CutoffPolicy::Max:
      out.cutoff = t.back();
      break;
    case CutoffPolicy::Median: {
      const std::size_t m = t.size();
      if (m % 2 == 1) {
        out.cutoff = t[m / 2];
      } else {
        const double mid = t[m / 2 - 1] + 0.5 * (t[m / 2] - t[m / 2 - 1]);
        out.cutoff = key_at(mid) == best_key ? mid : t[m / 2 - 1];
      }
      break;
    }
  }
  out.healthy_at_or_below = count_at_or_below(scores.healthy, out.cutoff);
  out.diseased_at_or_below = count_at_or_below(scores.diseased, out.cutoff);
  out.youden = youden_from_counts(out.healthy_at_or_below, scores.n_healthy(), out.diseased_at_or_below,
                                  scores.n_diseased());
  return out;
}

double estimate_cutoff(const ScoreSplit& scores, CutoffPolicy policy) { return search_cutoff(scores, policy).cutoff; }

YoudenFit fit_two_stage(const BiomarkerPanel& panel, const OptimizerConfig& config, CutoffPolicy policy) {
  return fit_two_stage(panel, config, policy, default_bandwidth(panel.n_diseased(), panel.n_healthy()));
}

YoudenFit fit_two_stage(const BiomarkerPanel& panel, const OptimizerConfig& config, CutoffPolicy policy,
                        Bandwidth h) {
  const WeightEstimate est = estimate_weights(panel, config, h);
  const ScoreSplit scores = project_scores(panel, est.weights);
  const CutoffSearch search = search_cutoff(scores, policy);
  YoudenFit fit = fill_fit(est.weights, search.cutoff, scores);
  fit.cutoff_policy = policy;
  fit.converged = est.converged;
  return fit;
}

YoudenFit fit_simultaneous(const BiomarkerPanel& panel, const OptimizerConfig& config) {
  return fit_simultaneous(panel, config, default_bandwidth(panel.n_diseased(), panel.n_healthy()));
}

YoudenFit fit_simultaneous(const BiomarkerPanel& panel, const OptimizerConfig& config, Bandwidth h) {
  const SimEstimate est = estimate_weights_sim(panel, config, h);
  YoudenFit fit = fill_fit(est.weights, est.cutoff, project_scores(panel, est.weights));
  fit.converged = est.converged;
  return fit;
}

YoudenFit evaluate_fit(const YoudenFit& fit, const BiomarkerPanel& panel) {
  if (fit.weights.size() != panel.biomarkers()) {
    throw ValidationError("fit has " + std::to_string(fit.weights.size()) + " weights but panel has " +
                          std::to_string(panel.biomarkers()) + " biomarkers");
  }
  YoudenFit out = fill_fit(fit.weights, fit.cutoff, project_scores(panel, fit.weights));
  out.cutoff_policy = fit.cutoff_policy;
  out.converged = fit.converged;
  return out;
}

}  // namespace biocomb
