#include "biocomb/auc.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

#include "biocomb/errors.h"
#include "biocomb/normal.h"

namespace biocomb {

Bandwidth::Bandwidth(double h) : h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("bandwidth must be positive and finite");
}

Bandwidth default_bandwidth(std::size_t n1, std::size_t n0) {
  if (n1 < 1 || n0 < 1) throw ValidationError("bandwidth needs n1 >= 1 and n0 >= 1");
  return Bandwidth(std::pow(static_cast<double>(n1) * static_cast<double>(n0), -0.1));
}

double empirical_auc(const ScoreSplit& scores) {
  // twice the Mann-Whitney count: 2 per win, 1 per tie
  std::uint64_t doubled = 0;
  for (double d : scores.diseased) {
    for (double h : scores.healthy) {
      if (d > h) {
        doubled += 2;
      } else if (d == h) {
        doubled += 1;
      }
    }
  }
  const double pairs = static_cast<double>(scores.n_diseased()) * static_cast<double>(scores.n_healthy());
  return static_cast<double>(doubled) / 2.0 / pairs;
}

double empirical_auc_ranked(const ScoreSplit& scores) {
  std::vector<double> healthy = scores.healthy;
  std::sort(healthy.begin(), healthy.end());
  std::uint64_t doubled = 0;
  for (double d : scores.diseased) {
    const auto lo = std::lower_bound(healthy.begin(), healthy.end(), d);
    const auto hi = std::upper_bound(lo, healthy.end(), d);
    doubled += 2 * static_cast<std::uint64_t>(lo - healthy.begin()) + static_cast<std::uint64_t>(hi - lo);
  }
  const double pairs = static_cast<double>(scores.n_diseased()) * static_cast<double>(scores.n_healthy());
  return static_cast<double>(doubled) / 2.0 / pairs;
}

double smoothed_auc(const ScoreSplit& scores, Bandwidth h) {
  const double inv_h = 1.0 / h.value();
  long double total = 0.0L;
  for (double d : scores.diseased) {
    long double row = 0.0L;
    for (double x : scores.healthy) row += normal_cdf((d - x) * inv_h);
    total += row;
  }
  const long double pairs =
      static_cast<long double>(scores.n_diseased()) * static_cast<long double>(scores.n_healthy());
  return static_cast<double>(total / pairs);
}

double smoothed_auc(const BiomarkerPanel& panel, const CombinationWeights& weights, Bandwidth h) {
  return smoothed_auc(project_scores(panel, weights), h);
}

SmoothedAucEvaluation evaluate_smoothed_auc(const BiomarkerPanel& panel, const CombinationWeights& weights,
                                            Bandwidth h) {
  const ScoreSplit scores = project_scores(panel, weights);
  const std::size_t n1 = scores.n_diseased();
  const std::size_t n0 = scores.n_healthy();
  const double inv_h = 1.0 / h.value();
  constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;

  // The gradient separates: sum_ij phi_ij (T_i - T_j) = sum_i r_i T_i - sum_j c_j T_j
  // with r, c the row and column sums of the density matrix.
  Eigen::VectorXd row_density(static_cast<Eigen::Index>(n1));
  std::vector<long double> col_density(n0, 0.0L);
  long double total = 0.0L;
  for (std::size_t i = 0; i < n1; ++i) {
    const double d = scores.diseased[i];
    long double cdf_row = 0.0L;
    long double pdf_row = 0.0L;
    for (std::size_t j = 0; j < n0; ++j) {
      const double z = (d - scores.healthy[j]) * inv_h;
      cdf_row += 0.5 * std::erfc(-z * std::numbers::sqrt2 / 2.0);
      const double dens = kInvSqrt2Pi * std::exp(-0.5 * z * z);
      pdf_row += dens;
      col_density[j] += dens;
    }
    total += cdf_row;
    row_density(static_cast<Eigen::Index>(i)) = static_cast<double>(pdf_row);
  }
  Eigen::VectorXd col(static_cast<Eigen::Index>(n0));
  for (std::size_t j = 0; j < n0; ++j) col(static_cast<Eigen::Index>(j)) = static_cast<double>(col_density[j]);

  const double pairs = static_cast<double>(n1) * static_cast<double>(n0);
  SmoothedAucEvaluation out;
  out.value = static_cast<double>(total / static_cast<long double>(pairs));

  const Eigen::Index p = static_cast<Eigen::Index>(panel.biomarkers());
  const Eigen::VectorXd full = panel.diseased().transpose() * row_density - panel.healthy().transpose() * col;
  out.gradient = weights.sign() * inv_h / pairs * full.tail(p - 1);
  if (!std::isfinite(out.value) || !out.gradient.allFinite()) {
    throw NumericError("smoothed AUC evaluation produced a non-finite value");
  }
  return out;
}

Eigen::VectorXd smoothed_auc_gradient(const BiomarkerPanel& panel, const CombinationWeights& weights,
                                      Bandwidth h) {
  return evaluate_smoothed_auc(panel, weights, h).gradient;
}

}  // namespace biocomb
