#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "biocomb/core.h"
#include "biocomb/rng.h"

namespace testutil {

// Gaussian panel with diseased rows shifted by `shift` in every column.
inline biocomb::BiomarkerPanel random_panel(std::uint64_t seed, std::size_t n1, std::size_t n0, std::size_t p,
                                            double shift = 0.8) {
  biocomb::RandomStream rng(seed);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n1 + n0), static_cast<Eigen::Index>(p));
  std::vector<int> labels;
  for (std::size_t i = 0; i < n1 + n0; ++i) {
    const bool d = i < n1;
    labels.push_back(d ? 1 : 0);
    for (std::size_t k = 0; k < p; ++k) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          rng.normal() + (d ? shift * static_cast<double>(k + 1) / static_cast<double>(p) : 0.0);
    }
  }
  return biocomb::BiomarkerPanel(std::move(x), std::move(labels));
}

inline biocomb::ScoreSplit random_split(std::uint64_t seed, std::size_t n1, std::size_t n0, bool integer_valued) {
  biocomb::RandomStream rng(seed);
  std::vector<double> d, h;
  for (std::size_t i = 0; i < n1; ++i) {
    d.push_back(integer_valued ? static_cast<double>(rng.below(6)) + 1.0 : rng.normal() + 0.7);
  }
  for (std::size_t j = 0; j < n0; ++j) {
    h.push_back(integer_valued ? static_cast<double>(rng.below(6)) : rng.normal());
  }
  return biocomb::ScoreSplit(std::move(d), std::move(h));
}

// Reference normal CDF independent of the library's implementation.
inline double ref_cdf(double z) { return 0.5 * (1.0 + std::erf(z / std::sqrt(2.0))); }

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace testutil
