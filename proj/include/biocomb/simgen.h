#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "biocomb/core.h"

namespace biocomb {

/// T0 ~ MVN(0, I_p), T1 ~ MVN(mu, I_p) with mu from mu_for_target_youden.
struct MvnIdentity {
  double target_youden = 0.45;
  std::size_t p = 5;
};

/// Both classes share (1 - gamma) I + gamma J; healthy mean is 0.
struct MvnEqualCov {
  Eigen::VectorXd mu1;
  double gamma = 0.0;
};

/// Diseased covariance uses gamma1, healthy gamma0.
struct MvnUnequalCov {
  Eigen::VectorXd mu1;
  double gamma1 = 0.0;
  double gamma0 = 0.0;
};

/// Independent Bernoulli biomarkers; P(D = 1 | T) = logistic(coefs'T + intercept).
struct BinaryLogistic {
  Eigen::VectorXd bernoulli_p;
  Eigen::VectorXd logit_coefs;
  double intercept = 0.0;
};

using ScenarioKind = std::variant<MvnIdentity, MvnEqualCov, MvnUnequalCov, BinaryLogistic>;

struct ReferenceAccuracy {
  double sensitivity = 1.0;
  double specificity = 1.0;
};

struct ScenarioSpec {
  ScenarioKind kind = MvnIdentity{};
  std::size_t n = 200;
  double prevalence = 0.5;
  std::optional<ReferenceAccuracy> reference;
  std::uint64_t seed = 1;
  /// When set, rows are split (stratified by true class) into train and test.
  std::optional<double> train_fraction;

  void validate() const;
  std::size_t biomarkers() const;
};

struct SimulatedSample {
  /// Labelled by the reference test when one is configured, else by D.
  BiomarkerPanel train;
  std::optional<BiomarkerPanel> test;
  /// True disease status aligned with the panel rows.
  std::vector<int> train_gold;
  std::vector<int> test_gold;
};

/// Draw a sample.
///
/// Stream layout for seed s: measurements (and, for the binary design,
/// disease labels) come from RandomStream(s), reference corruption from
/// child_seed(s, 1) and the train/test shuffle from child_seed(s, 2).
/// MVN designs draw round(prevalence * n) diseased rows then the healthy
/// rows, each row as p standard normals mapped through the Cholesky factor.
SimulatedSample generate(const ScenarioSpec& spec);

/// Diseased mean delta * (1, ..., 1) / sqrt(p), delta = 2 Phi^-1((j0 + 1) / 2),
/// so that the optimal score in the identity design has Youden index j0.
Eigen::VectorXd mu_for_target_youden(double j0, std::size_t p);

/// Keep each 1 with probability se and each 0 with probability sp,
/// independently per subject. Requires se, sp in (0.5, 1].
std::vector<int> corrupt_reference(const std::vector<int>& labels, double se, double sp, std::uint64_t seed);

/// Intercept giving population prevalence `prevalence` under the binary
/// design, by bisection on the exact mixture over all 2^p patterns.
double calibrate_intercept(const Eigen::VectorXd& bernoulli_p, const Eigen::VectorXd& logit_coefs, double prevalence);

/// Exact population prevalence of the binary design.
double binary_prevalence(const BinaryLogistic& design);

/// Analytic optimum where one exists (identity and equal-covariance designs):
/// weights Sigma^-1 mu1 normalized, the cutoff midway between the class
/// means of that normalized score, and the population Youden index.
struct PopulationOptimum {
  CombinationWeights weights = CombinationWeights::unit();
  double cutoff = 0.0;
  double youden = 0.0;
};
std::optional<PopulationOptimum> population_optimum(const ScenarioKind& kind);

/// (1 - gamma) I + gamma J
Eigen::MatrixXd compound_symmetry(std::size_t p, double gamma);

}  // namespace biocomb
