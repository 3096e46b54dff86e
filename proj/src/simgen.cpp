#include "biocomb/simgen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "biocomb/errors.h"
#include "biocomb/normal.h"
#include "biocomb/rng.h"

namespace biocomb {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) throw ValidationError("covariance matrix is not positive definite");
  return llt.matrixL();
}

void draw_mvn_rows(RandomStream& rng, Eigen::MatrixXd& out, Eigen::Index first, Eigen::Index count,
                   const Eigen::VectorXd& mean, const Eigen::MatrixXd& chol) {
  const Eigen::Index p = mean.size();
  Eigen::VectorXd z(p);
  for (Eigen::Index i = 0; i < count; ++i) {
    for (Eigen::Index k = 0; k < p; ++k) z(k) = rng.normal();
    out.row(first + i) = (mean + chol * z).transpose();
  }
}

std::size_t diseased_count(const ScenarioSpec& spec) {
  return static_cast<std::size_t>(std::llround(spec.prevalence * static_cast<double>(spec.n)));
}

void check_binary(const BinaryLogistic& b) {
  if (b.bernoulli_p.size() < 1 || b.bernoulli_p.size() != b.logit_coefs.size()) {
    throw ValidationError("binary design needs matching, non-empty probability and coefficient vectors");
  }
  for (Eigen::Index k = 0; k < b.bernoulli_p.size(); ++k) {
    if (!(b.bernoulli_p(k) > 0.0 && b.bernoulli_p(k) < 1.0)) {
      throw ValidationError("Bernoulli probabilities must lie in (0, 1)");
    }
  }
  if (b.bernoulli_p.size() > 20) throw ValidationError("binary design supports at most 20 biomarkers");
}

double mixture_prevalence(const Eigen::VectorXd& probs, const Eigen::VectorXd& coefs, double intercept) {
  const auto p = static_cast<unsigned>(probs.size());
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
    double weight = 1.0;
    double eta = intercept;
    for (unsigned k = 0; k < p; ++k) {
      const bool on = (mask >> k) & 1u;
      weight *= on ? probs(k) : 1.0 - probs(k);
      if (on) eta += coefs(k);
    }
    total += weight * logistic(eta);
  }
  return total;
}

}  // namespace

Eigen::MatrixXd compound_symmetry(std::size_t p, double gamma) {
  const auto n = static_cast<Eigen::Index>(p);
  return (1.0 - gamma) * Eigen::MatrixXd::Identity(n, n) + gamma * Eigen::MatrixXd::Ones(n, n);
}

std::size_t ScenarioSpec::biomarkers() const {
  return std::visit(Overloaded{[](const MvnIdentity& k) { return k.p; },
                               [](const MvnEqualCov& k) { return static_cast<std::size_t>(k.mu1.size()); },
                               [](const MvnUnequalCov& k) { return static_cast<std::size_t>(k.mu1.size()); },
                               [](const BinaryLogistic& k) { return static_cast<std::size_t>(k.bernoulli_p.size()); }},
                    kind);
}

void ScenarioSpec::validate() const {
  if (!(prevalence > 0.0 && prevalence < 1.0)) throw ValidationError("prevalence must lie in (0, 1)");
  if (biomarkers() < 1) throw ValidationError("scenario needs at least one biomarker");
  if (!std::holds_alternative<BinaryLogistic>(kind)) {
    const std::size_t n1 = diseased_count(*this);
    if (n1 < 2 || n - n1 < 2 || n1 > n) {
      throw ValidationError("n * prevalence and n * (1 - prevalence) must each round to at least 2");
    }
  } else if (n < 2) {
    throw ValidationError("binary design needs n >= 2");
  }
  if (reference) {
    const auto& r = *reference;
    if (!(r.sensitivity > 0.5 && r.sensitivity <= 1.0) || !(r.specificity > 0.5 && r.specificity <= 1.0)) {
      throw ValidationError("reference sensitivity and specificity must lie in (0.5, 1]");
    }
  }
  if (train_fraction && !(*train_fraction > 0.0 && *train_fraction < 1.0)) {
    throw ValidationError("train fraction must lie in (0, 1)");
  }
  std::visit(Overloaded{[](const MvnIdentity& k) {
                          if (!(k.target_youden > 0.0 && k.target_youden < 1.0)) {
                            throw ValidationError("target Youden index must lie in (0, 1)");
                          }
                        },
                        [](const MvnEqualCov& k) { cholesky_factor(compound_symmetry(k.mu1.size(), k.gamma)); },
                        [](const MvnUnequalCov& k) {
                          cholesky_factor(compound_symmetry(k.mu1.size(), k.gamma1));
                          cholesky_factor(compound_symmetry(k.mu1.size(), k.gamma0));
                        },
                        [](const BinaryLogistic& k) { check_binary(k); }},
             kind);
}

Eigen::VectorXd mu_for_target_youden(double j0, std::size_t p) {
  if (!(j0 >= 0.0 && j0 < 1.0)) throw ValidationError("target Youden index must lie in [0, 1)");
  if (p < 1) throw ValidationError("p must be >= 1");
  const double delta = j0 == 0.0 ? 0.0 : 2.0 * normal_quantile((j0 + 1.0) / 2.0);
  return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(p), delta / std::sqrt(static_cast<double>(p)));
}

std::vector<int> corrupt_reference(const std::vector<int>& labels, double se, double sp, std::uint64_t seed) {
  if (!(se > 0.5 && se <= 1.0) || !(sp > 0.5 && sp <= 1.0)) {
    throw ValidationError("reference sensitivity and specificity must lie in (0.5, 1]");
  }
  RandomStream rng(seed);
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double u = rng.uniform();
    if (labels[i] == 1) {
      out[i] = u < se ? 1 : 0;
    } else if (labels[i] == 0) {
      out[i] = u < sp ? 0 : 1;
    } else {
      throw ValidationError("labels must be 0 or 1");
    }
  }
  return out;
}

double binary_prevalence(const BinaryLogistic& design) {
  check_binary(design);
  return mixture_prevalence(design.bernoulli_p, design.logit_coefs, design.intercept);
}

double calibrate_intercept(const Eigen::VectorXd& bernoulli_p, const Eigen::VectorXd& logit_coefs, double prevalence) {
  check_binary(BinaryLogistic{bernoulli_p, logit_coefs, 0.0});
  if (!(prevalence > 0.0 && prevalence < 1.0)) throw ValidationError("prevalence must lie in (0, 1)");
  double lo = -60.0, hi = 60.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mixture_prevalence(bernoulli_p, logit_coefs, mid) < prevalence) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<PopulationOptimum> population_optimum(const ScenarioKind& kind) {
  const auto from_mean_cov = [](const Eigen::VectorXd& mu, const Eigen::MatrixXd& cov) {
    const Eigen::VectorXd direction = cov.llt().solve(mu);
    const double delta2 = mu.dot(direction);
    PopulationOptimum opt;
    opt.weights = normalize_weights(direction);
    // score direction' T has class means 0 and delta2; normalized by direction(0)
    opt.cutoff = 0.5 * delta2 / std::abs(direction(0));
    opt.youden = 2.0 * normal_cdf(0.5 * std::sqrt(delta2)) - 1.0;
    return opt;
  };
  return std::visit(Overloaded{[&](const MvnIdentity& k) -> std::optional<PopulationOptimum> {
                                 const Eigen::VectorXd mu = mu_for_target_youden(k.target_youden, k.p);
                                 return from_mean_cov(mu, compound_symmetry(k.p, 0.0));
                               },
                               [&](const MvnEqualCov& k) -> std::optional<PopulationOptimum> {
                                 return from_mean_cov(k.mu1, compound_symmetry(k.mu1.size(), k.gamma));
                               },
                               [](const MvnUnequalCov&) -> std::optional<PopulationOptimum> { return std::nullopt; },
                               [](const BinaryLogistic&) -> std::optional<PopulationOptimum> { return std::nullopt; }},
                    kind);
}

SimulatedSample generate(const ScenarioSpec& spec) {
  spec.validate();
  const std::size_t p = spec.biomarkers();
  const auto n = static_cast<Eigen::Index>(spec.n);
  Eigen::MatrixXd x(n, static_cast<Eigen::Index>(p));
  std::vector<int> gold(spec.n, 0);
  RandomStream rng(spec.seed);

  if (const auto* bin = std::get_if<BinaryLogistic>(&spec.kind)) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double eta = bin->intercept;
      for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(p); ++k) {
        x(i, k) = rng.bernoulli(bin->bernoulli_p(k)) ? 1.0 : 0.0;
        eta += bin->logit_coefs(k) * x(i, k);
      }
      gold[static_cast<std::size_t>(i)] = rng.bernoulli(logistic(eta)) ? 1 : 0;
    }
  } else {
    const auto n1 = static_cast<Eigen::Index>(diseased_count(spec));
    Eigen::VectorXd mu1;
    Eigen::MatrixXd cov1, cov0;
    std::visit(Overloaded{[&](const MvnIdentity& k) {
                            mu1 = mu_for_target_youden(k.target_youden, k.p);
                            cov1 = cov0 = compound_symmetry(k.p, 0.0);
                          },
                          [&](const MvnEqualCov& k) {
                            mu1 = k.mu1;
                            cov1 = cov0 = compound_symmetry(p, k.gamma);
                          },
                          [&](const MvnUnequalCov& k) {
                            mu1 = k.mu1;
                            cov1 = compound_symmetry(p, k.gamma1);
                            cov0 = compound_symmetry(p, k.gamma0);
                          },
                          [](const BinaryLogistic&) {}},
               spec.kind);
    draw_mvn_rows(rng, x, 0, n1, mu1, cholesky_factor(cov1));
    draw_mvn_rows(rng, x, n1, n - n1, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p)), cholesky_factor(cov0));
    std::fill(gold.begin(), gold.begin() + n1, 1);
  }

  std::vector<int> observed = gold;
  LabelKind kind = LabelKind::GoldStandard;
  if (spec.reference) {
    observed = corrupt_reference(gold, spec.reference->sensitivity, spec.reference->specificity,
                                 child_seed(spec.seed, 1));
    kind = LabelKind::ImperfectReference;
  }

  const BiomarkerPanel full(std::move(x), observed, kind);
  if (!spec.train_fraction) {
    return SimulatedSample{full, std::nullopt, gold, {}};
  }

  // stratified by true class, each class shuffled by Fisher-Yates
  RandomStream shuffle(child_seed(spec.seed, 2));
  std::vector<std::size_t> train_rows, test_rows;
  for (int cls : {1, 0}) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (gold[i] == cls) rows.push_back(i);
    }
    for (std::size_t i = rows.size(); i > 1; --i) {
      std::swap(rows[i - 1], rows[shuffle.below(i)]);
    }
    const auto take = static_cast<std::size_t>(std::llround(*spec.train_fraction * static_cast<double>(rows.size())));
    train_rows.insert(train_rows.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(take));
    test_rows.insert(test_rows.end(), rows.begin() + static_cast<std::ptrdiff_t>(take), rows.end());
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());

  std::vector<int> train_gold, test_gold;
  for (std::size_t r : train_rows) train_gold.push_back(gold[r]);
  for (std::size_t r : test_rows) test_gold.push_back(gold[r]);
  return SimulatedSample{full.subset(train_rows), full.subset(test_rows), std::move(train_gold), std::move(test_gold)};
}

}  // namespace biocomb
