#include "biocomb/optimize.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "biocomb/errors.h"
#include "biocomb/normal.h"
#include "biocomb/rng.h"

namespace biocomb {

namespace {

AscentOptions ascent_options(const OptimizerConfig& config) {
  AscentOptions opts;
  opts.max_iterations = config.max_iterations;
  opts.gradient_tolerance = config.gradient_tolerance;
  return opts;
}

struct Start {
  Eigen::VectorXd free;
  bool flipped = false;
};

// Start 0 is the moment start. Start k >= 1 perturbs the unit-norm direction of
// the moment start with its own child stream (adding starts never changes the
// earlier ones), then renormalizes, so a start may land in either orientation.
Start start_point(const MomentStart& init, const OptimizerConfig& config, int index) {
  if (index == 0) return {init.free, init.flipped};
  const Eigen::Index p = init.free.size() + 1;
  Eigen::VectorXd u(p);
  u(0) = 1.0;
  u.tail(p - 1) = init.free;
  u *= (init.flipped ? -1.0 : 1.0) / u.norm();
  RandomStream rng(child_seed(config.seed, static_cast<std::uint64_t>(index)));
  for (Eigen::Index k = 0; k < p; ++k) u(k) += config.start_spread * rng.normal();
  if (std::abs(u(0)) < 1e-8 * u.norm()) u(0) = std::copysign(1e-8 * u.norm(), u(0));
  const CombinationWeights w = normalize_weights(u);
  return {w.free(), w.orientation_flipped()};
}

double pooled_midrange(const ScoreSplit& s) {
  double lo = s.diseased.front();
  double hi = lo;
  for (double v : s.diseased) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : s.healthy) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void OptimizerConfig::validate() const {
  if (max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
  if (n_starts < 1) throw ValidationError("n_starts must be >= 1");
  if (!(gradient_tolerance > 0.0)) throw ValidationError("gradient_tolerance must be > 0");
  if (!(start_spread > 0.0) || !std::isfinite(start_spread)) throw ValidationError("start_spread must be > 0");
}

MomentStart moment_start(const BiomarkerPanel& panel) {
  const Eigen::MatrixXd& x1 = panel.diseased();
  const Eigen::MatrixXd& x0 = panel.healthy();
  const Eigen::VectorXd m1 = x1.colwise().mean().transpose();
  const Eigen::VectorXd m0 = x0.colwise().mean().transpose();
  const Eigen::VectorXd delta = m1 - m0;
  const Eigen::Index p = delta.size();

  // Pooled within-class covariance; a small ridge keeps constant columns solvable.
  const Eigen::MatrixXd c1 = x1.rowwise() - m1.transpose();
  const Eigen::MatrixXd c0 = x0.rowwise() - m0.transpose();
  Eigen::MatrixXd pooled = (c1.transpose() * c1 + c0.transpose() * c0) / static_cast<double>(panel.rows());
  const double ridge = 1e-8 * std::max(pooled.trace() / static_cast<double>(p), 1e-300);
  pooled.diagonal().array() += ridge;
  Eigen::VectorXd direction = pooled.ldlt().solve(delta);
  if (!direction.allFinite()) direction = delta;

  MomentStart out;
  if (std::abs(direction(0)) <= 1e-12 * (1.0 + direction.lpNorm<Eigen::Infinity>())) {
    out.free = Eigen::VectorXd::Zero(p - 1);
    return out;
  }
  out.flipped = direction(0) < 0.0;
  out.free = direction.tail(p - 1) / direction(0);
  return out;
}

WeightEstimate estimate_weights(const BiomarkerPanel& panel, const OptimizerConfig& config, Bandwidth h) {
  config.validate();
  const MomentStart init = moment_start(panel);
  WeightEstimate best;
  if (panel.biomarkers() == 1) {
    best.weights = CombinationWeights::unit(init.flipped);
    best.objective = smoothed_auc(panel, best.weights, h);
    best.start_values = {best.objective};
    best.final_values = {best.objective};
    return best;
  }

  const AscentOptions opts = ascent_options(config);

  bool have_best = false;
  for (int k = 0; k < config.n_starts; ++k) {
    const Start st = start_point(init, config, k);
    const SmoothObjective objective = [&](const Eigen::VectorXd& free) {
      const SmoothedAucEvaluation e = evaluate_smoothed_auc(panel, CombinationWeights::from_free(free, st.flipped), h);
      return ObjectiveEvaluation{e.value, e.gradient};
    };
    const ObjectiveEvaluation at_start = objective(st.free);
    if (std::isnan(at_start.value)) throw NumericError("smoothed AUC is NaN at start " + std::to_string(k));
    AscentResult run = maximize_bfgs(objective, st.free, opts);
    // the ascent never returns below its start, but guard the contract anyway
    if (run.value < at_start.value) {
      run.argmax = st.free;
      run.value = at_start.value;
      run.converged = false;
    }
    best.start_values.push_back(at_start.value);
    best.final_values.push_back(run.value);
    if (!have_best || run.value > best.objective) {
      have_best = true;
      best.weights = CombinationWeights::from_free(run.argmax, st.flipped);
      best.objective = run.value;
      best.converged = run.converged;
      best.best_start = k;
    }
  }
  return best;
}

ObjectiveEvaluation evaluate_sim_objective(const BiomarkerPanel& panel, const CombinationWeights& weights,
                                           double cutoff, Bandwidth h) {
  const ScoreSplit scores = project_scores(panel, weights);
  const double inv_h = 1.0 / h.value();
  const auto n1 = static_cast<Eigen::Index>(scores.n_diseased());
  const auto n0 = static_cast<Eigen::Index>(scores.n_healthy());

  long double spec = 0.0L, miss = 0.0L;
  long double dens0_sum = 0.0L, dens1_sum = 0.0L;
  Eigen::VectorXd dens0(n0), dens1(n1);
  for (Eigen::Index j = 0; j < n0; ++j) {
    const double z = (cutoff - scores.healthy[static_cast<std::size_t>(j)]) * inv_h;
    spec += normal_cdf(z);
    dens0(j) = normal_pdf(z);
    dens0_sum += dens0(j);
  }
  for (Eigen::Index i = 0; i < n1; ++i) {
    const double z = (cutoff - scores.diseased[static_cast<std::size_t>(i)]) * inv_h;
    miss += normal_cdf(z);
    dens1(i) = normal_pdf(z);
    dens1_sum += dens1(i);
  }
  const double inv_n0 = 1.0 / static_cast<double>(n0);
  const double inv_n1 = 1.0 / static_cast<double>(n1);

  ObjectiveEvaluation out;
  out.value = static_cast<double>(spec) * inv_n0 - static_cast<double>(miss) * inv_n1;

  const Eigen::Index p = static_cast<Eigen::Index>(panel.biomarkers());
  out.gradient.resize(p);
  if (p > 1) {
    // d/dtheta_k Phi((c - s)/h) = -sign * phi * T_k / h
    const Eigen::VectorXd m0 = panel.healthy().transpose() * dens0;
    const Eigen::VectorXd m1 = panel.diseased().transpose() * dens1;
    out.gradient.head(p - 1) = -weights.sign() * inv_h * (m0 * inv_n0 - m1 * inv_n1).tail(p - 1);
  }
  out.gradient(p - 1) =
      inv_h * (static_cast<double>(dens0_sum) * inv_n0 - static_cast<double>(dens1_sum) * inv_n1);
  if (!std::isfinite(out.value) || !out.gradient.allFinite()) {
    throw NumericError("smoothed Youden objective produced a non-finite value");
  }
  return out;
}

SimEstimate estimate_weights_sim(const BiomarkerPanel& panel, const OptimizerConfig& config, Bandwidth h) {
  config.validate();
  const MomentStart init = moment_start(panel);
  const Eigen::Index free_dim = static_cast<Eigen::Index>(panel.biomarkers()) - 1;

  const AscentOptions opts = ascent_options(config);

  SimEstimate best;
  bool have_best = false;
  for (int k = 0; k < config.n_starts; ++k) {
    const Start st = start_point(init, config, k);
    // variables: (free coefficients..., cutoff)
    const SmoothObjective objective = [&](const Eigen::VectorXd& x) {
      return evaluate_sim_objective(panel, CombinationWeights::from_free(x.head(free_dim), st.flipped), x(free_dim),
                                    h);
    };
    Eigen::VectorXd x0(free_dim + 1);
    x0.head(free_dim) = st.free;
    x0(free_dim) = pooled_midrange(project_scores(panel, CombinationWeights::from_free(st.free, st.flipped)));

    const ObjectiveEvaluation at_start = objective(x0);
    AscentResult run = maximize_bfgs(objective, x0, opts);
    if (run.value < at_start.value) {
      run.argmax = x0;
      run.value = at_start.value;
      run.converged = false;
    }
    best.start_values.push_back(at_start.value);
    best.final_values.push_back(run.value);
    if (!have_best || run.value > best.objective) {
      have_best = true;
      best.weights = CombinationWeights::from_free(run.argmax.head(free_dim), st.flipped);
      best.cutoff = run.argmax(free_dim);
      best.objective = run.value;
      best.converged = run.converged;
      best.best_start = k;
    }
  }
  return best;
}

}  // namespace biocomb
