// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.
//
// Usage: biocomb_acceptance [--threads N] [--only 1,5,9] [--expect-fail 3]
//
// Exit status counts failures outside the --expect-fail list. Expected
// failures still print FAIL.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "biocomb/auc.h"
#include "biocomb/config.h"
#include "biocomb/harness.h"
#include "biocomb/imperfect.h"
#include "biocomb/optimize.h"
#include "biocomb/rng.h"
#include "biocomb/simgen.h"
#include "biocomb/youden.h"

using namespace biocomb;

namespace {

constexpr std::uint64_t kSeed = 20240917;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

RunOptions threaded(std::size_t threads) {
  RunOptions o;
  o.threads = threads;
  return o;
}

// ---------------------------------------------------------------- coverage

Outcome coverage_reproduction(std::size_t threads) {
  const auto cfg = KeyValueConfig::parse_string(
      "target_youden = 0.45\nclass_sizes = 100x100\nreplications = 1000\nseed = " + std::to_string(kSeed));
  const Report r = run_coverage(cfg, threaded(threads));
  const auto& c = r["cells"][0];
  const double cr = c["coverage"], al = c["average_length"];
  const bool pass = std::abs(cr - 0.948) <= 0.025 && std::abs(al - 0.2352) <= 0.02;
  return {pass, "coverage " + fmt("%.3f", cr) + " (target 0.948 +/- 0.025), average length " + fmt("%.4f", al) +
                    " (target 0.2352 +/- 0.02), failures " + std::to_string(c["failures"].size())};
}

Outcome np_ordering(std::size_t threads) {
  const auto cfg = KeyValueConfig::parse_string(
      "target_youden = 0.45\nclass_sizes = 50x50\nreplications = 1000\nseed = " + std::to_string(kSeed + 1));
  const Report r = run_coverage(cfg, threaded(threads));
  const auto& c = r["cells"][0];
  const double cr = c["coverage"], np = c["coverage_np"];
  return {cr - np >= 0.05, "proposed " + fmt("%.3f", cr) + " vs NP " + fmt("%.3f", np) + ", difference " +
                               fmt("%.3f", cr - np) + " (need >= 0.05)"};
}

// ---------------------------------------------------------------- comparison

Outcome method_comparison(std::size_t threads) {
  const auto cfg = KeyValueConfig::parse_string(
      "design = mvn_equal\nmu1 = 0.4, 0.7, 1.0, 1.3, 1.6\ngamma = 0.7\nprevalence = 0.5\n"
      "n = 200, 400, 800\nreplications = 1000\nseed = " +
      std::to_string(kSeed + 2));
  const Report r = run_compare(cfg, threaded(threads));

  const auto& first = r["cells"][0]["methods"];
  const double tsm = first["tsm"]["train_mean"], sim = first["sim"]["train_mean"];
  const bool level = std::abs(tsm - 0.7696) <= 0.02;
  const bool order = tsm > sim;

  int wins = 0, total = 0;
  std::ostringstream var;
  for (const auto& c : r["cells"]) {
    const auto& m = c["methods"];
    for (const char* set : {"train_variance", "test_variance"}) {
      const double a = m["tsm"][set], b = m["sim"][set];
      wins += a <= b;
      ++total;
      var << " n=" << c["parameters"]["n"].get<std::size_t>() << ' ' << (set[1] == 'r' ? "train" : "test") << ' '
          << fmt("%.4f", a) << (a <= b ? "<=" : ">") << fmt("%.4f", b);
    }
  }
  const double share = static_cast<double>(wins) / total;
  const bool variance = share >= 0.8;
  std::ostringstream d;
  d << "n=200 train TSM " << fmt("%.4f", tsm) << " (target 0.7696 +/- 0.02: " << (level ? "ok" : "no") << "), SIM "
    << fmt("%.4f", sim) << " (TSM > SIM: " << (order ? "ok" : "no") << "); TSM variance <= SIM in " << wins << "/"
    << total << (variance ? " ok" : " no") << ";" << var.str();
  return {level && order && variance, d.str()};
}

// ---------------------------------------------------------------- imperfect reference

Outcome imperfect_degradation(std::size_t threads) {
  const auto cfg = KeyValueConfig::parse_string(
      "design = mvn_identity\ntarget_youden = 0.45\nprevalence = 0.5\nn = 400\n"
      "reference = 1:1, 0.95:0.95, 0.90:0.90, 0.85:0.85\nmethods = tsm\nreplications = 1000\nseed = " +
      std::to_string(kSeed + 3));
  const Report r = run_compare(cfg, threaded(threads));
  std::vector<double> gold, proxy;
  for (const auto& c : r["cells"]) {
    gold.push_back(c["methods"]["tsm"]["train_gold_mean"]);
    proxy.push_back(c["methods"]["tsm"]["train_mean"]);
  }
  // The reported training Youden is that of the reference-trained rule
  // scored against true status; the reference-scored value is shown too.
  const bool level = std::abs(gold[2] - 0.4881) <= 0.02;
  bool monotone = true;
  for (std::size_t k = 1; k < gold.size(); ++k) monotone = monotone && gold[k] < gold[k - 1];
  std::ostringstream d;
  d << "train Youden vs true status at Se=Sp 1/0.95/0.90/0.85:";
  for (double g : gold) d << ' ' << fmt("%.4f", g);
  d << " (0.90 target 0.4881 +/- 0.02: " << (level ? "ok" : "no") << ", decreasing: " << (monotone ? "ok" : "no")
    << "); vs reference labels:";
  for (double p : proxy) d << ' ' << fmt("%.4f", p);
  return {level && monotone, d.str()};
}

// ---------------------------------------------------------------- oracles

long long youden_key(const ScoreSplit& s, double c) {
  long long h = 0, d = 0;
  for (double v : s.healthy) h += v <= c;
  for (double v : s.diseased) d += v <= c;
  return h * static_cast<long long>(s.n_diseased()) - d * static_cast<long long>(s.n_healthy());
}

// Every midpoint of distinct pooled scores plus one point beyond each end.
long long exhaustive_best(const ScoreSplit& s) {
  std::vector<double> v(s.diseased);
  v.insert(v.end(), s.healthy.begin(), s.healthy.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  long long best = std::max(youden_key(s, v.front() - 1.0), youden_key(s, v.back() + 1.0));
  for (std::size_t k = 0; k + 1 < v.size(); ++k) best = std::max(best, youden_key(s, 0.5 * (v[k] + v[k + 1])));
  return best;
}

ScoreSplit random_split(std::uint64_t seed) {
  RandomStream rng(seed);
  const std::size_t n1 = 5 + rng.below(60), n0 = 5 + rng.below(60);
  const bool ties = rng.bernoulli(0.5);
  std::vector<double> d, h;
  for (std::size_t i = 0; i < n1; ++i) d.push_back(ties ? static_cast<double>(rng.below(8)) + 1.0 : rng.normal() + 0.8);
  for (std::size_t j = 0; j < n0; ++j) h.push_back(ties ? static_cast<double>(rng.below(8)) : rng.normal());
  return ScoreSplit(std::move(d), std::move(h));
}

double smoothed_at(const BiomarkerPanel& panel, double t, bool flipped, Bandwidth h) {
  Eigen::VectorXd free(1);
  free(0) = t;
  return smoothed_auc(panel, CombinationWeights::from_free(free, flipped), h);
}

// Grid maximum over the free coefficient in [-10, 10], both orientations:
// step 1e-3, then step 1e-6 around the best coarse point.
double grid_max(const BiomarkerPanel& panel, Bandwidth h) {
  double best = -1.0;
  for (bool flipped : {false, true}) {
    double arg = 0.0, top = -1.0;
    for (int k = -10000; k <= 10000; ++k) {
      const double v = smoothed_at(panel, k * 1e-3, flipped, h);
      if (v > top) top = v, arg = k * 1e-3;
    }
    for (int k = -1000; k <= 1000; ++k) top = std::max(top, smoothed_at(panel, arg + k * 1e-6, flipped, h));
    best = std::max(best, top);
  }
  return best;
}

Outcome oracle_equivalence(std::size_t threads) {
  int exact = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const ScoreSplit s = random_split(child_seed(kSeed + 4, k));
    const long long best = exhaustive_best(s);
    bool ok = true;
    for (auto policy : {CutoffPolicy::Median, CutoffPolicy::Min, CutoffPolicy::Max}) {
      const CutoffSearch r = search_cutoff(s, policy);
      ok = ok && youden_key(s, r.cutoff) == best && r.youden == youden_at(s, r.cutoff);
    }
    exact += ok;
  }

  std::vector<double> gap(20);
  parallel_for(gap.size(), threads, [&](std::size_t k) {
    ScenarioSpec spec;
    spec.kind = MvnIdentity{0.45, 2};
    spec.n = 100;
    spec.seed = child_seed(kSeed + 5, k);
    const BiomarkerPanel panel = generate(spec).train;
    const Bandwidth h = default_bandwidth(panel.n_diseased(), panel.n_healthy());
    OptimizerConfig oc;
    oc.seed = child_seed(spec.seed, 7);
    gap[k] = grid_max(panel, h) - estimate_weights(panel, oc, h).objective;
  });
  const double worst = *std::max_element(gap.begin(), gap.end());
  const bool grid_ok = worst <= 1e-4;
  return {exact == 100 && grid_ok,
          "cutoff search exact on " + std::to_string(exact) + "/100 splits; p=2 worst shortfall below grid max " +
              fmt("%.2e", worst) + " over 20 panels (need <= 1e-4)"};
}

// ---------------------------------------------------------------- gradients

double relative(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-8});
}

Outcome gradient_check(std::size_t) {
  constexpr double step = 1e-5;
  double worst_auc = 0.0, worst_sim = 0.0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    RandomStream rng(child_seed(kSeed + 6, k));
    const std::size_t p = 2 + rng.below(4), n1 = 6 + rng.below(15), n0 = 6 + rng.below(15);
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n1 + n0), static_cast<Eigen::Index>(p));
    std::vector<int> labels;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const bool d = static_cast<std::size_t>(i) < n1;
      labels.push_back(d);
      for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = rng.normal() + (d ? 0.6 : 0.0);
    }
    const BiomarkerPanel panel(std::move(x), std::move(labels));
    const Bandwidth h = default_bandwidth(n1, n0);
    const bool flipped = rng.bernoulli(0.3);
    Eigen::VectorXd free(static_cast<Eigen::Index>(p - 1));
    for (Eigen::Index j = 0; j < free.size(); ++j) free(j) = rng.normal();
    const double c = 0.5 * rng.normal();

    const auto auc = evaluate_smoothed_auc(panel, CombinationWeights::from_free(free, flipped), h);
    const auto sim = evaluate_sim_objective(panel, CombinationWeights::from_free(free, flipped), c, h);
    for (Eigen::Index j = 0; j < free.size(); ++j) {
      Eigen::VectorXd up = free, down = free;
      up(j) += step;
      down(j) -= step;
      const auto wu = CombinationWeights::from_free(up, flipped), wd = CombinationWeights::from_free(down, flipped);
      worst_auc = std::max(worst_auc, relative(auc.gradient(j), (smoothed_auc(panel, wu, h) - smoothed_auc(panel, wd, h)) / (2 * step)));
      worst_sim = std::max(worst_sim, relative(sim.gradient(j), (evaluate_sim_objective(panel, wu, c, h).value -
                                                                  evaluate_sim_objective(panel, wd, c, h).value) /
                                                                     (2 * step)));
    }
    const auto w = CombinationWeights::from_free(free, flipped);
    const double fd_c =
        (evaluate_sim_objective(panel, w, c + step, h).value - evaluate_sim_objective(panel, w, c - step, h).value) /
        (2 * step);
    worst_sim = std::max(worst_sim, relative(sim.gradient(free.size()), fd_c));
  }
  return {worst_auc <= 1e-5 && worst_sim <= 1e-5,
          "worst relative error: smoothed AUC " + fmt("%.2e", worst_auc) + ", smoothed Youden " +
              fmt("%.2e", worst_sim) + " over 50 panels (need <= 1e-5)"};
}

// ---------------------------------------------------------------- proxy algebra

Outcome proxy_algebra(std::size_t) {
  RandomStream rng(kSeed + 7);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const double ppv = 0.5 + 0.5 * rng.uniform(), npv = 0.5 + 0.5 * rng.uniform();
    if (ppv + npv - 1.0 < 1e-3) continue;
    const ReferenceQuality q(ppv, npv);
    const double auc = rng.uniform(), j = 2.0 * rng.uniform() - 1.0;
    worst = std::max(worst, std::abs(true_auc_from_proxy(proxy_auc(auc, q), q) - auc));
    worst = std::max(worst, std::abs(true_youden_from_proxy(proxy_youden(j, q), q) - j));
  }

  ScenarioSpec spec;
  spec.kind = MvnIdentity{0.45, 5};
  spec.n = 100000;
  spec.reference = ReferenceAccuracy{0.9, 0.85};
  spec.seed = kSeed + 8;
  const SimulatedSample s = generate(spec);
  const PopulationOptimum opt = *population_optimum(spec.kind);
  const Eigen::VectorXd score = s.train.measurements() * opt.weights.effective();
  const auto& ref = s.train.labels();
  double g1 = 0, g0 = 0, g1_pos = 0, g0_neg = 0, r1 = 0, r0 = 0, r1_pos = 0, r0_neg = 0;
  double n11 = 0, n10 = 0, n01 = 0, n00 = 0;  // (reference, truth)
  for (Eigen::Index i = 0; i < score.size(); ++i) {
    const bool pos = score(i) > opt.cutoff;
    const int d = s.train_gold[static_cast<std::size_t>(i)], r = ref[static_cast<std::size_t>(i)];
    (r ? (d ? n11 : n10) : (d ? n01 : n00)) += 1;
    if (d) g1 += 1, g1_pos += pos; else g0 += 1, g0_neg += !pos;
    if (r) r1 += 1, r1_pos += pos; else r0 += 1, r0_neg += !pos;
  }
  const ReferenceQuality q(n11 / (n11 + n10), n00 / (n00 + n01));
  const double gold_j = g1_pos / g1 + g0_neg / g0 - 1.0;
  const double proxy_j = r1_pos / r1 + r0_neg / r0 - 1.0;
  const double p1 = r1_pos / r1, p0 = r0_neg / r0;
  const double se = std::sqrt(p1 * (1 - p1) / r1 + p0 * (1 - p0) / r0);
  const double z_mult = (proxy_j - q.informedness() * gold_j) / se;
  const double z_div = (proxy_j - gold_j / q.informedness()) / se;
  const bool pass = worst <= 1e-12 && std::abs(z_mult) <= 3.0;
  return {pass, "round-trip worst " + fmt("%.1e", worst) + "; n=1e5 proxy J " + fmt("%.4f", proxy_j) + ", gold J " +
                    fmt("%.4f", gold_j) + ", ppv+npv-1 " + fmt("%.4f", q.informedness()) +
                    ": proxy = factor*gold off by " + fmt("%.2f", z_mult) + " SE, proxy = gold/factor off by " +
                    fmt("%.1f", z_div) + " SE (multiplicative relation holds)"};
}

// ---------------------------------------------------------------- consistency

Outcome consistency(std::size_t threads) {
  const MvnIdentity design{0.45, 5};
  const PopulationOptimum truth = *population_optimum(design);
  std::vector<double> cut_med, w_med;
  for (std::size_t per_class : {100, 400, 1600}) {
    std::vector<double> cut(200), w(200);
    parallel_for(cut.size(), threads, [&](std::size_t r) {
      ScenarioSpec spec;
      spec.kind = design;
      spec.n = 2 * per_class;
      spec.seed = child_seed(child_seed(kSeed + 9, per_class), r);
      const SimulatedSample s = generate(spec);
      OptimizerConfig oc;
      oc.n_starts = 1;
      oc.seed = child_seed(spec.seed, 7);
      const YoudenFit fit = fit_two_stage(s.train, oc);
      if (fit.weights.orientation_flipped()) {
        cut[r] = w[r] = std::numeric_limits<double>::infinity();
        return;
      }
      cut[r] = std::abs(fit.cutoff - truth.cutoff);
      w[r] = (fit.weights.values() - truth.weights.values()).cwiseAbs().maxCoeff();
    });
    cut_med.push_back(median(cut));
    w_med.push_back(median(w));
  }
  const bool pass = cut_med[0] > cut_med[1] && cut_med[1] > cut_med[2] && w_med[0] > w_med[1] && w_med[1] > w_med[2];
  return {pass, "median |c - c0| " + fmt("%.4f", cut_med[0]) + " > " + fmt("%.4f", cut_med[1]) + " > " +
                    fmt("%.4f", cut_med[2]) + "; median max|w - w0| " + fmt("%.4f", w_med[0]) + " > " +
                    fmt("%.4f", w_med[1]) + " > " + fmt("%.4f", w_med[2]) + " (n per class 100/400/1600)"};
}

// ---------------------------------------------------------------- determinism

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(std::size_t) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(BIOCOMB_ACCEPTANCE_WORKDIR) / "determinism";
  fs::create_directories(dir);
  const fs::path data = BIOCOMB_TEST_DATA;
  std::ofstream(dir / "coverage.cfg") << "target_youden = 0.3, 0.6\nclass_sizes = 30x40\nreplications = 25\nseed = 5\n";
  std::ofstream(dir / "compare.cfg") << "design = mvn_unequal\nmu1 = 0.4, 0.7, 1.0\ngamma1 = 0.7\ngamma0 = 0.3\n"
                                        "n = 120\nreference = 1:1, 0.9:0.85\nreplications = 15\nseed = 6\n";

  const std::string cli = BIOCOMB_CLI;
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"fit", "fit --input \"" + (data / "fixture_panel.csv").string() + "\" --method both --ppv 0.9 --npv 0.85"},
      {"coverage", "coverage --config \"" + (dir / "coverage.cfg").string() + "\" --keep-replications --threads 1"},
      {"compare", "compare --config \"" + (dir / "compare.cfg").string() + "\" --keep-replications --threads 1"},
  };
  int same = 0;
  std::string bad;
  for (const auto& [name, args] : runs) {
    std::string out[2];
    bool ran = true;
    for (int k = 0; k < 2; ++k) {
      const fs::path file = dir / (name + std::to_string(k) + ".json");
      fs::remove(file);
      const std::string cmd = "\"" + cli + "\" " + args + " --quiet --out \"" + file.string() + "\"";
      ran = ran && std::system(cmd.c_str()) == 0;
      out[k] = slurp(file);
    }
    if (ran && !out[0].empty() && out[0] == out[1]) {
      ++same;
    } else {
      bad += " " + name;
    }
  }
  return {same == static_cast<int>(runs.size()),
          std::to_string(same) + "/" + std::to_string(runs.size()) + " CLI runs byte-identical on repeat" +
              (bad.empty() ? "" : "; differing:" + bad)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<int> only, expected;
  app.add_option("--threads", threads, "Worker threads for the simulation criteria");
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  app.add_option("--expect-fail", expected, "Known failures that do not affect the exit status")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome(std::size_t)>>> criteria = {
      {"coverage reproduction", coverage_reproduction},
      {"proposed vs NP interval coverage", np_ordering},
      {"two-stage vs simultaneous", method_comparison},
      {"imperfect-reference degradation", imperfect_degradation},
      {"oracle equivalence", oracle_equivalence},
      {"gradient correctness", gradient_check},
      {"proxy algebra", proxy_algebra},
      {"consistency", consistency},
      {"determinism", determinism},
  };

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome o;
    try {
      o = criteria[k].second(threads);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const bool known = std::find(expected.begin(), expected.end(), id) != expected.end();
    failed += !o.pass && !known;
    std::printf("%s %d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(), o.detail.c_str(),
                !o.pass && known ? " [known failure]" : "");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
