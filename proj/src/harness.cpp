#include "biocomb/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "biocomb/errors.h"
#include "biocomb/imperfect.h"
#include "biocomb/inference.h"
#include "biocomb/rng.h"
#include "biocomb/youden.h"

namespace biocomb {

namespace {

using Clock = std::chrono::steady_clock;

const std::set<std::string> kCommonKeys = {"replications", "seed",           "alpha",
                                           "cutoff_policy", "n_starts",      "max_iterations",
                                           "gradient_tolerance", "start_spread", "methods"};

struct Methods {
  bool tsm = true;
  bool sim = false;
};

struct CommonSettings {
  std::size_t replications = 1000;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  CutoffPolicy policy = CutoffPolicy::Median;
  OptimizerConfig optimizer;
  Methods methods;
};

Methods parse_methods(const std::vector<std::string>& items) {
  Methods m{false, false};
  for (const auto& item : items) {
    if (item == "tsm") {
      m.tsm = true;
    } else if (item == "sim") {
      m.sim = true;
    } else if (item == "both") {
      m.tsm = m.sim = true;
    } else {
      throw ValidationError("unknown method '" + item + "' (expected tsm|sim|both)");
    }
  }
  return m;
}

CommonSettings common_settings(const KeyValueConfig& cfg, const RunOptions& opt, Methods default_methods) {
  CommonSettings s;
  s.replications = opt.replications ? *opt.replications : cfg.get_count("replications", 1000);
  s.seed = opt.seed ? *opt.seed : cfg.get_u64("seed", 1);
  s.alpha = opt.alpha ? *opt.alpha : cfg.get_double("alpha", 0.05);
  if (!(s.alpha > 0.0 && s.alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  s.policy = opt.cutoff_policy ? *opt.cutoff_policy : parse_cutoff_policy(cfg.get_string("cutoff_policy", "median"));
  s.optimizer.n_starts = static_cast<int>(cfg.get_count("n_starts", 10));
  s.optimizer.max_iterations = static_cast<int>(cfg.get_count("max_iterations", 500));
  s.optimizer.gradient_tolerance = cfg.get_double("gradient_tolerance", 1e-6);
  s.optimizer.start_spread = cfg.get_double("start_spread", s.optimizer.start_spread);
  s.optimizer.validate();
  if (opt.method) {
    s.methods = parse_methods({*opt.method});
  } else if (cfg.has("methods")) {
    s.methods = parse_methods(cfg.get_list("methods"));
  } else {
    s.methods = default_methods;
  }
  if (s.replications < 1) throw ValidationError("replications must be >= 1");
  return s;
}

Report settings_json(const CommonSettings& s) {
  Report j;
  j["replications"] = s.replications;
  j["seed"] = s.seed;
  j["alpha"] = s.alpha;
  j["cutoff_policy"] = std::string(to_string(s.policy));
  j["optimizer"] = {{"n_starts", s.optimizer.n_starts},
                    {"max_iterations", s.optimizer.max_iterations},
                    {"gradient_tolerance", s.optimizer.gradient_tolerance},
                    {"start_spread", s.optimizer.start_spread}};
  return j;
}

Report header(const std::string& command) {
  Report j;
  j["format_version"] = kReportFormatVersion;
  j["software_version"] = kSoftwareVersion;
  j["command"] = command;
  return j;
}

Report weights_json(const CombinationWeights& w, const std::vector<std::string>& names) {
  Report j = Report::object();
  for (std::size_t k = 0; k < w.size(); ++k) j[names[k]] = w.values()(static_cast<Eigen::Index>(k));
  return j;
}

struct Summary {
  double mean = 0.0;
  double variance = 0.0;
};

// Sample mean and (n - 1) variance, accumulated in index order.
Summary summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  long double sum = 0.0L;
  for (double x : xs) sum += x;
  const long double mean = sum / static_cast<long double>(xs.size());
  long double ss = 0.0L;
  for (double x : xs) ss += (x - mean) * (x - mean);
  s.mean = static_cast<double>(mean);
  s.variance = xs.size() > 1 ? static_cast<double>(ss / static_cast<long double>(xs.size() - 1)) : 0.0;
  return s;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

Report fit_method_json(const YoudenFit& fit, const BiomarkerPanel& panel, double alpha,
                       const std::vector<std::string>& names) {
  Report j;
  j["weights"] = weights_json(fit.weights, names);
  j["orientation_flipped"] = fit.weights.orientation_flipped();
  j["cutoff"] = fit.cutoff;
  j["youden"] = fit.youden;
  j["sensitivity"] = fit.sensitivity;
  j["specificity"] = fit.specificity;
  j["converged"] = fit.converged;
  const YoudenInterval ci = youden_interval(fit, panel, alpha);
  const IntervalEstimate np = youden_interval_np(fit, panel, alpha);
  j["interval"] = {{"level", ci.interval.level},
                   {"ac_youden", ci.ac_youden},
                   {"lower", ci.interval.lower},
                   {"upper", ci.interval.upper}};
  j["np_interval"] = {{"level", np.level}, {"lower", np.lower}, {"upper", np.upper}};
  return j;
}

// ---- coverage --------------------------------------------------------------

struct ClassSizes {
  std::size_t n1 = 0;
  std::size_t n0 = 0;
};

ClassSizes parse_class_sizes(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw ValidationError("class size '" + text + "' must look like N1xN0");
  ClassSizes c{static_cast<std::size_t>(parse_u64(text.substr(0, x), "class_sizes")),
               static_cast<std::size_t>(parse_u64(text.substr(x + 1), "class_sizes"))};
  if (c.n1 < 2 || c.n0 < 2) throw ValidationError("class sizes must each be >= 2");
  return c;
}

struct CoverageRecord {
  bool ok = false;
  std::string error;
  std::uint64_t seed = 0;
  double youden = 0.0;
  double ac_youden = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double np_lower = 0.0;
  double np_upper = 0.0;
  bool converged = true;
};

// ---- compare ---------------------------------------------------------------

struct MethodRecord {
  double train = 0.0;
  double test = 0.0;
  double train_gold = 0.0;
  double test_gold = 0.0;
  bool converged = true;
};

struct CompareRecord {
  bool ok = false;
  std::string error;
  std::uint64_t seed = 0;
  std::optional<MethodRecord> tsm;
  std::optional<MethodRecord> sim;
};

struct CompareCell {
  std::string id;
  ScenarioSpec spec;
  std::size_t data_index = 0;  // shared by cells differing only in reference accuracy
  Report parameters;
};

std::optional<ReferenceAccuracy> parse_reference(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("reference '" + text + "' must look like SE:SP");
  const double se = parse_double(text.substr(0, colon), "reference");
  const double sp = parse_double(text.substr(colon + 1), "reference");
  if (se == 1.0 && sp == 1.0) return std::nullopt;
  return ReferenceAccuracy{se, sp};
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

const std::set<std::string> kDesignKeys = {"design",      "target_youden", "biomarkers",  "mu1",
                                           "gamma",       "gamma1",        "gamma0",      "bernoulli_p",
                                           "logit_coefs", "intercept",     "prevalence",  "n",
                                           "reference",   "train_fraction"};

struct DesignVariant {
  ScenarioKind kind;
  Report parameters;
};

std::vector<DesignVariant> design_variants(const KeyValueConfig& cfg) {
  const std::string design = cfg.get_string("design", "mvn_identity");
  std::vector<DesignVariant> out;
  if (design == "mvn_identity") {
    const std::size_t p = cfg.get_count("biomarkers", 5);
    for (double j0 : cfg.get_doubles("target_youden")) {
      out.push_back({MvnIdentity{j0, p}, Report{{"design", design}, {"target_youden", j0}, {"biomarkers", p}}});
    }
  } else if (design == "mvn_equal") {
    const Eigen::VectorXd mu = to_vector(cfg.get_doubles("mu1"));
    for (double g : cfg.get_doubles("gamma")) {
      out.push_back({MvnEqualCov{mu, g}, Report{{"design", design}, {"gamma", g}}});
    }
  } else if (design == "mvn_unequal") {
    const Eigen::VectorXd mu = to_vector(cfg.get_doubles("mu1"));
    const double g1 = cfg.get_double("gamma1");
    const double g0 = cfg.get_double("gamma0");
    out.push_back({MvnUnequalCov{mu, g1, g0}, Report{{"design", design}, {"gamma1", g1}, {"gamma0", g0}}});
  } else if (design == "binary") {
    const Eigen::VectorXd probs = to_vector(cfg.get_doubles("bernoulli_p"));
    const Eigen::VectorXd coefs = to_vector(cfg.get_doubles("logit_coefs"));
    BinaryLogistic b{probs, coefs, 0.0};
    const std::string intercept = cfg.get_string("intercept", "0");
    if (intercept != "calibrate") b.intercept = parse_double(intercept, "intercept");
    // calibration needs the prevalence; resolved per cell below
    Report params{{"design", design}, {"intercept", intercept}};
    out.push_back({b, params});
  } else {
    throw ValidationError("unknown design '" + design + "' (expected mvn_identity|mvn_equal|mvn_unequal|binary)");
  }
  return out;
}

std::vector<CompareCell> compare_cells(const KeyValueConfig& cfg, std::uint64_t seed) {
  const auto variants = design_variants(cfg);
  const auto prevalences = cfg.has("prevalence") ? cfg.get_doubles("prevalence") : std::vector<double>{0.5};
  const auto sizes = cfg.has("n") ? cfg.get_counts("n") : std::vector<std::size_t>{200};
  const auto references = cfg.has("reference") ? cfg.get_list("reference") : std::vector<std::string>{"1:1"};
  const double train_fraction = cfg.get_double("train_fraction", 0.5);
  const bool calibrate = cfg.get_string("intercept", "0") == "calibrate";

  std::vector<CompareCell> cells;
  std::size_t data_index = 0;
  for (const auto& variant : variants) {
    for (double prev : prevalences) {
      for (std::size_t n : sizes) {
        for (const auto& ref_text : references) {
          CompareCell cell;
          cell.spec.kind = variant.kind;
          if (auto* b = std::get_if<BinaryLogistic>(&cell.spec.kind); b && calibrate) {
            b->intercept = calibrate_intercept(b->bernoulli_p, b->logit_coefs, prev);
          }
          cell.spec.n = n;
          cell.spec.prevalence = prev;
          cell.spec.reference = parse_reference(ref_text);
          cell.spec.train_fraction = train_fraction;
          cell.spec.seed = child_seed(seed, data_index);
          cell.spec.validate();
          cell.data_index = data_index;
          cell.parameters = variant.parameters;
          cell.parameters["prevalence"] = prev;
          cell.parameters["n"] = n;
          cell.parameters["reference"] = ref_text;
          cell.parameters["train_fraction"] = train_fraction;
          std::ostringstream id;
          id << "cell" << cells.size();
          cell.id = id.str();
          cells.push_back(std::move(cell));
        }
        ++data_index;
      }
    }
  }
  return cells;
}

MethodRecord evaluate_method(const YoudenFit& fit, const SimulatedSample& sample) {
  MethodRecord r;
  r.train = fit.youden;
  r.test = evaluate_fit(fit, *sample.test).youden;
  r.train_gold = evaluate_fit(fit, sample.train.relabeled(sample.train_gold, LabelKind::GoldStandard)).youden;
  r.test_gold = evaluate_fit(fit, sample.test->relabeled(sample.test_gold, LabelKind::GoldStandard)).youden;
  r.converged = fit.converged;
  return r;
}

Report method_aggregate(const std::vector<MethodRecord>& recs) {
  std::vector<double> train, test, train_gold, test_gold;
  std::size_t unconverged = 0;
  for (const auto& r : recs) {
    train.push_back(r.train);
    test.push_back(r.test);
    train_gold.push_back(r.train_gold);
    test_gold.push_back(r.test_gold);
    if (!r.converged) ++unconverged;
  }
  const Summary a = summarize(train), b = summarize(test), c = summarize(train_gold), d = summarize(test_gold);
  Report j;
  j["train_mean"] = a.mean;
  j["test_mean"] = b.mean;
  j["train_variance"] = a.variance;
  j["test_variance"] = b.variance;
  j["train_gold_mean"] = c.mean;
  j["test_gold_mean"] = d.mean;
  j["train_gold_variance"] = c.variance;
  j["test_gold_variance"] = d.variance;
  j["unconverged"] = unconverged;
  return j;
}

Report method_record_json(const MethodRecord& r) {
  return Report{{"train", r.train},
                {"test", r.test},
                {"train_gold", r.train_gold},
                {"test_gold", r.test_gold},
                {"converged", r.converged}};
}

}  // namespace

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  std::vector<std::exception_ptr> errors(count);
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Report run_fit(const PanelFile& input, const RunOptions& options) {
  const auto start = Clock::now();
  const BiomarkerPanel& panel = input.panel;
  const double alpha = options.alpha.value_or(0.05);
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  const CutoffPolicy policy = options.cutoff_policy.value_or(CutoffPolicy::Median);
  const Methods methods = options.method ? parse_methods({*options.method}) : Methods{true, false};
  if (options.ppv.has_value() != options.npv.has_value()) {
    throw ValidationError("--ppv and --npv must be given together");
  }
  OptimizerConfig config;
  if (options.seed) config.seed = *options.seed;

  Report j = header("fit");
  j["input"] = options.input_name;
  j["n"] = panel.rows();
  j["n_diseased"] = panel.n_diseased();
  j["n_healthy"] = panel.n_healthy();
  j["biomarkers"] = input.biomarker_names;
  j["label_kind"] = panel.label_kind() == LabelKind::GoldStandard ? "gold_standard" : "imperfect_reference";
  j["alpha"] = alpha;
  j["cutoff_policy"] = std::string(to_string(policy));
  j["seed"] = config.seed;
  j["bandwidth"] = default_bandwidth(panel.n_diseased(), panel.n_healthy()).value();

  Report m = Report::object();
  std::optional<YoudenFit> tsm;
  if (methods.tsm) {
    tsm = fit_two_stage(panel, config, policy);
    m["tsm"] = fit_method_json(*tsm, panel, alpha, input.biomarker_names);
  }
  if (methods.sim) {
    m["sim"] = fit_method_json(fit_simultaneous(panel, config), panel, alpha, input.biomarker_names);
  }
  j["methods"] = m;

  if (options.ppv) {
    const ReferenceQuality q(*options.ppv, *options.npv);
    const YoudenFit base = tsm ? *tsm : fit_two_stage(panel, config, policy);
    const double corrected = true_youden_from_proxy(base.youden, q);
    j["imperfect"] = {{"ppv", q.ppv()},
                      {"npv", q.npv()},
                      {"proxy_youden", base.youden},
                      {"corrected_youden", corrected},
                      {"correction_out_of_range", !(corrected >= -1.0 && corrected <= 1.0)}};
  }
  if (options.timing) j["wall_time_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  return j;
}

Report run_coverage(const KeyValueConfig& cfg, const RunOptions& options) {
  const auto start = Clock::now();
  std::set<std::string> known = kCommonKeys;
  known.insert({"target_youden", "class_sizes", "biomarkers"});
  cfg.require_known(known);
  const CommonSettings s = common_settings(cfg, options, Methods{true, false});
  const auto targets = cfg.get_doubles("target_youden");
  std::vector<ClassSizes> sizes;
  for (const auto& t : cfg.get_list("class_sizes")) sizes.push_back(parse_class_sizes(t));
  const std::size_t p = cfg.get_count("biomarkers", 5);

  Report j = header("coverage");
  j["settings"] = settings_json(s);
  j["settings"]["biomarkers"] = p;
  Report cells = Report::array();

  std::size_t cell_index = 0;
  for (double j0 : targets) {
    for (const ClassSizes& cs : sizes) {
      const std::uint64_t cell_seed = child_seed(s.seed, cell_index);
      ScenarioSpec spec;
      spec.kind = MvnIdentity{j0, p};
      spec.n = cs.n1 + cs.n0;
      spec.prevalence = static_cast<double>(cs.n1) / static_cast<double>(spec.n);
      spec.validate();

      std::vector<CoverageRecord> recs(s.replications);
      parallel_for(s.replications, options.threads, [&](std::size_t r) {
        CoverageRecord& rec = recs[r];
        rec.seed = child_seed(cell_seed, r);
        try {
          ScenarioSpec local = spec;
          local.seed = rec.seed;
          const SimulatedSample sample = generate(local);
          OptimizerConfig oc = s.optimizer;
          oc.seed = child_seed(rec.seed, 7);
          const YoudenFit fit = fit_two_stage(sample.train, oc, s.policy);
          const YoudenInterval ci = youden_interval(fit, sample.train, s.alpha);
          const IntervalEstimate np = youden_interval_np(fit, sample.train, s.alpha);
          rec.youden = fit.youden;
          rec.ac_youden = ci.ac_youden;
          rec.lower = ci.interval.lower;
          rec.upper = ci.interval.upper;
          rec.np_lower = np.lower;
          rec.np_upper = np.upper;
          rec.converged = fit.converged;
          rec.ok = true;
        } catch (const std::exception& e) {
          rec.error = e.what();
        }
      });

      std::size_t ok = 0, covered = 0, covered_np = 0, unconverged = 0;
      std::vector<double> lengths, lowers, uppers, js, acs;
      Report failures = Report::array();
      Report log = Report::array();
      for (std::size_t r = 0; r < recs.size(); ++r) {
        const CoverageRecord& rec = recs[r];
        if (!rec.ok) {
          failures.push_back({{"replication", r}, {"seed", rec.seed}, {"error", rec.error}});
          continue;
        }
        ++ok;
        if (rec.lower < j0 && j0 < rec.upper) ++covered;
        if (rec.np_lower < j0 && j0 < rec.np_upper) ++covered_np;
        if (!rec.converged) ++unconverged;
        lengths.push_back(rec.upper - rec.lower);
        lowers.push_back(rec.lower);
        uppers.push_back(rec.upper);
        js.push_back(rec.youden);
        acs.push_back(rec.ac_youden);
        if (options.keep_replications) {
          log.push_back({{"replication", r},
                         {"seed", rec.seed},
                         {"youden", rec.youden},
                         {"ac_youden", rec.ac_youden},
                         {"lower", rec.lower},
                         {"upper", rec.upper},
                         {"np_lower", rec.np_lower},
                         {"np_upper", rec.np_upper},
                         {"converged", rec.converged}});
        }
      }
      const double denom = ok > 0 ? static_cast<double>(ok) : 1.0;
      Report cell;
      cell["id"] = "cell" + std::to_string(cell_index);
      cell["target_youden"] = j0;
      cell["n1"] = cs.n1;
      cell["n0"] = cs.n0;
      cell["seed"] = cell_seed;
      cell["replications"] = ok;
      cell["coverage_np"] = static_cast<double>(covered_np) / denom;
      cell["coverage"] = static_cast<double>(covered) / denom;
      cell["average_length"] = summarize(lengths).mean;
      cell["mean_lower"] = summarize(lowers).mean;
      cell["mean_upper"] = summarize(uppers).mean;
      cell["mean_youden"] = summarize(js).mean;
      cell["mean_ac_youden"] = summarize(acs).mean;
      cell["unconverged"] = unconverged;
      cell["failures"] = failures;
      if (options.keep_replications) cell["replication_log"] = log;
      cells.push_back(cell);
      ++cell_index;
    }
  }
  j["cells"] = cells;
  if (options.timing) j["wall_time_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  return j;
}

Report run_compare(const KeyValueConfig& cfg, const RunOptions& options) {
  const auto start = Clock::now();
  std::set<std::string> known = kCommonKeys;
  known.insert(kDesignKeys.begin(), kDesignKeys.end());
  cfg.require_known(known);
  const CommonSettings s = common_settings(cfg, options, Methods{true, true});
  const auto cells = compare_cells(cfg, s.seed);

  Report j = header("compare");
  j["settings"] = settings_json(s);
  j["settings"]["methods"] = Report::array();
  if (s.methods.tsm) j["settings"]["methods"].push_back("tsm");
  if (s.methods.sim) j["settings"]["methods"].push_back("sim");
  Report out_cells = Report::array();

  for (const CompareCell& cell : cells) {
    std::vector<CompareRecord> recs(s.replications);
    parallel_for(s.replications, options.threads, [&](std::size_t r) {
      CompareRecord& rec = recs[r];
      rec.seed = child_seed(cell.spec.seed, r);
      try {
        ScenarioSpec local = cell.spec;
        local.seed = rec.seed;
        const SimulatedSample sample = generate(local);
        OptimizerConfig oc = s.optimizer;
        oc.seed = child_seed(rec.seed, 7);
        if (s.methods.tsm) rec.tsm = evaluate_method(fit_two_stage(sample.train, oc, s.policy), sample);
        if (s.methods.sim) rec.sim = evaluate_method(fit_simultaneous(sample.train, oc), sample);
        rec.ok = true;
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
    });

    std::vector<MethodRecord> tsm, sim;
    Report failures = Report::array();
    Report log = Report::array();
    for (std::size_t r = 0; r < recs.size(); ++r) {
      const CompareRecord& rec = recs[r];
      if (!rec.ok) {
        failures.push_back({{"replication", r}, {"seed", rec.seed}, {"error", rec.error}});
        continue;
      }
      if (rec.tsm) tsm.push_back(*rec.tsm);
      if (rec.sim) sim.push_back(*rec.sim);
      if (options.keep_replications) {
        Report entry{{"replication", r}, {"seed", rec.seed}};
        if (rec.tsm) entry["tsm"] = method_record_json(*rec.tsm);
        if (rec.sim) entry["sim"] = method_record_json(*rec.sim);
        log.push_back(entry);
      }
    }
    Report c;
    c["id"] = cell.id;
    c["parameters"] = cell.parameters;
    c["seed"] = cell.spec.seed;
    c["replications"] = recs.size() - failures.size();
    Report methods = Report::object();
    if (s.methods.tsm) methods["tsm"] = method_aggregate(tsm);
    if (s.methods.sim) methods["sim"] = method_aggregate(sim);
    c["methods"] = methods;
    c["failures"] = failures;
    if (options.keep_replications) c["replication_log"] = log;
    out_cells.push_back(c);
  }
  j["cells"] = out_cells;
  if (options.timing) j["wall_time_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  return j;
}

ScenarioSpec scenario_from_config(const KeyValueConfig& cfg, const RunOptions& options) {
  std::set<std::string> known = kCommonKeys;
  known.insert(kDesignKeys.begin(), kDesignKeys.end());
  cfg.require_known(known);
  const std::uint64_t seed = options.seed ? *options.seed : cfg.get_u64("seed", 1);
  ScenarioSpec spec = compare_cells(cfg, seed).front().spec;
  spec.seed = seed;
  if (!cfg.has("train_fraction")) spec.train_fraction.reset();
  return spec;
}

std::string format_fit_table(const Report& r) {
  std::ostringstream out;
  out << "n = " << r["n"].get<std::size_t>() << " (diseased " << r["n_diseased"].get<std::size_t>() << ", healthy "
      << r["n_healthy"].get<std::size_t>() << "), bandwidth " << fmt("%.5f", r["bandwidth"].get<double>()) << "\n";
  for (const auto& [name, m] : r["methods"].items()) {
    out << "\n[" << name << "]\n";
    out << "  weights:";
    for (const auto& [marker, w] : m["weights"].items()) out << "  " << marker << "=" << fmt("%.4f", w.get<double>());
    if (m["orientation_flipped"].get<bool>()) out << "  (score negated)";
    out << "\n";
    out << "  cutoff       " << fmt("%10.4f", m["cutoff"].get<double>()) << "\n";
    out << "  youden       " << fmt("%10.4f", m["youden"].get<double>()) << "\n";
    out << "  sensitivity  " << fmt("%10.4f", m["sensitivity"].get<double>()) << "\n";
    out << "  specificity  " << fmt("%10.4f", m["specificity"].get<double>()) << "\n";
    const auto& ci = m["interval"];
    out << "  AC youden    " << fmt("%10.4f", ci["ac_youden"].get<double>()) << "   "
        << fmt("%.0f%%", 100.0 * ci["level"].get<double>()) << " CI (" << fmt("%.4f", ci["lower"].get<double>())
        << ", " << fmt("%.4f", ci["upper"].get<double>()) << ")\n";
    const auto& np = m["np_interval"];
    out << "  NP interval  (" << fmt("%.4f", np["lower"].get<double>()) << ", "
        << fmt("%.4f", np["upper"].get<double>()) << ")\n";
    if (!m["converged"].get<bool>()) out << "  warning: optimizer did not reach its gradient tolerance\n";
  }
  if (r.contains("imperfect")) {
    const auto& q = r["imperfect"];
    out << "\nimperfect reference: ppv " << fmt("%.4f", q["ppv"].get<double>()) << ", npv "
        << fmt("%.4f", q["npv"].get<double>()) << ", corrected youden "
        << fmt("%.4f", q["corrected_youden"].get<double>());
    if (q["correction_out_of_range"].get<bool>()) out << " (outside [-1, 1])";
    out << "\n";
  }
  return out.str();
}

std::string format_coverage_table(const Report& r) {
  std::ostringstream out;
  out << "Youden  n1   n0    CR_NP  CR     AL      LL      UL      reps\n";
  for (const auto& c : r["cells"]) {
    char line[160];
    std::snprintf(line, sizeof line, "%-6.2f  %-4zu %-4zu  %.3f  %.3f  %.4f  %.4f  %.4f  %zu\n",
                  c["target_youden"].get<double>(), c["n1"].get<std::size_t>(), c["n0"].get<std::size_t>(),
                  c["coverage_np"].get<double>(), c["coverage"].get<double>(), c["average_length"].get<double>(),
                  c["mean_lower"].get<double>(), c["mean_upper"].get<double>(), c["replications"].get<std::size_t>());
    out << line;
  }
  return out.str();
}

std::string format_compare_table(const Report& r) {
  std::ostringstream out;
  out << "cell     prevalence  n     reference   method  train    test     var(train)  var(test)\n";
  for (const auto& c : r["cells"]) {
    const auto& p = c["parameters"];
    for (const auto& [name, m] : c["methods"].items()) {
      char line[200];
      std::snprintf(line, sizeof line, "%-8s %-10.2f  %-5zu %-11s %-6s  %.4f   %.4f   %.4f      %.4f\n",
                    c["id"].get<std::string>().c_str(), p["prevalence"].get<double>(), p["n"].get<std::size_t>(),
                    p["reference"].get<std::string>().c_str(), name.c_str(), m["train_mean"].get<double>(),
                    m["test_mean"].get<double>(), m["train_variance"].get<double>(), m["test_variance"].get<double>());
      out << line;
    }
  }
  return out.str();
}

}  // namespace biocomb
