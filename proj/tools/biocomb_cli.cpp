// biocomb: fit biomarker combinations and run the simulation experiments.
//
// Exit codes: 0 success, 2 validation error, 3 numeric failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "biocomb/csv.h"
#include "biocomb/errors.h"
#include "biocomb/harness.h"
#include "biocomb/simgen.h"

namespace {

using namespace biocomb;

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct Flags {
  std::string input;
  std::string config;
  std::string out;
  std::string test_out;
  std::string cutoff_policy;
  std::string method;
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  double alpha = 0.0;
  double ppv = 0.0;
  double npv = 0.0;
  bool keep_replications = false;
  bool timing = false;
  bool quiet = false;
  std::size_t threads = 1;
};

void emit(const Report& report, const std::string& table, const Flags& f) {
  const std::string json = report.dump(2) + "\n";
  if (!f.out.empty()) {
    std::ofstream out(f.out, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + f.out + "'");
    out << json;
    if (!f.quiet) std::cout << table;
  } else {
    std::cout << json;
  }
}

void write_csv(const std::string& path, const BiomarkerPanel& panel, const std::vector<std::string>& names) {
  if (path.empty() || path == "-") {
    write_panel_csv(std::cout, panel, names);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  write_panel_csv(out, panel, names);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal linear biomarker combinations by Youden index"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kSoftwareVersion));

  Flags f;
  RunOptions opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", f.seed, "Master seed");
    sub->add_option("--out", f.out, "Write the JSON report here and print a table on stdout");
    sub->add_flag("--quiet", f.quiet, "With --out, suppress the table");
  };
  auto add_fit_flags = [&](CLI::App* sub) {
    sub->add_option("--alpha", f.alpha, "Interval level is 1 - alpha (default 0.05)");
    sub->add_option("--cutoff-policy", f.cutoff_policy, "median|min|max (default median)");
    sub->add_option("--method", f.method, "tsm|sim|both");
  };
  auto add_experiment_flags = [&](CLI::App* sub) {
    sub->add_option("--config", f.config, "Key/value experiment config")->required();
    sub->add_option("--reps", f.reps, "Replications per cell (default 1000)");
    sub->add_flag("--keep-replications", f.keep_replications, "Include the per-replication log");
    sub->add_option("--threads", f.threads, "Worker threads (results do not depend on this)");
    sub->add_flag("--timing", f.timing, "Report wall time (breaks byte-for-byte reproducibility)");
  };

  CLI::App* fit = app.add_subcommand("fit", "Fit a combination on a CSV panel");
  fit->add_option("--input", f.input, "CSV with a 'label' column (0/1) and biomarker columns")->required();
  fit->add_option("--ppv", f.ppv, "Reference test ppv, enables the imperfect-reference correction");
  fit->add_option("--npv", f.npv, "Reference test npv");
  fit->add_flag("--timing", f.timing, "Report wall time");
  add_common(fit);
  add_fit_flags(fit);

  CLI::App* coverage = app.add_subcommand("coverage", "Youden interval coverage experiment");
  add_common(coverage);
  add_fit_flags(coverage);
  add_experiment_flags(coverage);

  CLI::App* compare = app.add_subcommand("compare", "Two-stage vs simultaneous comparison experiment");
  add_common(compare);
  add_fit_flags(compare);
  add_experiment_flags(compare);

  CLI::App* simulate = app.add_subcommand("simulate", "Write one simulated panel as CSV");
  simulate->add_option("--config", f.config, "Compare-style scenario config (first cell is used)")->required();
  simulate->add_option("--seed", f.seed, "Seed");
  simulate->add_option("--out", f.out, "Training panel CSV (default stdout)");
  simulate->add_option("--test-out", f.test_out, "Test panel CSV when the scenario has a split");
  simulate->add_flag("--gold", "Label rows by true disease status instead of the reference");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--seed")) opt.seed = f.seed;
    if (sub->get_option_no_throw("--reps") && sub->count("--reps")) opt.replications = f.reps;
    if (sub->get_option_no_throw("--alpha") && sub->count("--alpha")) opt.alpha = f.alpha;
    if (sub->get_option_no_throw("--cutoff-policy") && sub->count("--cutoff-policy")) {
      opt.cutoff_policy = parse_cutoff_policy(f.cutoff_policy);
    }
    if (sub->get_option_no_throw("--method") && sub->count("--method")) opt.method = f.method;
    if (sub->get_option_no_throw("--ppv") && sub->count("--ppv")) opt.ppv = f.ppv;
    if (sub->get_option_no_throw("--npv") && sub->count("--npv")) opt.npv = f.npv;
    opt.keep_replications = f.keep_replications;
    opt.threads = f.threads;
    opt.timing = f.timing;

    if (sub == fit) {
      const PanelFile panel = read_panel_csv_file(f.input, LabelKind::GoldStandard);
      opt.input_name = f.input;
      const Report r = run_fit(panel, opt);
      emit(r, format_fit_table(r), f);
    } else if (sub == coverage) {
      const Report r = run_coverage(KeyValueConfig::load(f.config), opt);
      emit(r, format_coverage_table(r), f);
    } else if (sub == compare) {
      const Report r = run_compare(KeyValueConfig::load(f.config), opt);
      emit(r, format_compare_table(r), f);
    } else {
      const ScenarioSpec spec = scenario_from_config(KeyValueConfig::load(f.config), opt);
      const SimulatedSample s = generate(spec);
      const bool gold = sub->count("--gold") > 0;
      const auto names = default_biomarker_names(spec.biomarkers());
      write_csv(f.out, gold ? s.train.relabeled(s.train_gold, LabelKind::GoldStandard) : s.train, names);
      if (!f.test_out.empty()) {
        if (!s.test) throw ValidationError("--test-out given but the scenario has no train_fraction");
        write_csv(f.test_out, gold ? s.test->relabeled(s.test_gold, LabelKind::GoldStandard) : *s.test, names);
      }
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
