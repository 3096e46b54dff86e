#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"

#include "biocomb/errors.h"
#include "biocomb/harness.h"
#include "biocomb/inference.h"
#include "biocomb/rng.h"
#include "biocomb/youden.h"

using namespace biocomb;

#ifndef BIOCOMB_TEST_DATA
#error "BIOCOMB_TEST_DATA must point at tests/data"
#endif

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PanelFile csv(const std::string& text) {
  std::istringstream in(text);
  return read_panel_csv(in);
}

KeyValueConfig small_coverage() {
  return KeyValueConfig::parse_string(
      "target_youden = 0.6\nclass_sizes = 20x20, 15x25\nreplications = 10\nseed = 3\nn_starts = 2\n");
}

KeyValueConfig small_compare() {
  return KeyValueConfig::parse_string(
      "design = mvn_identity\ntarget_youden = 0.6\nbiomarkers = 3\nprevalence = 0.5\nn = 60\n"
      "reference = 1:1, 0.9:0.9\nreplications = 4\nseed = 5\nn_starts = 2\n");
}

}  // namespace

TEST_CASE("fit report on the bundled fixture matches the golden file") {
  const std::string dir = BIOCOMB_TEST_DATA;
  const PanelFile panel = read_panel_csv_file(dir + "/fixture_panel.csv");
  RunOptions opt;
  opt.method = "both";
  opt.ppv = 0.9;
  opt.npv = 0.85;
  opt.input_name = "fixture_panel.csv";
  const Report r = run_fit(panel, opt);
  CHECK(r.dump(2) + "\n" == slurp(dir + "/fixture_fit.golden.json"));
  CHECK_FALSE(format_fit_table(r).empty());
}

TEST_CASE("perfectly separated two-column panel has Youden 1") {
  const Report r = run_fit(csv("label,a,b\n1,5,1\n1,6,0\n1,7,2\n0,0,1\n0,1,2\n0,2,0\n"), RunOptions{});
  CHECK(r["methods"]["tsm"]["youden"].get<double>() == 1.0);
}

TEST_CASE("single biomarker reports unit weight") {
  const Report r = run_fit(csv("label,only\n1,3\n1,2\n0,1\n0,2.5\n"), RunOptions{});
  CHECK(r["methods"]["tsm"]["weights"].size() == 1);
  CHECK(r["methods"]["tsm"]["weights"]["only"].get<double>() == 1.0);
}

TEST_CASE("fit rejects single-class data and half-specified reference quality") {
  CHECK_THROWS_AS(run_fit(csv("label,a\n1,3\n1,2\n"), RunOptions{}), ValidationError);
  RunOptions opt;
  opt.ppv = 0.9;
  CHECK_THROWS_AS(run_fit(csv("label,a\n1,3\n0,2\n"), opt), ValidationError);
}

TEST_CASE("coverage report is well formed and matches its replication log") {
  RunOptions opt;
  opt.keep_replications = true;
  const Report r = run_coverage(small_coverage(), opt);
  REQUIRE(r["cells"].size() == 2);
  for (const auto& cell : r["cells"]) {
    CHECK(cell["replications"].get<std::size_t>() + cell["failures"].size() == 10);
    const double cr = cell["coverage"].get<double>();
    CHECK(cr >= 0.0);
    CHECK(cr <= 1.0);
    CHECK(std::abs(cr * 10.0 - std::round(cr * 10.0)) < 1e-12);

    double covered = 0, covered_np = 0, length = 0;
    const double j0 = cell["target_youden"].get<double>();
    for (const auto& rep : cell["replication_log"]) {
      const double lo = rep["lower"].get<double>(), hi = rep["upper"].get<double>();
      covered += lo < j0 && j0 < hi;
      covered_np += rep["np_lower"].get<double>() < j0 && j0 < rep["np_upper"].get<double>();
      length += hi - lo;
    }
    const double n = static_cast<double>(cell["replication_log"].size());
    CHECK(cell["coverage"].get<double>() == covered / n);
    CHECK(cell["coverage_np"].get<double>() == covered_np / n);
    CHECK(cell["average_length"].get<double>() == doctest::Approx(length / n).epsilon(1e-14));
  }
  CHECK_FALSE(format_coverage_table(r).empty());
}

TEST_CASE("compare runs both methods on the same panel per replication") {
  RunOptions opt;
  opt.keep_replications = true;
  const KeyValueConfig cfg = small_compare();
  const Report r = run_compare(cfg, opt);
  REQUIRE(r["cells"].size() == 2);
  const auto& cell = r["cells"][0];
  const auto& rep = cell["replication_log"][1];

  // rebuild replication 1 of cell 0 by hand
  ScenarioSpec spec;
  spec.kind = MvnIdentity{0.6, 3};
  spec.n = 60;
  spec.train_fraction = 0.5;
  spec.seed = rep["seed"].get<std::uint64_t>();
  const SimulatedSample s = generate(spec);
  OptimizerConfig oc;
  oc.n_starts = 2;
  oc.seed = child_seed(spec.seed, 7);
  const YoudenFit tsm = fit_two_stage(s.train, oc, CutoffPolicy::Median);
  const YoudenFit sim = fit_simultaneous(s.train, oc);
  CHECK(rep["tsm"]["train"].get<double>() == tsm.youden);
  CHECK(rep["tsm"]["test"].get<double>() == evaluate_fit(tsm, *s.test).youden);
  CHECK(rep["sim"]["train"].get<double>() == sim.youden);
  CHECK(rep["sim"]["test"].get<double>() == evaluate_fit(sim, *s.test).youden);

  double sum = 0.0;
  for (const auto& e : cell["replication_log"]) sum += e["tsm"]["train"].get<double>();
  CHECK(cell["methods"]["tsm"]["train_mean"].get<double>() == doctest::Approx(sum / 4.0).epsilon(1e-14));

  // reference levels reuse the same gold data
  CHECK(cell["seed"] == r["cells"][1]["seed"]);
  const auto& noisy = r["cells"][1]["replication_log"][1];
  CHECK(noisy["seed"] == rep["seed"]);
  CHECK_FALSE(format_compare_table(r).empty());
}

TEST_CASE("reports are byte identical across runs and thread counts") {
  RunOptions one, many;
  many.threads = 3;
  const std::string a = run_compare(small_compare(), one).dump(2);
  CHECK(a == run_compare(small_compare(), one).dump(2));
  CHECK(a == run_compare(small_compare(), many).dump(2));
  CHECK(run_coverage(small_coverage(), one).dump(2) == run_coverage(small_coverage(), many).dump(2));
  CHECK(a.find("wall_time") == std::string::npos);
}

TEST_CASE("command-line overrides take precedence over the config") {
  RunOptions opt;
  opt.replications = 2;
  opt.seed = 99;
  const Report r = run_coverage(small_coverage(), opt);
  CHECK(r["settings"]["replications"].get<std::size_t>() == 2);
  CHECK(r["settings"]["seed"].get<std::uint64_t>() == 99);
  CHECK(r["cells"][0]["replications"].get<std::size_t>() == 2);
}

TEST_CASE("config errors are validation errors") {
  CHECK_THROWS_AS(run_coverage(KeyValueConfig::parse_string("target_youden = 0.5\nclass_sizes = 10x10\nbogus = 1\n"),
                               RunOptions{}),
                  ValidationError);
  CHECK_THROWS_AS(run_coverage(KeyValueConfig::parse_string("target_youden = 0.5\nclass_sizes = 10-10\n"), RunOptions{}),
                  ValidationError);
  CHECK_THROWS_AS(run_compare(KeyValueConfig::parse_string("design = copula\n"), RunOptions{}), ValidationError);
  CHECK_THROWS_AS(run_compare(KeyValueConfig::parse_string("target_youden = 0.5\nmethods = lda\n"), RunOptions{}),
                  ValidationError);
}

TEST_CASE("parallel_for covers every index and rethrows body failures") {
  std::vector<int> hits(37, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(5, 2, [](std::size_t i) {
                    if (i == 3) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}
