#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "json.hpp"

#include "biocomb/config.h"
#include "biocomb/core.h"
#include "biocomb/csv.h"
#include "biocomb/simgen.h"

namespace biocomb {

inline constexpr const char* kSoftwareVersion = "0.1.0";
inline constexpr int kReportFormatVersion = 1;

using Report = nlohmann::ordered_json;

/// Command-line overrides shared by all subcommands. Unset fields fall back
/// to the config file, then to the built-in defaults.
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replications;
  std::optional<double> alpha;
  std::optional<CutoffPolicy> cutoff_policy;
  /// "tsm", "sim" or "both"
  std::optional<std::string> method;
  std::optional<double> ppv;
  std::optional<double> npv;
  bool keep_replications = false;
  std::size_t threads = 1;
  /// Adds wall_time_seconds to reports, which makes them non-reproducible.
  bool timing = false;
  /// Label for the input in fit reports.
  std::string input_name;
};

/// Fit the two-stage model (and optionally the simultaneous baseline) on a
/// panel, with Youden intervals and, given ppv/npv, the imperfect-reference
/// correction.
Report run_fit(const PanelFile& input, const RunOptions& options);

/// Interval coverage experiment over a (target Youden, n1 x n0) grid.
Report run_coverage(const KeyValueConfig& config, const RunOptions& options);

/// Two-stage vs simultaneous comparison on train/test splits over a design grid.
Report run_compare(const KeyValueConfig& config, const RunOptions& options);

/// Scenario for `simulate`: the first cell of a compare-style config.
ScenarioSpec scenario_from_config(const KeyValueConfig& config, const RunOptions& options);

std::string format_fit_table(const Report& report);
std::string format_coverage_table(const Report& report);
std::string format_compare_table(const Report& report);

/// Run body(0..count-1) on up to `threads` workers. Exceptions escaping the
/// body are rethrown (first by index) after all workers finish.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace biocomb
