#pragma once

#include <string>

#include "json.hpp"
#include "rmtsym/config.hpp"

namespace rmtsym {

using ordered_json = nlohmann::ordered_json;

/// Structured experiment results. `content` is fully determined by the
/// config (including seed) regardless of worker count; wall-clock and worker
/// metadata live in `timing` and are excluded from the reproducibility
/// contract. Criterion statuses: pass, fail, inconclusive, info,
/// expected-fail, excluded.
struct ExperimentReport {
  ordered_json content;
  ordered_json timing;

  std::string json_string(bool include_timing = true) const;
  bool all_passed() const;
  bool any_inconclusive() const;
  /// 0 when every asserted criterion passes, 2 on inconclusive, 1 otherwise.
  int exit_code() const;
};

ExperimentReport make_report(const ExperimentConfig& cfg);
ordered_json config_json(const ExperimentConfig& cfg);

void add_table(ExperimentReport& rep, const std::string& family,
               const std::vector<std::string>& header);
void add_row(ExperimentReport& rep, const std::string& family,
             const ordered_json& row);
void add_criterion(ExperimentReport& rep, const std::string& name,
                   const std::string& status, const std::string& detail);
void finalize_summary(ExperimentReport& rep);

/// %.17g rendering used in every CSV cell holding a number.
std::string format_g17(double v);

/// Writes <dir>/report.json plus one <dir>/<family>.csv per table.
void emit(const ExperimentReport& rep, const std::string& dir);

}  // namespace rmtsym
