#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rmtsym/core.hpp"

namespace rmtsym {

enum class ExperimentKind {
  Ncm,
  Variance,
  Correlator,
  Atom,
  Adjudicate3,
  Identities,
  Laws,
  Bench
};

constexpr ExperimentKind kAllExperiments[] = {
    ExperimentKind::Ncm,        ExperimentKind::Variance,
    ExperimentKind::Correlator, ExperimentKind::Atom,
    ExperimentKind::Adjudicate3, ExperimentKind::Identities,
    ExperimentKind::Laws,       ExperimentKind::Bench};

const char* experiment_name(ExperimentKind k);
ExperimentKind experiment_from_name(const std::string& name);

/// One experiment run: which classes and sizes (given as 2n), how many
/// replicates, which probe points, and the named tolerances. Worker count is
/// a runtime setting, not config: reports must not depend on it.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Identities;
  std::vector<SymmetryClass> classes;
  std::vector<int> sizes;
  int replicates = 1;
  std::vector<cplx> probes;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  std::map<std::string, double> thresholds;

  double threshold(const std::string& name) const;
};

/// Per-experiment defaults; every tolerance used by any experiment lives in
/// the thresholds table (see default_thresholds) and may be overridden.
ExperimentConfig default_config(ExperimentKind k);
std::map<std::string, double> default_thresholds();

/// Accepts "2i", "-1+3i", "1.5-0.5i", "3", "i", "-i".
cplx parse_probe(const std::string& text);
std::string format_probe(cplx z);

/// Flat key=value file, '#' comments. Keys: experiment, classes, sizes,
/// replicates, probes, seed, out, threshold.<name>.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);
void validate_config(const ExperimentConfig& cfg);

}  // namespace rmtsym
