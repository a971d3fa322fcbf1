#include "rmtsym/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rmtsym {

const char* experiment_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Ncm: return "ncm";
    case ExperimentKind::Variance: return "variance";
    case ExperimentKind::Correlator: return "correlator";
    case ExperimentKind::Atom: return "atom";
    case ExperimentKind::Adjudicate3: return "adjudicate3";
    case ExperimentKind::Identities: return "identities";
    case ExperimentKind::Laws: return "laws";
    case ExperimentKind::Bench: return "bench";
  }
  throw std::invalid_argument("experiment_name: unknown kind");
}

ExperimentKind experiment_from_name(const std::string& name) {
  for (ExperimentKind k : kAllExperiments)
    if (name == experiment_name(k)) return k;
  throw std::invalid_argument("unknown experiment: " + name);
}

double ExperimentConfig::threshold(const std::string& name) const {
  const auto it = thresholds.find(name);
  if (it == thresholds.end())
    throw std::out_of_range("threshold not defined: " + name);
  return it->second;
}

std::map<std::string, double> default_thresholds() {
  return {
      {"identity_residual", 1e-10},   // exact trace/symmetry identities
      {"spectra_match", 1e-8},        // structured vs dense eigenvalues
      {"atom_tol", 1e-8},             // zero-eigenvalue detection
      {"ks_max", 0.02},               // pooled KS vs semicircle
      {"law_residual", 1e-12},        // defining-equation residual on the grid
      {"semicircle_mass_tol", 1e-8},
      {"case3_mass_tol", 1e-6},       // continuous mass of the case-3 law
      {"atom_residue_tol", 1e-4},
      {"density_extrapolation_tol", 1e-5},
      {"correlator_rel", 0.15},       // relative error of (2n)^2 F vs theory
      {"ratio_target", 2.0},          // cross-class correlator ratio
      {"ratio_tol", 0.2},
      {"slope_min", -2.3},            // variance log-log slope window
      {"slope_max", -1.7},
      {"stderr_g_max", 0.002},        // adjudication precision budget
      {"adjudicate_margin", 0.01},    // added to 3 stderr for decisiveness
      {"edge_margin", 0.05},          // max|lambda| vs candidate edges
      {"speedup_rowmirror3", 3.0},
      {"speedup_central2", 2.0},
      {"corr3_rel_stderr_max", 0.10},
      {"bound_1p2g", 0.5},
  };
}

ExperimentConfig default_config(ExperimentKind k) {
  ExperimentConfig cfg;
  cfg.experiment = k;
  cfg.thresholds = default_thresholds();
  cfg.classes.assign(std::begin(kAllClasses), std::end(kAllClasses));
  switch (k) {
    case ExperimentKind::Ncm:
      cfg.sizes = {512};
      cfg.replicates = 200;
      break;
    case ExperimentKind::Variance:
      cfg.sizes = {64, 128, 256, 512};
      cfg.replicates = 4000;
      cfg.probes = {cplx(0, 3), cplx(0, 4)};
      break;
    case ExperimentKind::Correlator:
      cfg.sizes = {256};
      cfg.replicates = 20000;
      cfg.probes = {cplx(0, 2), cplx(0, 3)};
      break;
    case ExperimentKind::Atom:
      cfg.classes = {SymmetryClass::RowMirror3};
      cfg.sizes = {512};
      cfg.replicates = 50;
      break;
    case ExperimentKind::Adjudicate3:
      cfg.classes = {SymmetryClass::RowMirror3};
      cfg.sizes = {512};
      cfg.replicates = 2000;
      cfg.probes = {cplx(0, 1)};
      break;
    case ExperimentKind::Identities:
      cfg.sizes = {32};
      cfg.replicates = 50;
      cfg.probes = {cplx(1, 2), cplx(0, 2), cplx(-1, 3)};
      break;
    case ExperimentKind::Laws:
      cfg.classes.clear();
      cfg.sizes.clear();
      break;
    case ExperimentKind::Bench:
      cfg.classes = {SymmetryClass::Central2, SymmetryClass::RowMirror3};
      cfg.sizes = {1024};
      cfg.replicates = 5;
      break;
  }
  return cfg;
}

cplx parse_probe(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty probe");

  // pure real: no trailing i
  if (s.back() != 'i') {
    std::size_t used = 0;
    const double re = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad probe: " + text);
    return cplx(re, 0.0);
  }

  s.pop_back();  // drop the i
  // split at the last +/- that is not an exponent sign and not leading
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto parse_num = [&text](const std::string& part, double fallback) {
    if (part.empty() || part == "+") return fallback;
    if (part == "-") return -fallback;
    std::size_t used = 0;
    const double v = std::stod(part, &used);
    if (used != part.size()) throw std::invalid_argument("bad probe: " + text);
    return v;
  };
  if (split == std::string::npos) return cplx(0.0, parse_num(s, 1.0));
  return cplx(parse_num(s.substr(0, split), 0.0),
              parse_num(s.substr(split), 1.0));
}

std::string format_probe(cplx z) {
  char buf[80];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
    return buf;
  }
  if (z.real() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17gi", z.imag());
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "experiment") {
    const ExperimentKind k = experiment_from_name(value);
    // switching experiments pulls in that experiment's defaults first
    ExperimentConfig fresh = default_config(k);
    fresh.seed = cfg.seed;
    fresh.output_dir = cfg.output_dir;
    cfg = fresh;
  } else if (key == "classes") {
    cfg.classes.clear();
    for (const std::string& name : split_list(value))
      cfg.classes.push_back(class_from_name(name));
  } else if (key == "sizes") {
    cfg.sizes.clear();
    for (const std::string& item : split_list(value))
      cfg.sizes.push_back(std::stoi(item));
  } else if (key == "replicates") {
    cfg.replicates = std::stoi(value);
  } else if (key == "probes") {
    cfg.probes.clear();
    for (const std::string& item : split_list(value))
      cfg.probes.push_back(parse_probe(item));
  } else if (key == "seed") {
    cfg.seed = std::stoull(value);
  } else if (key == "out") {
    cfg.output_dir = value;
  } else if (key.rfind("threshold.", 0) == 0) {
    const std::string name = key.substr(10);
    if (cfg.thresholds.find(name) == cfg.thresholds.end())
      throw std::invalid_argument("unknown threshold: " + name);
    cfg.thresholds[name] = std::stod(value);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      bool blank = true;
      for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
      if (blank) continue;
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    }
    auto trim = [](std::string s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
      return s;
    };
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void validate_config(const ExperimentConfig& cfg) {
  for (int size : cfg.sizes) {
    if (size < 2 || size % 2 != 0)
      throw std::invalid_argument("sizes must be even and >= 2, got " +
                                  std::to_string(size));
  }
  if (cfg.replicates < 1)
    throw std::invalid_argument("replicates must be >= 1");
  for (const cplx& z : cfg.probes)
    if (z.imag() == 0.0)
      throw std::invalid_argument("probe on the real axis: " + format_probe(z));
}

}  // namespace rmtsym
