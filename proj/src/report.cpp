#include "rmtsym/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace rmtsym {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json config_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["experiment"] = experiment_name(cfg.experiment);
  ordered_json classes = ordered_json::array();
  for (SymmetryClass c : cfg.classes) classes.push_back(class_name(c));
  j["classes"] = classes;
  j["sizes"] = cfg.sizes;
  j["replicates"] = cfg.replicates;
  ordered_json probes = ordered_json::array();
  for (const cplx& z : cfg.probes) probes.push_back(format_probe(z));
  j["probes"] = probes;
  j["seed"] = cfg.seed;
  ordered_json th;
  for (const auto& [name, value] : cfg.thresholds) th[name] = value;
  j["thresholds"] = th;
  return j;
}

ExperimentReport make_report(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.content["experiment"] = experiment_name(cfg.experiment);
  rep.content["config"] = config_json(cfg);
  rep.content["rng"] = {{"generator", "splitmix64-counter"},
                        {"master_seed", cfg.seed}};
  rep.content["tables"] = ordered_json::object();
  rep.content["results"] = ordered_json::object();
  rep.content["criteria"] = ordered_json::array();
  return rep;
}

void add_table(ExperimentReport& rep, const std::string& family,
               const std::vector<std::string>& header) {
  ordered_json t;
  t["header"] = header;
  t["rows"] = ordered_json::array();
  rep.content["tables"][family] = t;
}

void add_row(ExperimentReport& rep, const std::string& family,
             const ordered_json& row) {
  rep.content["tables"][family]["rows"].push_back(row);
}

void add_criterion(ExperimentReport& rep, const std::string& name,
                   const std::string& status, const std::string& detail) {
  rep.content["criteria"].push_back(
      {{"name", name}, {"status", status}, {"detail", detail}});
}

void finalize_summary(ExperimentReport& rep) {
  bool fail = false, inconclusive = false;
  for (const auto& c : rep.content["criteria"]) {
    const std::string status = c["status"];
    if (status == "fail") fail = true;
    if (status == "inconclusive") inconclusive = true;
  }
  rep.content["summary"] = {{"pass", !fail && !inconclusive},
                            {"failed", fail},
                            {"inconclusive", inconclusive}};
}

bool ExperimentReport::all_passed() const {
  return content.contains("summary") && content["summary"]["pass"].get<bool>();
}

bool ExperimentReport::any_inconclusive() const {
  return content.contains("summary") &&
         content["summary"]["inconclusive"].get<bool>();
}

int ExperimentReport::exit_code() const {
  if (all_passed()) return 0;
  if (content.contains("summary") && content["summary"]["failed"].get<bool>())
    return 1;
  return any_inconclusive() ? 2 : 1;
}

std::string ExperimentReport::json_string(bool include_timing) const {
  ordered_json whole = content;
  if (include_timing) whole["timing"] = timing;
  return whole.dump(2) + "\n";
}

namespace {

std::string csv_cell(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return format_g17(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

}  // namespace

void emit(const ExperimentReport& rep, const std::string& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir + "/report.json");
    if (!out) throw std::runtime_error("cannot write report to " + dir);
    out << rep.json_string(true);
  }
  for (const auto& [family, table] : rep.content["tables"].items()) {
    std::ofstream out(dir + "/" + family + ".csv");
    if (!out) throw std::runtime_error("cannot write table to " + dir);
    const auto& header = table["header"];
    for (std::size_t i = 0; i < header.size(); ++i)
      out << (i ? "," : "") << header[i].get<std::string>();
    out << "\n";
    for (const auto& row : table["rows"]) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? "," : "") << csv_cell(row[i]);
      out << "\n";
    }
  }
}

}  // namespace rmtsym
