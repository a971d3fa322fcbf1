// Acceptance suite: one entry per criterion, each printing a single
// PASS/FAIL line. Run all with no arguments or select one: acceptance 5
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "rmtsym/experiments.hpp"

using namespace rmtsym;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double wall_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string failed_criteria(const ExperimentReport& rep) {
  std::string out;
  for (const auto& c : rep.content["criteria"]) {
    const std::string status = c["status"];
    if (status == "fail" || status == "inconclusive")
      out += " [" + c["name"].get<std::string>() + ": " + status + "]";
  }
  return out.empty() ? " all criteria passed" : out;
}

ExperimentReport run_to(const ExperimentConfig& base, const std::string& dir) {
  ExperimentConfig cfg = base;
  cfg.output_dir = "acceptance_out/" + dir;
  const ExperimentReport rep = run_experiment(cfg);
  emit(rep, cfg.output_dir);
  return rep;
}

// 1. exact identities for every class at 2n=32
Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentReport rep =
      run_to(default_config(ExperimentKind::Identities), "criterion_1");
  const double wall = wall_since(t0);
  Outcome out;
  out.pass = rep.all_passed() && wall < 10.0;
  out.detail = failed_criteria(rep) + "; wall " + format_g17(wall) + " s (< 10 s)";
  return out;
}

// 2. law-solver suite
Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentReport rep =
      run_to(default_config(ExperimentKind::Laws), "criterion_2");
  const double wall = wall_since(t0);
  Outcome out;
  out.pass = rep.all_passed() && wall < 5.0;
  out.detail = failed_criteria(rep) + "; wall " + format_g17(wall) + " s (< 5 s)";
  return out;
}

// 3. semicircle NCM for the four semicircle classes at 2n=512
Outcome criterion3() {
  ExperimentConfig cfg = default_config(ExperimentKind::Ncm);
  apply_override(cfg, "classes", "plain,flip1,central2,quarter4");
  const ExperimentReport rep = run_to(cfg, "criterion_3");
  Outcome out;
  out.pass = rep.all_passed();
  out.detail = failed_criteria(rep);
  return out;
}

// 4. atom fraction and exact block reduction at 2n=512
Outcome criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentReport rep =
      run_to(default_config(ExperimentKind::Atom), "criterion_4");
  const double wall = wall_since(t0);
  Outcome out;
  out.pass = rep.all_passed() && wall < 60.0;
  out.detail = failed_criteria(rep) + "; wall " + format_g17(wall) + " s (< 60 s)";
  return out;
}

// 5. case-3 adjudication must be decisive either way
Outcome criterion5() {
  const ExperimentReport rep =
      run_to(default_config(ExperimentKind::Adjudicate3), "criterion_5");
  Outcome out;
  out.pass = rep.all_passed();
  std::string winners;
  for (const auto& [item, r] : rep.content["results"]["adjudicate"].items())
    winners += " " + item + "->" + r["winner"].get<std::string>();
  out.detail = failed_criteria(rep) + "; winners:" + winners;
  return out;
}

// 6. variance scaling and the 1p2g bound
Outcome criterion6() {
  const ExperimentReport rep =
      run_to(default_config(ExperimentKind::Variance), "criterion_6");
  Outcome out;
  out.pass = rep.all_passed();
  std::string slopes;
  for (const auto& [key, v] : rep.content["results"]["slopes"].items())
    if (key.find("3i") != std::string::npos)
      slopes += " " + key + "=" + format_g17(v.get<double>());
  out.detail = failed_criteria(rep) + ";" + slopes;
  return out;
}

// 7. correlator asymptotics at (2i, 3i), 2n=256
Outcome criterion7() {
  const ExperimentReport rep =
      run_to(default_config(ExperimentKind::Correlator), "criterion_7");
  Outcome out;
  out.pass = rep.all_passed();
  out.detail = failed_criteria(rep);
  return out;
}

// 8. structured-solver speedups at 2n=1024 with equal spectra
Outcome criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentReport rep =
      run_to(default_config(ExperimentKind::Bench), "criterion_8");
  const double wall = wall_since(t0);
  Outcome out;
  out.pass = rep.all_passed() && wall < 60.0;
  std::string speeds;
  for (const auto& row : rep.timing["bench"])
    speeds += " " + row["class"].get<std::string>() + "=" +
              format_g17(row["speedup"].get<double>()) + "x";
  out.detail = failed_criteria(rep) + ";" + speeds + "; wall " +
               format_g17(wall) + " s (< 60 s)";
  return out;
}

// 9. byte-identical non-timing reports under 1, 2 and 8 workers
Outcome criterion9() {
  ExperimentConfig ncm = default_config(ExperimentKind::Ncm);
  apply_override(ncm, "sizes", "64");
  apply_override(ncm, "replicates", "50");
  ExperimentConfig ids = default_config(ExperimentKind::Identities);
  apply_override(ids, "sizes", "16");
  apply_override(ids, "replicates", "20");

  const int saved = omp_get_max_threads();
  bool ok = true;
  std::string detail;
  for (const ExperimentConfig& cfg : {ncm, ids}) {
    std::vector<std::string> outputs;
    for (int threads : {1, 2, 8}) {
      omp_set_num_threads(threads);
      outputs.push_back(run_experiment(cfg).json_string(false));
    }
    const bool same = outputs[0] == outputs[1] && outputs[0] == outputs[2];
    ok = ok && same;
    detail += std::string(" ") + experiment_name(cfg.experiment) +
              (same ? ": identical under 1/2/8 workers" : ": MISMATCH");
  }
  omp_set_num_threads(saved);
  return {ok, detail};
}

using Criterion = Outcome (*)();
constexpr Criterion kCriteria[] = {criterion1, criterion2, criterion3,
                                   criterion4, criterion5, criterion6,
                                   criterion7, criterion8, criterion9};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  if (argc <= 1) {
    for (int i = 1; i <= 9; ++i) selected.push_back(i);
  } else {
    for (int a = 1; a < argc; ++a) selected.push_back(std::atoi(argv[a]));
  }

  bool all_pass = true;
  for (int i : selected) {
    if (i < 1 || i > 9) {
      std::fprintf(stderr, "unknown criterion %d\n", i);
      return 1;
    }
    Outcome out;
    try {
      out = kCriteria[i - 1]();
    } catch (const std::exception& ex) {
      out = {false, std::string(" exception: ") + ex.what()};
    }
    std::printf("%s criterion %d:%s\n", out.pass ? "PASS" : "FAIL", i,
                out.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && out.pass;
  }
  return all_pass ? 0 : 1;
}
