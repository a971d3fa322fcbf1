#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rmtsym/eig.hpp"
#include "rmtsym/experiments.hpp"
#include "rmtsym/laws.hpp"
#include "rmtsym/sampler.hpp"

using namespace rmtsym;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string out = "out";
  int threads = 0;
  std::string config_path;
};

ExperimentConfig build_config(ExperimentKind kind, const GlobalOpts& g,
                              const std::vector<std::string>& overrides) {
  ExperimentConfig cfg = default_config(kind);
  cfg.seed = g.seed;
  cfg.output_dir = g.out;
  if (!g.config_path.empty()) apply_config_file(cfg, g.config_path);
  if (cfg.experiment != kind)
    throw std::invalid_argument("config file selects a different experiment");
  for (const std::string& item : overrides) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("override must be key=value: " + item);
    apply_override(cfg, item.substr(0, eq), item.substr(eq + 1));
  }
  validate_config(cfg);
  return cfg;
}

int run_and_emit(const ExperimentConfig& cfg) {
  const ExperimentReport rep = run_experiment(cfg);
  emit(rep, cfg.output_dir);
  for (const auto& c : rep.content["criteria"]) {
    std::printf("%-12s %s: %s\n", c["status"].get<std::string>().c_str(),
                c["name"].get<std::string>().c_str(),
                c["detail"].get<std::string>().c_str());
  }
  std::printf("report written to %s/report.json (exit %d)\n",
              cfg.output_dir.c_str(), rep.exit_code());
  return rep.exit_code();
}

void dump_matrix(const HermitianMatrix& w, const EnsembleSpec& spec,
                 std::uint64_t replicate, const std::string& dir) {
  std::filesystem::create_directories(dir);
  ordered_json j;
  j["class"] = class_name(spec.cls);
  j["size_2n"] = spec.side();
  j["seed"] = spec.master_seed;
  j["replicate"] = replicate;
  ordered_json rows = ordered_json::array();
  for (int p = 0; p < spec.side(); ++p) {
    ordered_json row = ordered_json::array();
    for (int q = 0; q < spec.side(); ++q) {
      const cplx v = w.raw(p, q);
      row.push_back({v.real(), v.imag()});
    }
    rows.push_back(row);
  }
  j["entries"] = rows;
  const std::string path = dir + "/matrix_" + class_name(spec.cls) + "_" +
                           std::to_string(spec.side()) + "_" +
                           std::to_string(replicate) + ".json";
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  std::printf("wrote %s\n", path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling, spectra and limit-law experiments for Hermitian "
               "ensembles with index symmetries"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--threads", g.threads, "worker threads (default: hardware)");
  app.add_option("--config", g.config_path, "key=value config file");

  std::string cls_name = "plain";
  int size = 64;
  std::uint64_t replicate = 0;
  bool structured = false;

  auto* sample = app.add_subcommand("sample", "draw one matrix and dump it");
  sample->fallthrough();
  sample->add_option("--class", cls_name, "symmetry class");
  sample->add_option("--size", size, "matrix side 2n (even)");
  sample->add_option("--replicate", replicate, "replicate index");

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of one draw");
  spectrum->fallthrough();
  spectrum->add_option("--class", cls_name, "symmetry class");
  spectrum->add_option("--size", size, "matrix side 2n (even)");
  spectrum->add_option("--replicate", replicate, "replicate index");
  spectrum->add_flag("--structured", structured, "use the symmetry-reduced path");

  std::string law_name = "semicircle";
  double grid_lo = -4.0, grid_hi = 4.0;
  int grid_count = 801;
  double im_offset = 1e-3;
  auto* law_cmd = app.add_subcommand("law", "tabulate a limiting law");
  law_cmd->fallthrough();
  law_cmd->add_option("--name", law_name, "semicircle | case3 | case3-block");
  law_cmd->add_option("--lo", grid_lo, "grid start");
  law_cmd->add_option("--hi", grid_hi, "grid end");
  law_cmd->add_option("--count", grid_count, "grid points");
  law_cmd->add_option("--im", im_offset,
                      "imaginary offset for the transform column");

  std::string experiment_arg;
  std::vector<std::string> overrides;
  auto* exp_cmd = app.add_subcommand("experiment", "run a named experiment");
  exp_cmd->fallthrough();
  exp_cmd->add_option("name", experiment_arg, "experiment name")->required();
  exp_cmd->add_option("--set", overrides, "config override key=value");

  std::vector<std::string> verify_overrides;
  auto* verify_cmd =
      app.add_subcommand("verify", "exact-identity suite (alias)");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--set", verify_overrides, "config override key=value");

  std::vector<std::string> bench_overrides;
  auto* bench_cmd = app.add_subcommand("bench", "eigensolver benchmark (alias)");
  bench_cmd->fallthrough();
  bench_cmd->add_option("--set", bench_overrides, "config override key=value");

  CLI11_PARSE(app, argc, argv);

  if (g.threads > 0) omp_set_num_threads(g.threads);

  try {
    if (sample->parsed() || spectrum->parsed()) {
      if (size < 2 || size % 2 != 0)
        throw std::invalid_argument("--size must be even and >= 2");
      const EnsembleSpec spec{class_from_name(cls_name), size / 2, g.seed};
      const HermitianMatrix w = Ensemble(spec).sample(replicate);
      if (sample->parsed()) {
        dump_matrix(w, spec, replicate, g.out);
        return 0;
      }
      const Spectrum s =
          structured ? eigh_structured(w, spec.cls) : eigh(w, false);
      std::filesystem::create_directories(g.out);
      const std::string path = g.out + "/spectrum_" + cls_name + "_" +
                               std::to_string(size) + "_" +
                               std::to_string(replicate) + ".csv";
      std::ofstream out(path);
      out << "index,lambda\n";
      for (int i = 0; i < s.side(); ++i)
        out << i << "," << format_g17(s.eigenvalues[i]) << "\n";
      std::printf("wrote %s\n", path.c_str());
      return 0;
    }

    if (law_cmd->parsed()) {
      SpectralLaw law;
      if (law_name == "semicircle") law = semicircle_law();
      else if (law_name == "case3") law = case3_law();
      else if (law_name == "case3-block") law = case3_block_law();
      else throw std::invalid_argument("unknown law: " + law_name);
      if (grid_count < 2) throw std::invalid_argument("--count must be >= 2");
      std::filesystem::create_directories(g.out);
      const std::string path = g.out + "/law_" + law_name + ".csv";
      std::ofstream out(path);
      out << "lambda,density,cdf,re_stieltjes,im_stieltjes\n";
      for (int i = 0; i < grid_count; ++i) {
        const double lam =
            grid_lo + (grid_hi - grid_lo) * i / (grid_count - 1);
        const cplx f = law.stieltjes(cplx(lam, im_offset));
        out << format_g17(lam) << "," << format_g17(law.density(lam)) << ","
            << format_g17(law.cdf(lam)) << "," << format_g17(f.real()) << ","
            << format_g17(f.imag()) << "\n";
      }
      std::printf("wrote %s\n", path.c_str());
      return 0;
    }

    if (exp_cmd->parsed())
      return run_and_emit(
          build_config(experiment_from_name(experiment_arg), g, overrides));
    if (verify_cmd->parsed())
      return run_and_emit(
          build_config(ExperimentKind::Identities, g, verify_overrides));
    if (bench_cmd->parsed())
      return run_and_emit(build_config(ExperimentKind::Bench, g, bench_overrides));
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
  return 1;
}
