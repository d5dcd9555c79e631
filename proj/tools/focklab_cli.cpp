// Command line front end: run verification suites, evaluate kernels and
// Berezin transforms on grids, and print the measured normalization
// constants. Reports are JSON, grids are CSV; identical configurations
// produce byte-identical output.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "focklab/report.hpp"
#include "focklab/version.hpp"

namespace {

using focklab::RunConfig;

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  nlohmann::json j;
  in >> j;
  cfg.suite = j.value("suite", cfg.suite);
  cfg.beta1 = j.value("beta1", cfg.beta1);
  cfg.beta2 = j.value("beta2", cfg.beta2);
  cfg.kappa = j.value("kappa", cfg.kappa);
  cfg.l_re = j.value("l_re", cfg.l_re);
  cfg.l_im = j.value("l_im", cfg.l_im);
  cfg.tau = j.value("tau", cfg.tau);
  cfg.trunc_N = j.value("trunc_n", cfg.trunc_N);
  cfg.quad_m = j.value("quad_m", cfg.quad_m);
  cfg.samples = j.value("samples", cfg.samples);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.quantity = j.value("quantity", cfg.quantity);
  cfg.out = j.value("out", cfg.out);
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    cfg.grid.re0 = g.value("re0", cfg.grid.re0);
    cfg.grid.im0 = g.value("im0", cfg.grid.im0);
    cfg.grid.re1 = g.value("re1", cfg.grid.re1);
    cfg.grid.im1 = g.value("im1", cfg.grid.im1);
    cfg.grid.nx = g.value("nx", cfg.grid.nx);
    cfg.grid.ny = g.value("ny", cfg.grid.ny);
  }
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file; flags override");
  cmd->add_option("--beta1", cfg.beta1, "first diagonal weight parameter");
  cmd->add_option("--beta2", cfg.beta2, "second diagonal weight parameter");
  cmd->add_option("--kappa", cfg.kappa, "off-diagonal / radial weight parameter");
  cmd->add_option("--l-re", cfg.l_re, "Re of the quadratic twist l");
  cmd->add_option("--l-im", cfg.l_im, "Im of the quadratic twist l");
  cmd->add_option("--tau", cfg.tau, "scale of the tau-family weight");
  cmd->add_option("--trunc-N", cfg.trunc_N, "truncation box size");
  cmd->add_option("--quad-m", cfg.quad_m, "quadrature points per axis");
  cmd->add_option("--samples", cfg.samples, "random vectors per identity check");
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--out", cfg.out, "output path (stdout when omitted)");
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.out.empty()) {
    std::cout << content;
  } else {
    focklab::write_file_atomic(cfg.out, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted Fock space verification toolkit"};
  app.set_version_flag("--version", focklab::kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", cfg.suite,
                     "operators | bargmann | berezin | szego | all");
  add_common_flags(verify, cfg, config_path);

  auto* grid = app.add_subcommand("grid", "evaluate a quantity on a grid (CSV)");
  grid->add_option("--quantity", cfg.quantity,
                   "berezin-{a,a-star,ab,ba} | berezin-kl-{a,a-star} | szego");
  grid->add_option("--re0", cfg.grid.re0, "grid corner, real part");
  grid->add_option("--im0", cfg.grid.im0, "grid corner, imaginary part");
  grid->add_option("--re1", cfg.grid.re1, "opposite corner, real part");
  grid->add_option("--im1", cfg.grid.im1, "opposite corner, imaginary part");
  grid->add_option("--nx", cfg.grid.nx, "steps along the real axis");
  grid->add_option("--ny", cfg.grid.ny, "steps along the imaginary axis");
  add_common_flags(grid, cfg, config_path);

  auto* constants =
      app.add_subcommand("constants", "print the measured normalization constants");
  add_common_flags(constants, cfg, config_path);

  // parse twice so the config file loads first and explicit flags override it
  try {
    app.parse(argc, argv);
    if (!config_path.empty()) {
      load_config_file(config_path, cfg);
      app.clear();
      app.parse(argc, argv);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*verify) {
      const focklab::Report rep = focklab::run_suite(cfg);
      emit(cfg, focklab::report_to_json(rep));
      return rep.all_pass() ? 0 : 1;
    }
    if (*grid) {
      std::ostringstream os;
      focklab::eval_grid(cfg, os);
      emit(cfg, os.str());
      return 0;
    }
    if (*constants) {
      const focklab::Constants k = focklab::measured_constants(cfg);
      nlohmann::ordered_json j;
      j["gram_diagonal_hkappal"] = k.gram_diagonal_hkappal;
      j["bargmann_unitarity"] = k.bargmann_unitarity;
      j["szego_prefactor_ratio"] = k.szego_prefactor_ratio;
      emit(cfg, j.dump(2) + "\n");
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
