// Command line front end: single experiments, config grids, and the comparison grid.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "mirrorvt/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Particle transport on constrained domains (mirrorVT, projVT, VT, SVMD)"};
  app.require_subcommand(0, 1);

  std::optional<std::string> config_file;
  app.add_option("--config", config_file, "key = value config file; flags override it");

  // Long flag name -> value, applied in order after the config file.
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"scenario", "truncated-gaussian-ball | dirichlet-simplex"},
      {"algorithm", "vt | projvt | mirrorvt | svmd"},
      {"functional", "kl | js | w1"},
      {"eta", "step size (default 0.1 mirrorvt/svmd, 0.01 vt/projvt)"},
      {"T", "maximum number of particle updates"},
      {"patience", "early stop after this many updates without MMD improvement"},
      {"N", "number of particles"},
      {"nw", "network width"},
      {"rf", "weight-ball radius"},
      {"init-scale", "std of the Gaussian weight init"},
      {"batch", "target minibatch size for the conjugate gradient"},
      {"targets-per-component", "target draws per mixture component"},
      {"js-clamp-eps", "floor of the JS conjugate log argument"},
      {"bias", "constant input feature in the network (true/false)"},
      {"warm-start", "reuse the previous network as the next start (true/false)"},
      {"seed", "random seed"},
      {"out", "output directory"},
      {"snapshot-every", "iterations between particle snapshots"},
      {"wallclock-in-metrics", "write measured times into metrics.csv (true/false)"},
  };
  std::vector<std::optional<std::string>> values(flags.size());
  for (std::size_t i = 0; i < flags.size(); ++i) {
    app.add_option("--" + flags[i].first, values[i], flags[i].second);
  }

  auto* grid = app.add_subcommand("grid", "run every *.cfg in a directory and write summary.csv");
  std::string grid_dir;
  std::string grid_out = "grid_out";
  grid->add_option("config_dir", grid_dir, "directory of *.cfg files")->required();
  grid->add_option("-o,--out", grid_out, "output directory");

  auto* init_grid = app.add_subcommand("init-grid", "write the 12-config comparison grid");
  std::string init_dir;
  std::vector<std::uint64_t> init_seeds = {1, 2, 3};
  init_grid->add_option("dir", init_dir, "directory to write configs into")->required();
  init_grid->add_option("--seeds", init_seeds, "seeds listed in every config")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (grid->parsed()) return mirrorvt::run_grid(grid_dir, grid_out);
    if (init_grid->parsed()) {
      mirrorvt::write_comparison_grid(init_dir, init_seeds);
      return 0;
    }
    mirrorvt::ExperimentConfig config;
    if (config_file) config = mirrorvt::load_config(*config_file);
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (values[i]) mirrorvt::apply_setting(config, flags[i].first, *values[i]);
    }
    return mirrorvt::run_experiment(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
