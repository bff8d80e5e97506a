#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mirrorvt/transport.hpp"

namespace mirrorvt {

enum class Scenario { TruncatedGaussianBall, DirichletSimplex };

std::string to_string(Scenario scenario);
Scenario parse_scenario(const std::string& name);

struct ExperimentConfig {
  Scenario scenario = Scenario::TruncatedGaussianBall;
  Algorithm algorithm = Algorithm::MirrorVT;
  FunctionalKind functional = FunctionalKind::KL;
  double eta = -1.0;     // negative: 0.1 for mirrorvt/svmd, 0.01 for vt/projvt
  int T = 500;
  int patience = 20;
  int N = 0;             // particles; 0: 100 on the ball, 50 on the simplex
  int targets_per_component = 0;  // 0: 100 on the ball, 50 on the simplex
  VfmConfig vfm;
  int batch_size = 32;
  double js_clamp_eps = 1e-6;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds;  // grid runs: one run per entry
  std::filesystem::path out = "out";
  int snapshot_every = 25;
  // Write measured times into metrics.csv. Off by default so that
  // metrics.csv is a pure function of (config, seed).
  bool wallclock_in_metrics = false;

  /// Fills the scenario/algorithm dependent defaults.
  ExperimentConfig resolved() const;
  void validate() const;
};

/// Applies one key=value setting (keys as the long CLI flags, '-' or '_').
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Reads a flat key=value file; '#' starts a comment.
ExperimentConfig load_config(const std::filesystem::path& file,
                             ExperimentConfig base = ExperimentConfig{});

struct ExperimentResult {
  ExperimentConfig config;  // resolved
  TargetDraw targets;
  ParticleSet initial;
  RunHistory history;
};

/// Seeds, samples targets and initial particles, and runs the transport loop.
ExperimentResult execute(const ExperimentConfig& config);

/// Writes metrics.csv, particles_<iter>.csv, targets.csv and run.json.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

/// execute + write_outputs into config.out; returns the process exit status.
int run_experiment(const ExperimentConfig& config);

/// Runs every *.cfg in `config_dir` (once per listed seed) into
/// out_dir/<stem>_seed<k>/ and writes out_dir/summary.csv.
int run_grid(const std::filesystem::path& config_dir, const std::filesystem::path& out_dir);

/// Writes the 2 scenarios x 3 functionals x 2 algorithms grid of configs.
void write_comparison_grid(const std::filesystem::path& dir, const std::vector<std::uint64_t>& seeds);

}  // namespace mirrorvt
