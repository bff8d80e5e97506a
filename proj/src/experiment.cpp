#include "mirrorvt/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace mirrorvt {
namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string normalise_key(std::string key) {
  while (!key.empty() && key.front() == '-') key.erase(key.begin());
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("setting '" + key + "': not a number: " + v);
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("setting '" + key + "': not an integer: " + v);
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("setting '" + key + "': not a boolean: " + v);
}

// Shortest text that reads back to the same double.
std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

void write_points(const fs::path& file, const Matrix& points) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "particle_id";
  for (Eigen::Index k = 0; k < points.cols(); ++k) out << ",x" << (k + 1);
  out << '\n';
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    out << i;
    for (Eigen::Index k = 0; k < points.cols(); ++k) out << ',' << fmt(points(i, k));
    out << '\n';
  }
}

Domain scenario_domain(Scenario s) {
  return s == Scenario::TruncatedGaussianBall ? Domain::unit_ball(2) : Domain::simplex(5);
}

}  // namespace

std::string to_string(Scenario scenario) {
  return scenario == Scenario::TruncatedGaussianBall ? "truncated-gaussian-ball"
                                                     : "dirichlet-simplex";
}

Scenario parse_scenario(const std::string& name) {
  if (name == "truncated-gaussian-ball" || name == "ball") return Scenario::TruncatedGaussianBall;
  if (name == "dirichlet-simplex" || name == "simplex") return Scenario::DirichletSimplex;
  throw ConfigError("unknown scenario '" + name +
                    "' (expected truncated-gaussian-ball or dirichlet-simplex)");
}

ExperimentConfig ExperimentConfig::resolved() const {
  ExperimentConfig c = *this;
  const bool ball = scenario == Scenario::TruncatedGaussianBall;
  if (c.eta < 0.0) {
    c.eta = (algorithm == Algorithm::MirrorVT || algorithm == Algorithm::SVMDKernel) ? 0.1 : 0.01;
  }
  if (c.N <= 0) c.N = ball ? 100 : 50;
  if (c.targets_per_component <= 0) c.targets_per_component = ball ? 100 : 50;
  if (c.vfm.init_scale < 0.0) c.vfm.init_scale = 1.0 / std::sqrt(ball ? 2.0 : 5.0);
  return c;
}

void ExperimentConfig::validate() const {
  if (N < 1) throw ConfigError("N must be positive");
  if (targets_per_component < 1) throw ConfigError("targets-per-component must be positive");
  if (batch_size < 1) throw ConfigError("batch must be positive");
  if (algorithm == Algorithm::SVMDKernel && scenario != Scenario::DirichletSimplex) {
    throw ConfigError("svmd needs an analytic target score; only dirichlet-simplex provides one");
  }
  if (algorithm == Algorithm::SVMDKernel && functional != FunctionalKind::KL) {
    throw ConfigError("svmd supports the kl functional only");
  }
  TransportConfig t;
  t.eta = eta;
  t.T = T;
  t.patience = patience;
  t.vfm = vfm;
  t.snapshot_every = snapshot_every;
  t.validate();
}

void apply_setting(ExperimentConfig& c, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = normalise_key(trim(raw_key));
  const std::string v = trim(raw_value);
  if (key == "scenario") c.scenario = parse_scenario(v);
  else if (key == "algorithm") c.algorithm = parse_algorithm(v);
  else if (key == "functional") c.functional = parse_functional(v);
  else if (key == "eta") c.eta = to_double(key, v);
  else if (key == "T" || key == "t") c.T = static_cast<int>(to_int(key, v));
  else if (key == "patience") c.patience = static_cast<int>(to_int(key, v));
  else if (key == "N" || key == "n") c.N = static_cast<int>(to_int(key, v));
  else if (key == "targets-per-component") c.targets_per_component = static_cast<int>(to_int(key, v));
  else if (key == "nw") c.vfm.width = static_cast<int>(to_int(key, v));
  else if (key == "rf") c.vfm.radius = to_double(key, v);
  else if (key == "init-scale") c.vfm.init_scale = to_double(key, v);
  else if (key == "warm-start") c.vfm.warm_start = to_bool(key, v);
  else if (key == "bias") c.vfm.bias = to_bool(key, v);
  else if (key == "batch") c.batch_size = static_cast<int>(to_int(key, v));
  else if (key == "js-clamp-eps") c.js_clamp_eps = to_double(key, v);
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_int(key, v));
  else if (key == "seeds") {
    c.seeds.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!trim(item).empty()) c.seeds.push_back(static_cast<std::uint64_t>(to_int(key, trim(item))));
    }
  } else if (key == "out") c.out = v;
  else if (key == "snapshot-every") c.snapshot_every = static_cast<int>(to_int(key, v));
  else if (key == "wallclock-in-metrics") c.wallclock_in_metrics = to_bool(key, v);
  else throw ConfigError("unknown setting '" + key + "'");
}

ExperimentConfig load_config(const fs::path& file, ExperimentConfig base) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config " + file.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(file.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

ExperimentResult execute(const ExperimentConfig& raw) {
  ExperimentResult result;
  result.config = raw.resolved();
  const ExperimentConfig& c = result.config;
  c.validate();

  // Independent streams per stage, so targets and initial particles depend
  // only on the seed and not on the algorithm.
  Rng master(c.seed);
  Rng target_rng = master.split();
  Rng init_rng = master.split();
  Rng run_rng = master.split();

  const Domain domain = scenario_domain(c.scenario);
  DirichletMixtureSpec dirichlet = DirichletMixtureSpec::three_corner_simplex();
  if (c.scenario == Scenario::TruncatedGaussianBall) {
    result.targets = sample_truncated_gaussian_mixture(GaussianMixtureSpec::two_component_ball(),
                                                       c.targets_per_component, target_rng);
  } else {
    result.targets = sample_dirichlet_mixture(dirichlet, c.targets_per_component, target_rng);
  }
  result.initial = ParticleSet{init_particles(domain, c.N, init_rng), domain, 0};

  VariationalFunctional fun;
  fun.kind = c.functional;
  fun.target = std::make_shared<const TargetSampleSet>(result.targets.targets);
  fun.batch_size = std::min<int>(c.batch_size, static_cast<int>(result.targets.targets.size()));
  fun.js_clamp_eps = c.js_clamp_eps;

  TransportConfig t;
  t.algorithm = c.algorithm;
  t.eta = c.eta;
  t.T = c.T;
  t.patience = c.patience;
  t.vfm = c.vfm;
  t.map = default_mirror_map(domain);
  t.snapshot_every = c.snapshot_every;

  if (c.algorithm == Algorithm::SVMDKernel) {
    const DualScore score = dirichlet_mixture_dual_score(dirichlet, t.map);
    result.history = run(t, result.initial, fun, run_rng, &score);
  } else {
    result.history = run(t, result.initial, fun, run_rng);
  }
  return result;
}

void write_outputs(const ExperimentResult& r, const fs::path& dir) {
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "metrics.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / "metrics.csv").string());
    out << "iter,mmd,objective,clamps,wallclock_ms\n";
    for (const HistoryRow& row : r.history.rows) {
      out << row.iteration << ',' << fmt(row.mmd) << ',' << fmt(row.objective) << ','
          << row.clamps << ',' << fmt(r.config.wallclock_in_metrics ? row.wallclock_ms : 0.0)
          << '\n';
    }
  }
  {
    std::ofstream out(dir / "timing.csv", std::ios::binary);
    out << "iter,wallclock_ms\n";
    for (const HistoryRow& row : r.history.rows) {
      out << row.iteration << ',' << fmt(row.wallclock_ms) << '\n';
    }
  }
  for (const Snapshot& s : r.history.snapshots) {
    write_points(dir / ("particles_" + std::to_string(s.iteration) + ".csv"), s.points);
  }
  write_points(dir / "targets.csv", r.targets.targets.samples);

  const ExperimentConfig& c = r.config;
  nlohmann::ordered_json j;
  j["scenario"] = to_string(c.scenario);
  j["algorithm"] = to_string(c.algorithm);
  j["functional"] = to_string(c.functional);
  j["eta"] = c.eta;
  j["T"] = c.T;
  j["patience"] = c.patience;
  j["N"] = c.N;
  j["targets_per_component"] = c.targets_per_component;
  j["nw"] = c.vfm.width;
  j["rf"] = c.vfm.radius;
  j["init_scale"] = c.vfm.init_scale;
  j["warm_start"] = c.vfm.warm_start;
  j["bias"] = c.vfm.bias;
  j["batch"] = c.batch_size;
  j["js_clamp_eps"] = c.js_clamp_eps;
  j["seed"] = c.seed;
  j["snapshot_every"] = c.snapshot_every;
  j["rng"] = "mt19937_64";
  j["mmd_bandwidth"] = r.history.bandwidth;
  j["status"] = to_string(r.history.status);
  j["stop_iteration"] = r.history.stop_iteration;
  if (!r.history.abort_reason.empty()) j["abort_reason"] = r.history.abort_reason;
  j["survivors"] = r.targets.survivors;
  j["n_targets"] = r.targets.targets.size();
  j["warnings"] = r.history.warnings;
  std::ofstream out(dir / "run.json", std::ios::binary);
  out << j.dump(2) << '\n';
}

int run_experiment(const ExperimentConfig& config) {
  try {
    const ExperimentResult r = execute(config);
    write_outputs(r, r.config.out);
    for (const auto& w : r.history.warnings) std::cerr << "warning: " << w << '\n';
    if (r.history.status == RunStatus::Aborted) {
      std::cerr << "error: run aborted: " << r.history.abort_reason << '\n';
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

int run_grid(const fs::path& config_dir, const fs::path& out_dir) {
  std::vector<fs::path> configs;
  if (fs::is_directory(config_dir)) {
    for (const auto& entry : fs::directory_iterator(config_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".cfg") {
        configs.push_back(entry.path());
      }
    }
  }
  if (configs.empty()) {
    std::cerr << "error: no configs found in " << config_dir.string() << '\n';
    return 2;
  }
  std::sort(configs.begin(), configs.end());
  fs::create_directories(out_dir);
  std::ofstream summary(out_dir / "summary.csv", std::ios::binary);
  summary << "scenario,algorithm,functional,seed,final_mmd,stop_iter\n";
  int failures = 0;
  for (const fs::path& file : configs) {
    ExperimentConfig base;
    try {
      base = load_config(file);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      summary << "unknown,unknown,unknown," << base.seed << ",nan,-1\n";
      ++failures;
      continue;
    }
    const std::vector<std::uint64_t> seeds = base.seeds.empty()
                                                 ? std::vector<std::uint64_t>{base.seed}
                                                 : base.seeds;
    for (const std::uint64_t seed : seeds) {
      ExperimentConfig c = base;
      c.seed = seed;
      c.out = out_dir / (file.stem().string() + "_seed" + std::to_string(seed));
      std::string final_mmd = "nan";
      int stop_iter = -1;
      try {
        const ExperimentResult r = execute(c);
        write_outputs(r, c.out);
        if (r.history.status == RunStatus::Aborted) {
          std::cerr << "error: " << file.filename().string() << " seed " << seed << ": "
                    << r.history.abort_reason << '\n';
          ++failures;
        } else {
          final_mmd = fmt(r.history.rows.back().mmd);
          stop_iter = r.history.stop_iteration;
        }
      } catch (const std::exception& e) {
        std::cerr << "error: " << file.filename().string() << " seed " << seed << ": " << e.what()
                  << '\n';
        ++failures;
      }
      summary << to_string(c.scenario) << ',' << to_string(c.algorithm) << ','
              << to_string(c.functional) << ',' << seed << ',' << final_mmd << ',' << stop_iter
              << '\n';
      summary.flush();
    }
  }
  return failures == 0 ? 0 : 1;
}

void write_comparison_grid(const fs::path& dir, const std::vector<std::uint64_t>& seeds) {
  fs::create_directories(dir);
  for (const Scenario s : {Scenario::TruncatedGaussianBall, Scenario::DirichletSimplex}) {
    for (const FunctionalKind f : {FunctionalKind::KL, FunctionalKind::JS, FunctionalKind::W1}) {
      for (const Algorithm a : {Algorithm::MirrorVT, Algorithm::ProjVT}) {
        const std::string name = to_string(s) + "_" + to_string(f) + "_" + to_string(a);
        std::ofstream out(dir / (name + ".cfg"), std::ios::binary);
        out << "scenario = " << to_string(s) << '\n'
            << "algorithm = " << to_string(a) << '\n'
            << "functional = " << to_string(f) << '\n'
            << "eta = " << (a == Algorithm::MirrorVT ? "0.1" : "0.01") << '\n'
            << "T = 500\n"
            << "patience = 20\n"
            << "seeds = ";
        for (std::size_t i = 0; i < seeds.size(); ++i) out << (i ? "," : "") << seeds[i];
        out << '\n';
      }
    }
  }
}

}  // namespace mirrorvt
