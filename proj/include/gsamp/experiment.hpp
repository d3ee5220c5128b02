#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "gsamp/bipartite.hpp"
#include "gsamp/recovery.hpp"
#include "gsamp/report.hpp"

namespace gsamp {

struct GraphSpec {
  std::string kind = "sensor";  // sensor | bipartite | circular
  Index n = 256;
  std::uint64_t seed = 1;
  int neighbors = 6;
  double edge_probability = 0.5;
  std::string op = "combinatorial";  // combinatorial | normalized (bipartite always uses normalized)
};

Graph make_graph(const GraphSpec& spec);
VariationOperator make_operator(const GraphSpec& spec, const Graph& g);

// One recovery method: prior (subspace | smoothness | baseline), mode and strategy.
struct MethodSpec {
  std::string prior = "subspace";
  DesignMode mode = DesignMode::Unconstrained;
  Strategy strategy = Strategy::DS;
};

struct ExperimentConfig {
  GraphSpec graph;
  Index k = 32;
  FilterSpec generator{"gen1"};
  std::string sampling_filter = "g_bl";
  std::string recon_filter = "recon_cos";
  std::string smooth_filter = "smooth_v";
  MethodSpec method;
  int trials = 1000;
  double noise_variance = 0.0;
  std::uint64_t rng_seed = 1;
  double coeff_mean = 1.0;

  // Bipartite sweep.
  FilterSpec bipartite_generator{"g_ir", 0.1, 0, 2.0};
  std::vector<int> orders{2, 4, 8, 16, 24, 32};

  bool parallel = true;
  bool per_trial = true;

  // Throws InvalidParameter / ParseError on the first violated constraint.
  void validate() const;
};

// `key = value` lines; `#` starts a comment. Keys not listed in the README
// are rejected.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

// Deterministic per-trial generator: every method and every thread sees the
// same stream for a given (rng_seed, trial).
std::mt19937_64 trial_rng(std::uint64_t rng_seed, std::uint64_t trial);

// Design for the configured method on a basis; baseline is S = W = g_bl(K), h = 1.
RecoveryDesign make_design(const ExperimentConfig& cfg, const SpectralBasis& basis);

// Generator, sampling filter and design per trial loop; appends per-trial rows
// (if cfg.per_trial) and a "mean" row.
std::vector<ReportRow> run_recovery_experiment(const ExperimentConfig& cfg);
std::vector<ReportRow> run_recovery_experiment(const ExperimentConfig& cfg, const SpectralBasis& basis);

// Both generators x {noiseless, cfg.noise_variance} x {g_bl, g_ir} x five
// methods, plus the bandlimited baseline per (generator, noise).
std::vector<ReportRow> run_table2(const ExperimentConfig& cfg);
std::vector<MethodSpec> table2_methods();

// Chebyshev order sweep of the one-branch round trip with the
// approximated-bandlimited baseline, plus one exact-filter row.
std::vector<ReportRow> run_bipartite_experiment(const ExperimentConfig& cfg);
std::vector<ReportRow> run_bipartite_experiment(const ExperimentConfig& cfg, const BipartiteSystem& sys);

}  // namespace gsamp
