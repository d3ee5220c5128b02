// gsamp: experiment harness and utilities.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gsamp/bipartite.hpp"
#include "gsamp/experiment.hpp"
#include "gsamp/kernels.hpp"
#include "gsamp/report.hpp"

namespace {

using namespace gsamp;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
  std::string config;
  std::string out = "-";
  std::string format = "csv";
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "key = value configuration file");
  cmd->add_option("--set", o.overrides, "override a setting, key=value (repeatable)");
  cmd->add_option("--seed", o.seed, "RNG seed for the trial streams");
  cmd->add_option("--trials", o.trials, "number of trials");
  cmd->add_option("--out", o.out, "output path, - for stdout");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

ExperimentConfig resolve(const CommonOptions& o, ExperimentConfig base) {
  ExperimentConfig cfg = o.config.empty() ? base : load_config(o.config, base);
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    require(eq != std::string::npos, ErrorCode::ParseError, "--set expects key=value, got '" + kv + "'");
    apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.seed) cfg.rng_seed = *o.seed;
  if (o.trials) cfg.trials = *o.trials;
  cfg.validate();
  return cfg;
}

ReportMetadata metadata(const ExperimentConfig& cfg) {
  return {{"graph", cfg.graph.kind},
          {"n", std::to_string(cfg.graph.n)},
          {"k", std::to_string(cfg.k)},
          {"graph_seed", std::to_string(cfg.graph.seed)},
          {"rng_seed", std::to_string(cfg.rng_seed)},
          {"trials", std::to_string(cfg.trials)},
          {"mse", "10 log10(||x - x~||^2 / ||x||^2), mean taken over linear ratios"},
          {"noise", "added to x before sampling"},
          {"threads", std::to_string(kernels::max_threads())}};
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path == "-") return std::cout;
  file.open(path);
  require(static_cast<bool>(file), ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  return file;
}

int run(int argc, char** argv) {
  CLI::App app{"Generalized sampling of graph signals in the graph frequency domain"};
  app.require_subcommand(1);

  // gen-graph
  GraphSpec gspec;
  std::string graph_out = "-";
  auto* gen = app.add_subcommand("gen-graph", "generate an experiment graph as an edge list");
  gen->add_option("--kind", gspec.kind, "sensor, bipartite or circular")
      ->check(CLI::IsMember({"sensor", "bipartite", "circular"}));
  gen->add_option("--n", gspec.n, "number of vertices");
  gen->add_option("--seed", gspec.seed, "graph seed");
  gen->add_option("--neighbors", gspec.neighbors, "sensor graph: nearest neighbours");
  gen->add_option("--p", gspec.edge_probability, "bipartite graph: edge probability");
  gen->add_option("--out", graph_out, "output path, - for stdout");

  // filters dump
  CommonOptions fopt;
  auto* filt = app.add_subcommand("filters", "filter utilities");
  filt->require_subcommand(1);
  auto* dump = filt->add_subcommand("dump", "tabulate the experiment filter responses on a graph");
  add_common(dump, fopt);

  // recover
  CommonOptions ropt;
  std::string design_out;
  auto* rec = app.add_subcommand("recover", "run one sampling/recovery pipeline over trials");
  add_common(rec, ropt);
  rec->add_option("--design-out", design_out, "write the recovery design as text");

  // exp table2 / exp bipartite
  CommonOptions topt, bopt;
  std::string payload_out;
  auto* exp = app.add_subcommand("exp", "experiments");
  exp->require_subcommand(1);
  auto* t2 = exp->add_subcommand("table2", "all priors, modes and strategies on a random sensor graph");
  add_common(t2, topt);
  auto* bip = exp->add_subcommand("bipartite", "Chebyshev order sweep of the one-branch round trip");
  add_common(bip, bopt);
  bip->add_option("--payload", payload_out, "write the exact encoded spectrum of trial 0");

  // verify theorem1
  std::string graph_in;
  GraphSpec vspec;
  vspec.kind = "bipartite";
  vspec.n = 64;
  vspec.edge_probability = 0.5;
  auto* ver = app.add_subcommand("verify", "numerical checks");
  ver->require_subcommand(1);
  auto* th1 = ver->add_subcommand("theorem1", "vertex/frequency sampling identity on a bipartite graph");
  th1->add_option("--graph", graph_in, "edge-list file (otherwise a random bipartite graph)");
  th1->add_option("--n", vspec.n, "random graph size");
  th1->add_option("--seed", vspec.seed, "random graph seed");
  th1->add_option("--p", vspec.edge_probability, "random graph edge probability");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (gen->parsed()) {
    const Graph g = make_graph(gspec);
    std::ofstream file;
    write_edge_list(open_out(graph_out, file), g);
    return 0;
  }

  if (dump->parsed()) {
    const ExperimentConfig cfg = resolve(fopt, {});
    const Graph g = make_graph(cfg.graph);
    const SpectralBasis b = cfg.graph.kind == "bipartite" ? build_system(g).basis_b
                                                          : eigendecompose(make_operator(cfg.graph, g));
    const double eps = cfg.generator.epsilon;
    const double lmax = cfg.graph.kind == "bipartite" ? kBipartiteSpectrumBound : b.lambda_max();
    const std::vector<std::pair<std::string, SpectralFilter>> cols = {
        {"gen1", filters::generator_1(b.lambdas, lmax, eps)},
        {"gen2", filters::generator_2(b.lambdas, lmax)},
        {"g_bl", filters::g_bl(b.lambdas, cfg.k)},
        {"g_ir", filters::g_ir(b.lambdas, lmax)},
        {"recon_cos", filters::recon_cos(b.lambdas, lmax, eps)},
        {"smooth_v", filters::smooth_v(b.lambdas, lmax)}};
    std::ofstream file;
    std::ostream& out = open_out(fopt.out, file);
    out.precision(17);
    if (fopt.format == "json") {
      out << "{\"lambda\":[";
      for (Index i = 0; i < b.size(); ++i) out << (i ? "," : "") << b.lambdas[i];
      out << ']';
      for (const auto& [name, f] : cols) {
        out << ",\"" << name << "\":[";
        for (Index i = 0; i < f.size(); ++i) out << (i ? "," : "") << f.values[i];
        out << ']';
      }
      out << "}\n";
    } else {
      out << "index,lambda";
      for (const auto& c : cols) out << ',' << c.first;
      out << '\n';
      for (Index i = 0; i < b.size(); ++i) {
        out << i << ',' << b.lambdas[i];
        for (const auto& c : cols) out << ',' << c.second.values[i];
        out << '\n';
      }
    }
    return 0;
  }

  if (rec->parsed()) {
    const ExperimentConfig cfg = resolve(ropt, {});
    const Graph g = make_graph(cfg.graph);
    const SpectralBasis b = eigendecompose(make_operator(cfg.graph, g));
    if (!design_out.empty()) {
      std::ofstream file(design_out);
      require(static_cast<bool>(file), ErrorCode::IoFailure, "cannot open '" + design_out + "'");
      write_design(file, make_design(cfg, b));
    }
    emit_report(run_recovery_experiment(cfg, b), parse_format(ropt.format), ropt.out, metadata(cfg));
    return 0;
  }

  if (t2->parsed()) {
    const ExperimentConfig cfg = resolve(topt, {});
    emit_report(run_table2(cfg), parse_format(topt.format), topt.out, metadata(cfg));
    return 0;
  }

  if (bip->parsed()) {
    ExperimentConfig base;
    base.graph.kind = "bipartite";
    base.graph.n = 256;
    base.k = 128;
    base.trials = 100;
    const ExperimentConfig cfg = resolve(bopt, base);
    require(cfg.graph.kind == "bipartite", ErrorCode::InvalidParameter, "exp bipartite needs graph = bipartite");
    const BipartiteSystem sys = build_system(make_graph(cfg.graph));
    if (!payload_out.empty()) {
      auto rng = trial_rng(cfg.rng_seed, 0);
      std::normal_distribution<double> dist(cfg.coeff_mean, 1.0);
      Vector d(sys.half());
      for (Index i = 0; i < d.size(); ++i) d[i] = dist(rng);
      const SpectralFilter a = make_filter(cfg.bipartite_generator, sys.basis_b.lambdas);
      const OneBranchResult r = one_branch_roundtrip(sys, a, d);
      std::ofstream file(payload_out);
      require(static_cast<bool>(file), ErrorCode::IoFailure, "cannot open '" + payload_out + "'");
      write_payload(file, {sys.size(), sys.half(), cfg.bipartite_generator.to_string(), r.encoded.values});
    }
    ReportMetadata meta = metadata(cfg);
    meta["chebyshev_interval"] = "[0, 2]";
    emit_report(run_bipartite_experiment(cfg, sys), parse_format(bopt.format), bopt.out, meta);
    return 0;
  }

  if (th1->parsed()) {
    Graph g = [&] {
      if (graph_in.empty()) return make_graph(vspec);
      std::ifstream in(graph_in);
      require(static_cast<bool>(in), ErrorCode::IoFailure, "cannot open '" + graph_in + "'");
      return read_edge_list(in);
    }();
    const BipartiteSystem sys = build_system(g);
    std::mt19937_64 rng(vspec.seed);
    std::normal_distribution<double> dist;
    Vector x(sys.size()), fv(sys.size());
    for (Index i = 0; i < x.size(); ++i) x[i] = dist(rng), fv[i] = dist(rng);
    const double c1 = verify_corollary1(sys, SpectralFilter::from_values(fv), x);
    std::cout.precision(3);
    std::cout << "N " << sys.size() << "\ntheorem1_residual " << std::scientific << sys.theorem1_residual
              << "\ncorollary1_residual " << c1 << " (relative to ||x|| " << c1 / x.norm() << ")\n";
    return 0;
  }
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gsamp::Error& e) {
    std::cerr << "gsamp: " << gsamp::to_string(e.code()) << ": " << e.what() << '\n';
    return gsamp::is_numerical(e.code()) ? kExitNumerical : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "gsamp: " << e.what() << '\n';
    return kExitConfig;
  }
}
