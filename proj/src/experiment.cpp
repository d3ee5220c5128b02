#include "gsamp/experiment.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>

namespace gsamp {

Graph make_graph(const GraphSpec& spec) {
  if (spec.kind == "sensor") return gen_random_sensor(spec.n, spec.seed, {spec.neighbors});
  if (spec.kind == "bipartite") {
    require(spec.n % 2 == 0, ErrorCode::InvalidParameter, "bipartite graph needs an even N");
    return gen_random_bipartite(spec.n / 2, spec.seed, {spec.edge_probability});
  }
  if (spec.kind == "circular") return gen_circular(spec.n);
  raise(ErrorCode::InvalidParameter, "unknown graph kind '" + spec.kind + "'");
}

VariationOperator make_operator(const GraphSpec& spec, const Graph& g) {
  if (spec.kind == "bipartite" || spec.op == "normalized") return normalized_laplacian(g);
  require(spec.op == "combinatorial", ErrorCode::InvalidParameter, "unknown operator '" + spec.op + "'");
  return combinatorial_laplacian(g);
}

namespace {

const char* kPriors[] = {"subspace", "smoothness", "baseline"};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

template <class T>
T parse_value(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T v{};
  in >> v;
  require(static_cast<bool>(in) && (in >> std::ws).eof(), ErrorCode::ParseError,
          "bad value for " + key + ": '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "on") return true;
  if (text == "false" || text == "0" || text == "off") return false;
  raise(ErrorCode::ParseError, "bad boolean for " + key + ": '" + text + "'");
}

FilterSpec with_k(FilterSpec spec, Index k) {
  if (spec.id == "g_bl" && spec.k == 0) spec.k = k;
  return spec;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double mean_db(const std::vector<double>& ratios) {
  double acc = 0.0;
  for (double r : ratios) acc += r;
  return ratio_to_db(acc / static_cast<double>(ratios.size()));
}

// Runs body(t) for every trial, in parallel when asked. The first exception
// thrown by any trial is rethrown after the loop.
template <class Body>
void for_each_trial(int trials, [[maybe_unused]] bool parallel, Body&& body) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int t = 0; t < trials; ++t) {
    try {
      body(t);
    } catch (...) {
#pragma omp critical(gsamp_trial_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void append_group(std::vector<ReportRow>& rows, ReportRow proto, const std::vector<double>& ratios,
                  bool per_trial) {
  proto.mean_mse_db = mean_db(ratios);
  if (per_trial) {
    for (std::size_t t = 0; t < ratios.size(); ++t) {
      ReportRow r = proto;
      r.trial = std::to_string(t);
      r.mse_db = ratio_to_db(ratios[t]);
      rows.push_back(std::move(r));
    }
  }
  proto.trial = "mean";
  proto.mse_db = proto.mean_mse_db;
  rows.push_back(std::move(proto));
}

Vector draw(std::mt19937_64& rng, Index n, double mean, double variance) {
  std::normal_distribution<double> dist(mean, std::sqrt(variance));
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

}  // namespace

void ExperimentConfig::validate() const {
  require(graph.n >= 2, ErrorCode::InvalidParameter, "graph size must be at least 2");
  require(graph.neighbors >= 1, ErrorCode::InvalidParameter, "neighbors must be positive");
  require(graph.edge_probability > 0.0 && graph.edge_probability <= 1.0, ErrorCode::InvalidParameter,
          "edge_probability must lie in (0, 1]");
  require(graph.kind == "sensor" || graph.kind == "bipartite" || graph.kind == "circular",
          ErrorCode::InvalidParameter, "unknown graph kind '" + graph.kind + "'");
  require(graph.op == "combinatorial" || graph.op == "normalized", ErrorCode::InvalidParameter,
          "unknown operator '" + graph.op + "'");
  require(k >= 1 && graph.n % k == 0, ErrorCode::InvalidParameter, "K must divide N");
  require(trials >= 1, ErrorCode::InvalidParameter, "trials must be at least 1");
  require(std::isfinite(noise_variance) && noise_variance >= 0.0, ErrorCode::InvalidParameter,
          "noise_variance must be nonnegative");
  require(std::isfinite(coeff_mean), ErrorCode::InvalidParameter, "coeff_mean must be finite");
  for (const std::string* id : {&generator.id, &sampling_filter, &recon_filter, &smooth_filter,
                                &bipartite_generator.id}) {
    require(is_known_filter(FilterSpec::parse(*id).id), ErrorCode::InvalidParameter, "unknown filter '" + *id + "'");
  }
  bool known_prior = false;
  for (const char* p : kPriors) known_prior |= method.prior == p;
  require(known_prior, ErrorCode::InvalidParameter, "unknown prior '" + method.prior + "'");
  require(!(method.prior == "smoothness" && method.mode == DesignMode::Predefined && method.strategy == Strategy::DS),
          ErrorCode::InvalidParameter, "smoothness prior with a predefined filter supports LS and MX only");
  require(!orders.empty(), ErrorCode::InvalidParameter, "orders must not be empty");
  for (int p : orders) require(p >= 1, ErrorCode::InvalidParameter, "Chebyshev orders must be positive");
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "graph") cfg.graph.kind = value;
  else if (key == "n") cfg.graph.n = parse_value<Index>(key, value);
  else if (key == "graph_seed") cfg.graph.seed = parse_value<std::uint64_t>(key, value);
  else if (key == "neighbors") cfg.graph.neighbors = parse_value<int>(key, value);
  else if (key == "edge_probability") cfg.graph.edge_probability = parse_value<double>(key, value);
  else if (key == "operator") cfg.graph.op = value;
  else if (key == "k") cfg.k = parse_value<Index>(key, value);
  else if (key == "generator") cfg.generator = FilterSpec::parse(value);
  else if (key == "sampling_filter") cfg.sampling_filter = value;
  else if (key == "recon_filter") cfg.recon_filter = value;
  else if (key == "smooth_filter") cfg.smooth_filter = value;
  else if (key == "prior") cfg.method.prior = value;
  else if (key == "mode") cfg.method.mode = parse_mode(value);
  else if (key == "strategy") cfg.method.strategy = parse_strategy(value);
  else if (key == "trials") cfg.trials = parse_value<int>(key, value);
  else if (key == "noise_variance") cfg.noise_variance = parse_value<double>(key, value);
  else if (key == "rng_seed") cfg.rng_seed = parse_value<std::uint64_t>(key, value);
  else if (key == "coeff_mean") cfg.coeff_mean = parse_value<double>(key, value);
  else if (key == "bipartite_generator") cfg.bipartite_generator = FilterSpec::parse(value);
  else if (key == "orders") {
    cfg.orders.clear();
    std::istringstream in(value);
    std::string tok;
    while (std::getline(in, tok, ',')) cfg.orders.push_back(parse_value<int>(key, trim(tok)));
  } else if (key == "parallel") cfg.parallel = parse_bool(key, value);
  else if (key == "per_trial") cfg.per_trial = parse_bool(key, value);
  else raise(ErrorCode::InvalidParameter, "unknown config key '" + key + "'");
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorCode::ParseError,
            "config line " + std::to_string(lineno) + ": expected key = value");
    apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  base.validate();
  return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::IoFailure, "cannot open config '" + path + "'");
  return parse_config(in, std::move(base));
}

std::mt19937_64 trial_rng(std::uint64_t rng_seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(rng_seed) ^ trial));
}

namespace {

SpectralFilter sampling_filter_for(const ExperimentConfig& cfg, const SpectralBasis& basis) {
  if (cfg.method.prior == "baseline") return filters::g_bl(basis.lambdas, cfg.k);
  return make_filter(with_k(FilterSpec::parse(cfg.sampling_filter), cfg.k), basis.lambdas);
}

SpectralFilter named_filter(const ExperimentConfig& cfg, const std::string& text, const SpectralBasis& basis) {
  FilterSpec spec = with_k(FilterSpec::parse(text), cfg.k);
  if (text.find("eps=") == std::string::npos) spec.epsilon = cfg.generator.epsilon;
  return make_filter(spec, basis.lambdas);
}

}  // namespace

RecoveryDesign make_design(const ExperimentConfig& cfg, const SpectralBasis& basis) {
  const SamplingConfig sc = SamplingConfig::from_k(basis.size(), cfg.k);
  const SpectralFilter s = sampling_filter_for(cfg, basis);
  const MethodSpec& m = cfg.method;
  if (m.prior == "baseline") return {Vector::Ones(sc.k), s, Strategy::DS, DesignMode::Predefined};
  if (m.prior == "subspace") {
    const SpectralFilter a = make_filter(with_k(cfg.generator, cfg.k), basis.lambdas);
    if (m.mode == DesignMode::Unconstrained) return design_subspace_unconstrained(s, a, sc, m.strategy);
    return design_subspace_predefined(s, a, named_filter(cfg, cfg.recon_filter, basis), sc, m.strategy);
  }
  require(m.prior == "smoothness", ErrorCode::InvalidParameter, "unknown prior '" + m.prior + "'");
  const SpectralFilter v = named_filter(cfg, cfg.smooth_filter, basis);
  if (m.mode == DesignMode::Unconstrained) return design_smoothness_unconstrained(s, v, sc);
  return design_smoothness_predefined(s, v, named_filter(cfg, cfg.recon_filter, basis), sc, m.strategy);
}

std::vector<ReportRow> run_recovery_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Graph g = make_graph(cfg.graph);
  return run_recovery_experiment(cfg, eigendecompose(make_operator(cfg.graph, g)));
}

std::vector<ReportRow> run_recovery_experiment(const ExperimentConfig& cfg, const SpectralBasis& basis) {
  cfg.validate();
  const SamplingConfig sc = SamplingConfig::from_k(basis.size(), cfg.k);
  const PgsModel model{make_filter(with_k(cfg.generator, cfg.k), basis.lambdas), sc, basis};
  const SpectralFilter s = sampling_filter_for(cfg, basis);
  const RecoveryDesign design = make_design(cfg, basis);

  std::vector<double> ratios(static_cast<std::size_t>(cfg.trials));
  for_each_trial(cfg.trials, cfg.parallel, [&](int t) {
    auto rng = trial_rng(cfg.rng_seed, static_cast<std::uint64_t>(t));
    const Vector dhat = draw(rng, sc.k, cfg.coeff_mean, 1.0);
    const Vector x = generate_pgs(model, dhat);
    Vector y = x;
    if (cfg.noise_variance > 0.0) y += draw(rng, sc.n, 0.0, cfg.noise_variance);
    const Vector xt = reconstruct(basis, design, frequency_sample(basis, s, y, sc));
    ratios[static_cast<std::size_t>(t)] = mse_ratio(x, xt);
  });

  const bool baseline = cfg.method.prior == "baseline";
  ReportRow proto{cfg.method.prior,
                  baseline ? "bandlimited" : to_string(design.mode),
                  baseline ? "none" : to_string(design.strategy),
                  baseline ? "g_bl" : FilterSpec::parse(cfg.sampling_filter).id,
                  cfg.generator.id,
                  cfg.noise_variance,
                  "",
                  0.0,
                  0.0};
  std::vector<ReportRow> rows;
  append_group(rows, std::move(proto), ratios, cfg.per_trial);
  return rows;
}

std::vector<MethodSpec> table2_methods() {
  return {{"subspace", DesignMode::Unconstrained, Strategy::DS},
          {"subspace", DesignMode::Predefined, Strategy::DS},
          {"subspace", DesignMode::Predefined, Strategy::LS},
          {"smoothness", DesignMode::Unconstrained, Strategy::MX},
          {"smoothness", DesignMode::Predefined, Strategy::MX}};
}

std::vector<ReportRow> run_table2(const ExperimentConfig& cfg) {
  cfg.validate();
  const Graph g = make_graph(cfg.graph);
  const SpectralBasis basis = eigendecompose(make_operator(cfg.graph, g));
  const double noisy = cfg.noise_variance > 0.0 ? cfg.noise_variance : 0.1;

  std::vector<ReportRow> rows;
  for (const char* gen : {"gen1", "gen2"}) {
    for (double noise : {0.0, noisy}) {
      ExperimentConfig run = cfg;
      run.generator = FilterSpec{gen, cfg.generator.epsilon, 0, 0.0};
      run.noise_variance = noise;
      for (const char* sampling : {"g_bl", "g_ir"}) {
        run.sampling_filter = sampling;
        for (const MethodSpec& m : table2_methods()) {
          run.method = m;
          auto part = run_recovery_experiment(run, basis);
          rows.insert(rows.end(), part.begin(), part.end());
        }
      }
      run.method = {"baseline", DesignMode::Predefined, Strategy::DS};
      auto part = run_recovery_experiment(run, basis);
      rows.insert(rows.end(), part.begin(), part.end());
    }
  }
  return rows;
}

std::vector<ReportRow> run_bipartite_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  require(cfg.graph.kind == "bipartite", ErrorCode::InvalidParameter, "bipartite experiment needs graph = bipartite");
  return run_bipartite_experiment(cfg, build_system(make_graph(cfg.graph)));
}

std::vector<ReportRow> run_bipartite_experiment(const ExperimentConfig& cfg, const BipartiteSystem& sys) {
  cfg.validate();
  const Index k = sys.half();
  const SpectralFilter a = make_filter(cfg.bipartite_generator, sys.basis_b.lambdas);
  require(a.has_response(), ErrorCode::InvalidParameter, "bipartite generator needs a continuous response");
  const SpectralFilter wprime = one_branch_wprime(sys, a);
  const SpectralFilter s = filters::g_bl(sys.basis_b.lambdas, k);
  const std::string gen = cfg.bipartite_generator.id;
  const int trials = cfg.trials;

  // Signals are shared by every order and by the exact run.
  std::vector<Vector> signals(static_cast<std::size_t>(trials));
  std::vector<Vector> observed(static_cast<std::size_t>(trials));
  for_each_trial(trials, cfg.parallel, [&](int t) {
    auto rng = trial_rng(cfg.rng_seed, static_cast<std::uint64_t>(t));
    const Vector d = draw(rng, k, cfg.coeff_mean, 1.0);
    Vector x = one_branch_signal(sys, wprime, d);
    Vector y = x;
    if (cfg.noise_variance > 0.0) y += draw(rng, sys.size(), 0.0, cfg.noise_variance);
    signals[static_cast<std::size_t>(t)] = std::move(x);
    observed[static_cast<std::size_t>(t)] = std::move(y);
  });

  std::vector<ReportRow> rows;
  const ReportRow proposed{"subspace", "", "DS", "g_bl", gen, cfg.noise_variance, "", 0.0, 0.0};
  const ReportRow baseline{"baseline", "", "none", "g_bl", gen, cfg.noise_variance, "", 0.0, 0.0};
  std::vector<double> ratios(static_cast<std::size_t>(trials));
  std::vector<double> base_ratios(static_cast<std::size_t>(trials));

  for_each_trial(trials, cfg.parallel, [&](int t) {
    const auto i = static_cast<std::size_t>(t);
    ratios[i] = mse_ratio(signals[i], vertex_pipeline(sys, s, wprime, observed[i]));
  });
  ReportRow exact = proposed;
  exact.mode = "exact";
  append_group(rows, exact, ratios, cfg.per_trial);

  for (int order : cfg.orders) {
    const ChebyshevFilter g_fit = chebyshev_fit(s.response, 0.0, kBipartiteSpectrumBound, order);
    const ChebyshevFilter w_fit =
        chebyshev_fit(one_branch_wprime_response(a.response), 0.0, kBipartiteSpectrumBound, order);
    for_each_trial(trials, cfg.parallel, [&](int t) {
      const auto i = static_cast<std::size_t>(t);
      const Vector sampled = mask_v1(sys, apply_chebyshev(sys.op, g_fit, observed[i], false));
      ratios[i] = mse_ratio(signals[i], 2.0 * apply_chebyshev(sys.op, w_fit, sampled, false));
      base_ratios[i] = mse_ratio(signals[i], 2.0 * apply_chebyshev(sys.op, g_fit, sampled, false));
    });
    const std::string mode = "cheb" + std::to_string(order);
    ReportRow p = proposed, b = baseline;
    p.mode = mode;
    b.mode = mode;
    append_group(rows, p, ratios, cfg.per_trial);
    append_group(rows, b, base_ratios, cfg.per_trial);
  }
  return rows;
}

}  // namespace gsamp
