#include "cesdp/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cesdp/engine.hpp"
#include "cesdp/experiment.hpp"
#include "cesdp/json_io.hpp"
#include "cesdp/network.hpp"

namespace cesdp::cli {

namespace {

struct RunOverrides {
  std::optional<std::string> objective;
  std::optional<std::size_t> n;
  std::optional<double> p_t;
  std::optional<double> epsilon;
  std::optional<double> p_e;
  std::optional<std::size_t> h;
  std::optional<std::size_t> d;
  std::optional<double> tau;
  std::optional<double> rho;
  std::optional<std::size_t> omega;
  std::optional<std::size_t> n_inner;
  std::optional<std::string> estimation_method;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> min_cycles;

  void bind(CLI::App& app) {
    app.add_option("--objective", objective, "absolute-sum | sphere | ackley | levy");
    app.add_option("--n", n, "number of artifacts");
    app.add_option("--p_t,--p-t", p_t, "triangle probability");
    app.add_option("--epsilon", epsilon, "convergence threshold");
    app.add_option("--p_e,--p-e", p_e, "future-estimate probability");
    app.add_option("--h", h, "edges added per new node");
    app.add_option("--d", d, "maximum design cycles");
    app.add_option("--tau", tau, "initial annealing temperature");
    app.add_option("--rho", rho, "annealing visiting parameter");
    app.add_option("--omega", omega, "annealing outer iterations");
    app.add_option("--n_inner,--n-inner", n_inner, "candidates per outer iteration");
    app.add_option("--estimation_method,--estimation-method", estimation_method,
                   "current-only | future");
    app.add_option("--seed", seed, "execution seed");
    app.add_option("--min_cycles,--min-cycles", min_cycles, "earliest cycle convergence is checked");
  }

  void apply(SystemConfig& c) const {
    if (objective) c.objective = parse_objective(*objective);
    if (n) c.n = *n;
    if (p_t) c.p_t = *p_t;
    if (epsilon) c.epsilon = *epsilon;
    if (p_e) c.p_e = *p_e;
    if (h) c.h = *h;
    if (d) c.d = *d;
    if (tau) c.tau = *tau;
    if (rho) c.rho = *rho;
    if (omega) c.omega = *omega;
    if (n_inner) c.n_inner = *n_inner;
    if (estimation_method) c.estimation_method = parse_estimation_method(*estimation_method);
    if (seed) c.seed = *seed;
    if (min_cycles) c.min_cycles = *min_cycles;
  }
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path, std::string("invalid JSON: ") + e.what());
  }
}

// Writes to path, or to out when path is empty.
template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  write(file);
  file.flush();
  if (!file) throw IoError("write failed on " + path);
}

std::size_t default_parallelism() {
  if (const char* env = std::getenv(kParallelismEnv)) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw ConfigError(kParallelismEnv, "must be a positive integer");
  }
  return 1;
}

Json summary_json(const SweepSummary& s, const std::string& output, std::size_t parallelism) {
  Json j;
  j["output"] = output;
  j["parallelism"] = parallelism;
  j["planned"] = s.planned;
  j["already_present"] = s.already_present;
  j["records_written"] = s.records_written;
  j["failures"] = s.failures;
  return j;
}

void cmd_run(const std::string& config_path, const std::string& output, const RunOverrides& ov,
             std::ostream& out) {
  SystemConfig config;
  if (!config_path.empty()) apply_json(read_json_file(config_path), config);
  ov.apply(config);
  config.validate();
  const ExecutionResult result = run_execution(config);
  emit(output, out, [&](std::ostream& os) { os << to_json(config, result).dump(2) << '\n'; });
}

void cmd_sweep(const SweepSpec& spec, const std::string& output, std::optional<std::size_t> parallelism,
               std::ostream& out, std::ostream& err) {
  SweepOptions opts;
  opts.parallelism = parallelism.value_or(default_parallelism());
  if (opts.parallelism == 0) throw ConfigError("parallelism", "must be at least 1");
  opts.log = &err;
  const SweepSummary s = run_sweep(spec, output, opts);
  out << summary_json(s, output, opts.parallelism).dump(2) << '\n';
}

void cmd_demo2(std::uint64_t seed, double epsilon, double p_e, std::size_t n_inner,
               const std::string& output, std::ostream& out) {
  SystemConfig c;
  c.objective = ObjectiveKind::kLevy;
  c.n = 2;
  c.h = 1;
  c.p_t = 0.0;
  c.epsilon = epsilon;
  c.p_e = p_e;
  c.n_inner = n_inner;
  c.seed = seed;
  c.validate();

  std::ostringstream trace;
  trace << "t,x1,x2,f1,f2,F\n";
  run_execution(c, [&](const SystemState& s) {
    trace << s.t << ',' << format_double(s.system_vector[0]) << ','
          << format_double(s.system_vector[1]) << ',' << format_double(s.agents[0].y_reported)
          << ',' << format_double(s.agents[1].y_reported) << ','
          << format_double(s.f_history.back()) << '\n';
  });
  emit(output, out, [&](std::ostream& os) { os << trace.str(); });
}

void cmd_netstats(std::size_t n, std::size_t h, double p_t, std::uint64_t seed,
                  const std::string& edges_path, const std::string& dsm_path, std::ostream& out) {
  Rng rng = Rng::substream(seed, StreamTag::kNetwork);
  const ArtifactNetwork net = generate_network(n, h, p_t, rng);
  const NetworkStats stats = network_stats(net);

  Json j;
  j["n"] = n;
  j["h"] = h;
  j["p_t"] = p_t;
  j["seed"] = seed;
  j["edges"] = net.edge_count();
  j["connected"] = net.connected();
  j["max_degree"] = stats.max_degree;
  j["mean_clustering"] = stats.mean_clustering;
  j["powerlaw_exponent"] = powerlaw_exponent_mle(stats.degree_sequence, h);
  j["degree_sequence"] = stats.degree_sequence;
  out << j.dump(2) << '\n';

  if (!edges_path.empty()) {
    emit(edges_path, out, [&](std::ostream& os) { write_edge_list_csv(net, os); });
  }
  if (!dsm_path.empty()) {
    emit(dsm_path, out, [&](std::ostream& os) { write_dsm_csv(net, os); });
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Agent-based simulator of engineered-system development processes", "cesdp"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  // run
  std::string run_config;
  std::string run_output;
  RunOverrides overrides;
  auto* run_cmd = app.add_subcommand("run", "Run one execution and write its JSON result");
  run_cmd->add_option("--config", run_config, "JSON file with configuration fields");
  run_cmd->add_option("--output,-o", run_output, "output path (default stdout)");
  overrides.bind(*run_cmd);

  // sweep
  std::string sweep_spec_path;
  std::string sweep_output;
  std::optional<std::size_t> sweep_parallelism;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a grid sweep described by a JSON spec");
  sweep_cmd->add_option("--spec", sweep_spec_path, "JSON sweep spec")->required();
  sweep_cmd->add_option("--output,-o", sweep_output, "CSV output (resumed if present)")->required();
  sweep_cmd->add_option("--parallelism,-j", sweep_parallelism, "worker threads");

  // table1
  std::string table_scale = "desk";
  std::string table_output;
  std::optional<std::size_t> table_parallelism;
  std::optional<std::uint64_t> table_master_seed;
  auto* table_cmd = app.add_subcommand("table1", "Sweep the full or desk-scale variable grid");
  table_cmd->add_option("--scale", table_scale, "full | desk")
      ->check(CLI::IsMember({"full", "desk"}));
  table_cmd->add_option("--output,-o", table_output, "CSV output (resumed if present)")->required();
  table_cmd->add_option("--parallelism,-j", table_parallelism, "worker threads");
  table_cmd->add_option("--master-seed", table_master_seed, "master seed");

  // demo2
  std::uint64_t demo_seed = 0;
  double demo_epsilon = 0.01;
  double demo_p_e = 0.5;
  std::size_t demo_n_inner = 50;
  std::string demo_output;
  auto* demo_cmd = app.add_subcommand("demo2", "Two-agent Levy system trace");
  demo_cmd->add_option("--seed", demo_seed, "execution seed");
  demo_cmd->add_option("--epsilon", demo_epsilon, "convergence threshold");
  demo_cmd->add_option("--p_e,--p-e", demo_p_e, "future-estimate probability");
  demo_cmd->add_option("--n_inner,--n-inner", demo_n_inner, "candidates per outer iteration");
  demo_cmd->add_option("--output,-o", demo_output, "trace CSV (default stdout)");

  // netstats
  std::size_t net_n = 1000;
  std::size_t net_h = 2;
  double net_p_t = 0.9;
  std::uint64_t net_seed = 0;
  std::string net_edges;
  std::string net_dsm;
  auto* net_cmd = app.add_subcommand("netstats", "Generate a network and print its statistics");
  net_cmd->add_option("--n", net_n, "node count");
  net_cmd->add_option("--h", net_h, "edges per new node");
  net_cmd->add_option("--p_t,--p-t", net_p_t, "triangle probability");
  net_cmd->add_option("--seed", net_seed, "seed");
  net_cmd->add_option("--edges", net_edges, "write edge list CSV");
  net_cmd->add_option("--dsm", net_dsm, "write dense 0/1 design-structure matrix CSV");

  std::vector<std::string> argv_store{"cesdp"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (*run_cmd) {
      cmd_run(run_config, run_output, overrides, out);
    } else if (*sweep_cmd) {
      const SweepSpec spec = sweep_spec_from_json(read_json_file(sweep_spec_path));
      cmd_sweep(spec, sweep_output, sweep_parallelism, out, err);
    } else if (*table_cmd) {
      SweepSpec spec = table_scale == "full" ? SweepSpec::table1() : SweepSpec::desk();
      if (table_master_seed) spec.master_seed = *table_master_seed;
      cmd_sweep(spec, table_output, table_parallelism, out, err);
    } else if (*demo_cmd) {
      cmd_demo2(demo_seed, demo_epsilon, demo_p_e, demo_n_inner, demo_output, out);
    } else if (*net_cmd) {
      cmd_netstats(net_n, net_h, net_p_t, net_seed, net_edges, net_dsm, out);
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

}  // namespace cesdp::cli
