#include "cesdp/engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cesdp {

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

void SystemConfig::validate() const {
  auto probability = [](const char* field, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(field, "must lie in [0, 1]");
  };
  if (h < 1) throw ConfigError("h", "must be at least 1");
  if (n <= h) {
    throw ConfigError("n", "node count " + std::to_string(n) + " must exceed h = " + std::to_string(h));
  }
  probability("p_t", p_t);
  probability("p_e", p_e);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon", "must be positive");
  if (min_cycles < 3) throw ConfigError("min_cycles", "must be at least 3");
  if (d < min_cycles) throw ConfigError("d", "must be at least min_cycles (" + std::to_string(min_cycles) + ")");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau", "must be positive");
  if (!(rho > 1.0) || !std::isfinite(rho)) throw ConfigError("rho", "must exceed 1");
  if (omega < 1) throw ConfigError("omega", "must be at least 1");
  if (n_inner < 1) throw ConfigError("n_inner", "must be at least 1");
  if (n > 0xffffffffULL) throw ConfigError("n", "too large");
}

SystemState initialize_system(const SystemConfig& config) {
  config.validate();
  SystemState s;
  Rng net_rng = Rng::substream(config.seed, StreamTag::kNetwork);
  s.network = generate_network(config.n, config.h, config.p_t, net_rng);

  s.agents.reserve(config.n);
  s.system_vector.resize(config.n);
  for (NodeId i = 0; i < config.n; ++i) {
    Rng rng = Rng::substream(config.seed, StreamTag::kAgentInit, i);
    s.agents.push_back(
        init_agent(i, s.network, config.objective, config.p_e, config.estimation_method, rng));
    s.system_vector[i] = s.agents.back().x_reported;
  }

  std::vector<double> y(config.n);
  for (auto& a : s.agents) {
    refresh_report(a, gather_reports(a, s.system_vector));
    y[a.index] = a.y_reported;
  }
  s.f_history.push_back(system_performance(y));
  return s;
}

double system_performance(std::span<const double> y_reported) {
  double f = 0.0;
  for (double y : y_reported) f += y;
  return f;
}

bool check_convergence(std::span<const double> f_history, double epsilon, std::size_t t,
                       std::size_t min_cycles) {
  if (t < min_cycles || t < 3 || t >= f_history.size()) return false;
  double deviation = 0.0;
  for (std::size_t lag = 1; lag <= 3; ++lag) deviation += std::abs(f_history[t] - f_history[t - lag]);
  return deviation / 3.0 < epsilon;
}

void run_cycle(SystemState& state, const SystemConfig& config) {
  if (state.t >= config.d) throw std::logic_error("run_cycle called at the cycle limit");
  const std::size_t next = state.t + 1;
  const AnnealParams params = config.anneal_params();
  const std::vector<double> frozen = state.system_vector;

  std::vector<double> y(state.agents.size());
  for (auto& a : state.agents) {
    Rng rng = Rng::substream(config.seed, StreamTag::kDesignStep, next, a.index);
    design_step(a, gather_reports(a, frozen), params, rng);
    y[a.index] = a.y_reported;
  }
  for (const auto& a : state.agents) state.system_vector[a.index] = a.x_reported;
  state.f_history.push_back(system_performance(y));
  state.t = next;
}

namespace detail {

ExecutionResult finish(const SystemState& state, const SystemConfig& config) {
  ExecutionResult r;
  r.cycles = state.t;
  r.f_final = state.f_history.back();
  r.converged = check_convergence(state.f_history, config.epsilon, state.t, config.min_cycles);
  r.f_history = state.f_history;
  return r;
}

}  // namespace detail

ExecutionResult run_execution(const SystemConfig& config) {
  return run_execution(config, [](const SystemState&) {});
}

}  // namespace cesdp
