#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cesdp/agent.hpp"
#include "cesdp/annealer.hpp"
#include "cesdp/network.hpp"
#include "cesdp/objectives.hpp"

namespace cesdp {

/// Independent variables and constants for one execution.
struct SystemConfig {
  ObjectiveKind objective = ObjectiveKind::kAbsoluteSum;
  std::size_t n = 50;
  double p_t = 0.0;
  double epsilon = 0.01;
  double p_e = 0.0;
  std::size_t h = 2;
  std::size_t d = 100;
  double tau = 0.1;
  double rho = 2.62;
  std::size_t omega = 1;
  std::size_t n_inner = 50;
  EstimationMethod estimation_method = EstimationMethod::kFuture;
  std::uint64_t seed = 0;
  /// Earliest cycle at which convergence may be declared. Needs F(t-3), so >= 3.
  std::size_t min_cycles = 4;

  [[nodiscard]] AnnealParams anneal_params() const { return {tau, rho, omega, n_inner}; }

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  bool operator==(const SystemConfig&) const = default;
};

/// Invalid configuration; field() names the offending setting.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message);
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct SystemState {
  std::size_t t = 0;
  ArtifactNetwork network{0, {}};
  std::vector<Agent> agents;
  std::vector<double> system_vector;  // latest reported x of every agent
  std::vector<double> f_history;      // F(0..t)
};

struct ExecutionResult {
  std::size_t cycles = 0;  // N
  double f_final = 0.0;
  bool converged = false;
  std::vector<double> f_history;

  bool operator==(const ExecutionResult&) const = default;
};

SystemState initialize_system(const SystemConfig& config);

/// Sum of reported objective values.
double system_performance(std::span<const double> y_reported);

/// True iff t >= min_cycles and mean_{s=1..3} |F(t) - F(t-s)| < epsilon.
bool check_convergence(std::span<const double> f_history, double epsilon, std::size_t t,
                       std::size_t min_cycles = 4);

/// One synchronous design cycle: every agent steps against the same
/// cycle-start system vector, then all reports are written back together.
void run_cycle(SystemState& state, const SystemConfig& config);

ExecutionResult run_execution(const SystemConfig& config);

/// Runs an execution and hands the state to observer after initialization
/// and after every cycle.
template <typename Observer>
ExecutionResult run_execution(const SystemConfig& config, Observer&& observer);

namespace detail {
ExecutionResult finish(const SystemState& state, const SystemConfig& config);
}

template <typename Observer>
ExecutionResult run_execution(const SystemConfig& config, Observer&& observer) {
  config.validate();
  SystemState state = initialize_system(config);
  observer(static_cast<const SystemState&>(state));
  while (state.t < config.d) {
    run_cycle(state, config);
    observer(static_cast<const SystemState&>(state));
    if (check_convergence(state.f_history, config.epsilon, state.t, config.min_cycles)) break;
  }
  return detail::finish(state, config);
}

}  // namespace cesdp
