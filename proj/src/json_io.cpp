#include "cesdp/json_io.hpp"

#include <string>

namespace cesdp {

namespace {

double get_real(const Json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

std::uint64_t get_unsigned(const Json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  throw ConfigError(key, "expected a non-negative integer");
}

std::string get_text(const Json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

template <typename F>
auto wrap(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

template <typename T, typename Get>
std::vector<T> get_list(const Json& v, const std::string& key, Get get) {
  if (!v.is_array()) throw ConfigError(key, "expected an array");
  std::vector<T> out;
  for (const auto& item : v) out.push_back(get(item));
  return out;
}

}  // namespace

Json to_json(const SystemConfig& c) {
  Json j;
  j["objective"] = std::string(to_string(c.objective));
  j["n"] = c.n;
  j["p_t"] = c.p_t;
  j["epsilon"] = c.epsilon;
  j["p_e"] = c.p_e;
  j["h"] = c.h;
  j["d"] = c.d;
  j["tau"] = c.tau;
  j["rho"] = c.rho;
  j["omega"] = c.omega;
  j["n_inner"] = c.n_inner;
  j["estimation_method"] = std::string(to_string(c.estimation_method));
  j["seed"] = c.seed;
  j["min_cycles"] = c.min_cycles;
  return j;
}

void apply_json(const Json& j, SystemConfig& c) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "objective") {
      c.objective = wrap(key, [&] { return parse_objective(get_text(v, key)); });
    } else if (key == "n") {
      c.n = get_unsigned(v, key);
    } else if (key == "p_t") {
      c.p_t = get_real(v, key);
    } else if (key == "epsilon") {
      c.epsilon = get_real(v, key);
    } else if (key == "p_e") {
      c.p_e = get_real(v, key);
    } else if (key == "h") {
      c.h = get_unsigned(v, key);
    } else if (key == "d") {
      c.d = get_unsigned(v, key);
    } else if (key == "tau") {
      c.tau = get_real(v, key);
    } else if (key == "rho") {
      c.rho = get_real(v, key);
    } else if (key == "omega") {
      c.omega = get_unsigned(v, key);
    } else if (key == "n_inner") {
      c.n_inner = get_unsigned(v, key);
    } else if (key == "estimation_method") {
      c.estimation_method = wrap(key, [&] { return parse_estimation_method(get_text(v, key)); });
    } else if (key == "seed") {
      c.seed = get_unsigned(v, key);
    } else if (key == "min_cycles") {
      c.min_cycles = get_unsigned(v, key);
    } else {
      throw ConfigError(key, "unknown configuration key");
    }
  }
}

Json to_json(const SystemConfig& config, const ExecutionResult& result) {
  Json j;
  j["config"] = to_json(config);
  j["N"] = result.cycles;
  j["F_final"] = result.f_final;
  j["converged"] = result.converged;
  j["F_history"] = result.f_history;
  return j;
}

Json to_json(const SweepSpec& s) {
  Json j;
  Json objectives = Json::array();
  for (ObjectiveKind k : s.objectives) objectives.push_back(std::string(to_string(k)));
  j["objectives"] = objectives;
  j["n"] = s.n;
  j["p_t"] = s.p_t;
  j["epsilon"] = s.epsilon;
  j["p_e"] = s.p_e;
  j["h"] = s.h;
  j["d"] = s.d;
  j["tau"] = s.tau;
  j["rho"] = s.rho;
  j["omega"] = s.omega;
  j["n_inner"] = s.n_inner;
  j["estimation_method"] = std::string(to_string(s.estimation_method));
  j["replications"] = s.replications;
  j["master_seed"] = s.master_seed;
  j["fraction"] = s.fraction;
  return j;
}

SweepSpec sweep_spec_from_json(const Json& j, SweepSpec s) {
  if (!j.is_object()) throw ConfigError("spec", "expected a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "objectives") {
      s.objectives = get_list<ObjectiveKind>(v, key, [&](const Json& item) {
        return wrap(key, [&] { return parse_objective(get_text(item, key)); });
      });
    } else if (key == "n") {
      s.n = get_list<std::size_t>(v, key, [&](const Json& item) { return get_unsigned(item, key); });
    } else if (key == "p_t") {
      s.p_t = get_list<double>(v, key, [&](const Json& item) { return get_real(item, key); });
    } else if (key == "epsilon") {
      s.epsilon = get_list<double>(v, key, [&](const Json& item) { return get_real(item, key); });
    } else if (key == "p_e") {
      s.p_e = get_list<double>(v, key, [&](const Json& item) { return get_real(item, key); });
    } else if (key == "h") {
      s.h = get_unsigned(v, key);
    } else if (key == "d") {
      s.d = get_unsigned(v, key);
    } else if (key == "tau") {
      s.tau = get_real(v, key);
    } else if (key == "rho") {
      s.rho = get_real(v, key);
    } else if (key == "omega") {
      s.omega = get_unsigned(v, key);
    } else if (key == "n_inner") {
      s.n_inner = get_unsigned(v, key);
    } else if (key == "estimation_method") {
      s.estimation_method = wrap(key, [&] { return parse_estimation_method(get_text(v, key)); });
    } else if (key == "replications") {
      s.replications = get_unsigned(v, key);
    } else if (key == "master_seed") {
      s.master_seed = get_unsigned(v, key);
    } else if (key == "fraction") {
      s.fraction = get_real(v, key);
    } else {
      throw ConfigError(key, "unknown sweep spec key");
    }
  }
  return s;
}

}  // namespace cesdp
