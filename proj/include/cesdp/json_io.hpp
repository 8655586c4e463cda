#pragma once

#include <json.hpp>

#include "cesdp/engine.hpp"
#include "cesdp/experiment.hpp"

namespace cesdp {

using Json = nlohmann::ordered_json;

Json to_json(const SystemConfig& config);

/// Overlays the keys present in j onto config. Unknown keys and wrongly
/// typed values raise ConfigError naming the key.
void apply_json(const Json& j, SystemConfig& config);

/// Single-run document: config echo, N, F_final, converged, F_history.
Json to_json(const SystemConfig& config, const ExecutionResult& result);

Json to_json(const SweepSpec& spec);

/// Keys absent from j keep the value in base.
SweepSpec sweep_spec_from_json(const Json& j, SweepSpec base = {});

}  // namespace cesdp
