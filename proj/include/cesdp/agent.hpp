#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "cesdp/annealer.hpp"
#include "cesdp/network.hpp"
#include "cesdp/objectives.hpp"
#include "cesdp/random.hpp"

namespace cesdp {

/// What an agent reports to the system vector each cycle.
enum class EstimateType {
  kCurrent,  // the design as it stood when the cycle began
  kFuture,   // the design just produced this cycle
};

/// System-wide policy for assigning estimate types.
enum class EstimationMethod {
  kCurrentOnly,
  kFuture,  // each agent is future-type with probability p_e
};

std::string_view to_string(EstimateType type);
std::string_view to_string(EstimationMethod method);
EstimationMethod parse_estimation_method(std::string_view tag);

/// One engineer paired with one artifact.
struct Agent {
  NodeId index = 0;
  ObjectiveKind kind = ObjectiveKind::kSphere;
  std::vector<NodeId> neighbors;  // ascending
  EstimateType estimate_type = EstimateType::kCurrent;
  double x_actual = 0.0;
  double x_reported = 0.0;
  double y_reported = 0.0;

  [[nodiscard]] std::size_t degree() const { return neighbors.size(); }
};

/**
 * Draws the initial design uniformly in the domain and fixes the estimate
 * type for the whole execution. y_reported is left at zero; it depends on the
 * neighbors' initial reports, see refresh_report().
 */
Agent init_agent(NodeId index, const ArtifactNetwork& network, ObjectiveKind kind,
                 double future_probability, EstimationMethod method, Rng& rng);

/// Gathers the entries of the system vector belonging to the agent's neighbors.
std::vector<double> gather_reports(const Agent& agent, std::span<const double> system_vector);

/// Recomputes y_reported = evaluate(kind, [x_reported, neighbor_reports]).
void refresh_report(Agent& agent, std::span<const double> neighbor_reports);

/**
 * One design cycle for one agent against the frozen neighbor reports.
 *
 * Anneals its own variable over the slice objective and adopts the result as
 * x_actual unless it scores worse than the design held at cycle start. Then
 * reports either the post-step design (future type) or the design held when
 * the cycle began (current type).
 */
void design_step(Agent& agent, std::span<const double> neighbor_reports, const AnnealParams& params,
                 Rng& rng);

}  // namespace cesdp
