#include "cesdp/agent.hpp"

#include <stdexcept>
#include <string>

namespace cesdp {

std::string_view to_string(EstimateType type) {
  return type == EstimateType::kFuture ? "future" : "current";
}

std::string_view to_string(EstimationMethod method) {
  return method == EstimationMethod::kFuture ? "future" : "current-only";
}

EstimationMethod parse_estimation_method(std::string_view tag) {
  if (tag == "future") return EstimationMethod::kFuture;
  if (tag == "current-only" || tag == "current") return EstimationMethod::kCurrentOnly;
  throw std::invalid_argument("unknown estimation method '" + std::string(tag) +
                              "' (expected current-only or future)");
}

Agent init_agent(NodeId index, const ArtifactNetwork& network, ObjectiveKind kind,
                 double future_probability, EstimationMethod method, Rng& rng) {
  if (index >= network.node_count()) throw std::out_of_range("agent index outside network");
  Agent a;
  a.index = index;
  a.kind = kind;
  const auto nb = network.neighbors(index);
  a.neighbors.assign(nb.begin(), nb.end());

  const Interval d = domain(kind);
  a.x_actual = rng.uniform(d.lo, d.hi);
  a.x_reported = a.x_actual;

  // The type draw is taken under both methods so the design stream is shared.
  const bool future = rng.bernoulli(future_probability);
  a.estimate_type = method == EstimationMethod::kFuture && future ? EstimateType::kFuture
                                                                  : EstimateType::kCurrent;
  return a;
}

std::vector<double> gather_reports(const Agent& agent, std::span<const double> system_vector) {
  std::vector<double> out;
  out.reserve(agent.neighbors.size());
  for (NodeId j : agent.neighbors) out.push_back(system_vector[j]);
  return out;
}

void refresh_report(Agent& agent, std::span<const double> neighbor_reports) {
  if (neighbor_reports.size() != agent.neighbors.size()) {
    throw std::invalid_argument("neighbor report count does not match agent degree");
  }
  std::vector<double> x;
  x.reserve(neighbor_reports.size() + 1);
  x.push_back(agent.x_reported);
  x.insert(x.end(), neighbor_reports.begin(), neighbor_reports.end());
  agent.y_reported = evaluate(agent.kind, x);
}

void design_step(Agent& agent, std::span<const double> neighbor_reports, const AnnealParams& params,
                 Rng& rng) {
  if (neighbor_reports.size() != agent.neighbors.size()) {
    throw std::invalid_argument("neighbor report count does not match agent degree");
  }
  const double cycle_start = agent.x_actual;
  const SliceObjective slice(agent.kind, neighbor_reports);
  const AnnealResult r = anneal(std::cref(slice), domain(agent.kind), params, rng);

  // The search restarts from a random point, so its best can be worse than
  // the design already held; the agent keeps whichever scores lower.
  if (r.f_best <= slice(cycle_start)) agent.x_actual = r.x_best;
  agent.x_reported = agent.estimate_type == EstimateType::kFuture ? agent.x_actual : cycle_start;
  refresh_report(agent, neighbor_reports);
}

}  // namespace cesdp
