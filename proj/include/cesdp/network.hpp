#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "cesdp/random.hpp"

namespace cesdp {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/**
 * @brief Simple undirected artifact interaction graph.
 *
 * Immutable once built. Edges are stored with first < second, sorted
 * ascending; neighbor lists are sorted ascending.
 */
class ArtifactNetwork {
 public:
  /// Builds from an edge list; rejects self-loops, duplicates and
  /// out-of-range endpoints with std::invalid_argument.
  ArtifactNetwork(std::size_t node_count, std::vector<Edge> edges);

  [[nodiscard]] std::size_t node_count() const { return neighbors_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::span<const NodeId> neighbors(NodeId i) const { return neighbors_.at(i); }
  [[nodiscard]] std::size_t degree(NodeId i) const { return neighbors_.at(i).size(); }
  [[nodiscard]] bool adjacent(NodeId i, NodeId j) const;

  /// Dense n x n 0/1 adjacency (design-structure matrix view).
  [[nodiscard]] std::vector<std::vector<std::uint8_t>> adjacency() const;

  [[nodiscard]] bool connected() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> neighbors_;
};

/**
 * @brief Holme-Kim growth with tunable triad formation.
 *
 * Starts from h isolated seed nodes. Each later node adds h edges: the first
 * by degree-proportional attachment, each further one by triad formation
 * with probability triad_probability (connect to a neighbor of the most
 * recent attachment target), otherwise by another degree-proportional draw.
 * Draws that would repeat an edge fall back to a uniform non-neighbor.
 * Yields exactly h * (n - h) edges.
 *
 * Throws std::invalid_argument unless n > h >= 1 and 0 <= p_t <= 1.
 */
ArtifactNetwork generate_network(std::size_t n, std::size_t h, double triad_probability, Rng& rng);

struct NetworkStats {
  std::vector<std::size_t> degree_sequence;
  double mean_clustering = 0.0;
  std::size_t max_degree = 0;
};

NetworkStats network_stats(const ArtifactNetwork& net);

/// Local clustering coefficient; zero for nodes of degree < 2.
double local_clustering(const ArtifactNetwork& net, NodeId i);

/// Discrete power-law exponent by maximum likelihood over degrees >= k_min,
/// using the continuous approximation with the k_min - 1/2 correction.
double powerlaw_exponent_mle(std::span<const std::size_t> degrees, std::size_t k_min);

/// `src,dst` per line, ascending.
void write_edge_list_csv(const ArtifactNetwork& net, std::ostream& os);

/// Dense 0/1 matrix, one row per line.
void write_dsm_csv(const ArtifactNetwork& net, std::ostream& os);

}  // namespace cesdp
