#include "cesdp/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cesdp {

ArtifactNetwork::ArtifactNetwork(std::size_t node_count, std::vector<Edge> edges)
    : neighbors_(node_count) {
  for (auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("self-loop at node " + std::to_string(a));
    if (a >= node_count || b >= node_count) throw std::invalid_argument("edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("duplicate edge");
  }
  for (const auto& [a, b] : edges) {
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
  edges_ = std::move(edges);
}

bool ArtifactNetwork::adjacent(NodeId i, NodeId j) const {
  const auto& nb = neighbors_.at(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

std::vector<std::vector<std::uint8_t>> ArtifactNetwork::adjacency() const {
  const std::size_t n = node_count();
  std::vector<std::vector<std::uint8_t>> a(n, std::vector<std::uint8_t>(n, 0));
  for (const auto& [u, v] : edges_) a[u][v] = a[v][u] = 1;
  return a;
}

bool ArtifactNetwork::connected() const {
  const std::size_t n = node_count();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack{0};
  seen[0] = true;
  std::size_t visited = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : neighbors_[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++visited;
        stack.push_back(v);
      }
    }
  }
  return visited == n;
}

namespace {

struct Builder {
  std::vector<std::vector<NodeId>> adj;
  std::vector<Edge> edges;
  // One entry per edge endpoint: sampling uniformly from it is degree-proportional.
  std::vector<NodeId> endpoints;

  bool linked(NodeId i, NodeId t) const {
    const auto& nb = adj[i];
    return std::find(nb.begin(), nb.end(), t) != nb.end();
  }

  void link(NodeId i, NodeId t) {
    adj[i].push_back(t);
    adj[t].push_back(i);
    edges.emplace_back(t, i);
  }

  // Uniform among {0..i-1} minus the current neighbors of i.
  NodeId uniform_non_neighbor(NodeId i, Rng& rng) const {
    std::vector<NodeId> taken = adj[i];
    std::sort(taken.begin(), taken.end());
    auto candidate = static_cast<NodeId>(rng.below(i - taken.size()));
    for (NodeId t : taken) {
      if (t <= candidate) ++candidate;
    }
    return candidate;
  }

  NodeId preferential(NodeId i, std::size_t snapshot, Rng& rng) const {
    if (snapshot == 0) return static_cast<NodeId>(rng.below(i));
    return endpoints[rng.below(snapshot)];
  }
};

}  // namespace

ArtifactNetwork generate_network(std::size_t n, std::size_t h, double triad_probability, Rng& rng) {
  if (h < 1) throw std::invalid_argument("edges per new node h must be at least 1");
  if (n <= h) {
    throw std::invalid_argument("node count n = " + std::to_string(n) +
                                " must exceed edges per new node h = " + std::to_string(h));
  }
  if (!(triad_probability >= 0.0 && triad_probability <= 1.0)) {
    throw std::invalid_argument("triad probability must lie in [0, 1]");
  }

  Builder b;
  b.adj.resize(n);
  b.edges.reserve(h * (n - h));
  b.endpoints.reserve(2 * h * (n - h));

  for (auto i = static_cast<NodeId>(h); i < n; ++i) {
    const std::size_t snapshot = b.endpoints.size();
    NodeId anchor = 0;
    for (std::size_t e = 0; e < h; ++e) {
      NodeId target;
      const bool triad = e > 0 && rng.bernoulli(triad_probability);
      if (triad) {
        std::vector<NodeId> pool;
        for (NodeId l : b.adj[anchor]) {
          if (l != i && !b.linked(i, l)) pool.push_back(l);
        }
        target = pool.empty() ? b.uniform_non_neighbor(i, rng) : pool[rng.below(pool.size())];
      } else {
        target = b.preferential(i, snapshot, rng);
        if (b.linked(i, target)) target = b.uniform_non_neighbor(i, rng);
        anchor = target;
      }
      b.link(i, target);
    }
    for (NodeId t : b.adj[i]) {
      b.endpoints.push_back(t);
      b.endpoints.push_back(i);
    }
  }
  return ArtifactNetwork(n, std::move(b.edges));
}

double local_clustering(const ArtifactNetwork& net, NodeId i) {
  const auto nb = net.neighbors(i);
  const std::size_t k = nb.size();
  if (k < 2) return 0.0;
  std::size_t links = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t c = a + 1; c < k; ++c) {
      if (net.adjacent(nb[a], nb[c])) ++links;
    }
  }
  return 2.0 * static_cast<double>(links) / static_cast<double>(k * (k - 1));
}

NetworkStats network_stats(const ArtifactNetwork& net) {
  NetworkStats s;
  const std::size_t n = net.node_count();
  s.degree_sequence.resize(n);
  double clustering = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    s.degree_sequence[i] = net.degree(i);
    s.max_degree = std::max(s.max_degree, s.degree_sequence[i]);
    clustering += local_clustering(net, i);
  }
  s.mean_clustering = n == 0 ? 0.0 : clustering / static_cast<double>(n);
  return s;
}

double powerlaw_exponent_mle(std::span<const std::size_t> degrees, std::size_t k_min) {
  if (k_min == 0) throw std::invalid_argument("k_min must be positive");
  const double shift = static_cast<double>(k_min) - 0.5;
  double log_sum = 0.0;
  std::size_t tail = 0;
  for (std::size_t k : degrees) {
    if (k >= k_min) {
      log_sum += std::log(static_cast<double>(k) / shift);
      ++tail;
    }
  }
  if (tail == 0 || log_sum <= 0.0) throw std::invalid_argument("no degrees in the tail");
  return 1.0 + static_cast<double>(tail) / log_sum;
}

void write_edge_list_csv(const ArtifactNetwork& net, std::ostream& os) {
  for (const auto& [a, b] : net.edges()) os << a << ',' << b << '\n';
}

void write_dsm_csv(const ArtifactNetwork& net, std::ostream& os) {
  for (const auto& row : net.adjacency()) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << ',';
      os << static_cast<int>(row[j]);
    }
    os << '\n';
  }
}

}  // namespace cesdp
