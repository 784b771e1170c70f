#ifndef GA_GRAPH_HPP
#define GA_GRAPH_HPP

#include <optional>
#include <utility>
#include <vector>

#include "ga/rng.hpp"

namespace ga {

using EdgeList = std::vector<std::pair<int, int>>;

// Undirected simple graph on dense node indices 0..n-1. Edges are stored
// with u < v, sorted lexicographically, deduplicated. Immutable after
// construction; safe to share across threads.
class Graph {
 public:
  Graph() = default;
  // Normalizes the edge list; throws std::invalid_argument on out-of-range
  // endpoints or self-loops.
  Graph(int num_nodes, EdgeList edges);

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const EdgeList& edges() const { return edges_; }
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }
  bool has_edge(int u, int v) const;

  std::vector<int> degree_sequence_sorted() const;

  bool operator==(const Graph& other) const {
    return num_nodes_ == other.num_nodes_ && edges_ == other.edges_;
  }

 private:
  int num_nodes_ = 0;
  EdgeList edges_;
  std::vector<std::vector<int>> adj_;  // sorted neighbor lists
};

struct ComponentInfo {
  int count = 0;
  std::vector<int> component;  // per-node component id, dense in discovery order
};

// Empty graph reports zero components.
ComponentInfo connected_components(const Graph& g);
bool is_connected(const Graph& g);

struct RepairResult {
  Graph graph;
  int edges_added = 0;
};

// Joins components until connected: each step picks two distinct components
// uniformly, one uniform node in each, and adds that edge. Identity on
// already-connected input.
RepairResult ensure_connected(const Graph& g, Rng& rng);

struct BridgeReport {
  EdgeList bridges;  // sorted, u < v
  int count = 0;
};

// Low-link DFS, single pass. An edge is a bridge iff removing it increases
// the number of connected components.
BridgeReport find_bridges(const Graph& g);

// One degree-preserving swap: picks stored edges (a,b), (c,d) and proposes
// (a,d), (c,b). Rejects self-loops and existing edges; retries up to
// max_attempts times. Returns the swapped graph, or nullopt when every
// attempt was rejected. Requires |E| >= 2.
std::optional<Graph> double_edge_swap(const Graph& g, Rng& rng, int max_attempts);

// Single proposal for edge indices (i, j), exposed for tests.
std::optional<Graph> attempt_double_edge_swap(const Graph& g, int i, int j);

// Small named families.
Graph cycle_graph(int n);           // n >= 3
Graph path_graph(int n);            // n >= 1
Graph star_graph(int leaves);       // center 0, leaves >= 1, total leaves + 1 nodes
Graph complete_graph(int n);

}  // namespace ga

#endif  // GA_GRAPH_HPP
