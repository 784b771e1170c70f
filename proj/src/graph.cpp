#include "ga/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ga {

Graph::Graph(int num_nodes, EdgeList edges) : num_nodes_(num_nodes) {
  if (num_nodes < 0) throw std::invalid_argument("Graph: negative node count");
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("Graph: self-loop at node " + std::to_string(u));
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes)
      throw std::invalid_argument("Graph: endpoint out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  adj_.assign(static_cast<size_t>(num_nodes), {});
  for (const auto& [u, v] : edges_) {
    adj_[static_cast<size_t>(u)].push_back(v);
    adj_[static_cast<size_t>(v)].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= num_nodes_ || v >= num_nodes_ || u == v) return false;
  const auto& list = adj_[static_cast<size_t>(u)];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<int> Graph::degree_sequence_sorted() const {
  std::vector<int> degs(static_cast<size_t>(num_nodes_));
  for (int v = 0; v < num_nodes_; ++v) degs[static_cast<size_t>(v)] = degree(v);
  std::sort(degs.begin(), degs.end());
  return degs;
}

ComponentInfo connected_components(const Graph& g) {
  const int n = g.num_nodes();
  ComponentInfo info;
  info.component.assign(static_cast<size_t>(n), -1);
  std::vector<int> stack;
  for (int root = 0; root < n; ++root) {
    if (info.component[static_cast<size_t>(root)] != -1) continue;
    const int id = info.count++;
    stack.push_back(root);
    info.component[static_cast<size_t>(root)] = id;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : g.neighbors(u)) {
        if (info.component[static_cast<size_t>(v)] == -1) {
          info.component[static_cast<size_t>(v)] = id;
          stack.push_back(v);
        }
      }
    }
  }
  return info;
}

bool is_connected(const Graph& g) {
  if (g.num_nodes() == 0) return false;
  return connected_components(g).count == 1;
}

RepairResult ensure_connected(const Graph& g, Rng& rng) {
  ComponentInfo info = connected_components(g);
  if (info.count <= 1) return {g, 0};

  std::vector<std::vector<int>> comps(static_cast<size_t>(info.count));
  for (int v = 0; v < g.num_nodes(); ++v)
    comps[static_cast<size_t>(info.component[static_cast<size_t>(v)])].push_back(v);

  EdgeList edges = g.edges();
  int added = 0;
  while (comps.size() > 1) {
    int i = rng.uniform_int(0, static_cast<int>(comps.size()) - 1);
    int j = rng.uniform_int(0, static_cast<int>(comps.size()) - 2);
    if (j >= i) ++j;
    if (i > j) std::swap(i, j);
    auto& a = comps[static_cast<size_t>(i)];
    auto& b = comps[static_cast<size_t>(j)];
    int u = a[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(a.size()) - 1))];
    int v = b[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(b.size()) - 1))];
    edges.emplace_back(std::min(u, v), std::max(u, v));
    ++added;
    a.insert(a.end(), b.begin(), b.end());
    comps.erase(comps.begin() + j);
  }
  return {Graph(g.num_nodes(), std::move(edges)), added};
}

BridgeReport find_bridges(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<int> disc(static_cast<size_t>(n), -1);
  std::vector<int> low(static_cast<size_t>(n), 0);
  BridgeReport report;
  int tick = 0;

  // Iterative DFS; frame tracks the neighbor cursor and the parent node.
  struct Frame {
    int node;
    int parent;
    size_t next;
    bool parent_skipped;
  };
  std::vector<Frame> stack;
  for (int root = 0; root < n; ++root) {
    if (disc[static_cast<size_t>(root)] != -1) continue;
    stack.push_back({root, -1, 0, false});
    disc[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = tick++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nbrs = g.neighbors(f.node);
      if (f.next < nbrs.size()) {
        int v = nbrs[f.next++];
        if (v == f.parent && !f.parent_skipped) {
          // Simple graph: at most one edge back to the parent.
          f.parent_skipped = true;
          continue;
        }
        if (disc[static_cast<size_t>(v)] == -1) {
          disc[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = tick++;
          stack.push_back({v, f.node, 0, false});
        } else {
          low[static_cast<size_t>(f.node)] =
              std::min(low[static_cast<size_t>(f.node)], disc[static_cast<size_t>(v)]);
        }
      } else {
        int u = f.node, p = f.parent;
        stack.pop_back();
        if (p != -1) {
          low[static_cast<size_t>(p)] = std::min(low[static_cast<size_t>(p)], low[static_cast<size_t>(u)]);
          if (low[static_cast<size_t>(u)] > disc[static_cast<size_t>(p)])
            report.bridges.emplace_back(std::min(p, u), std::max(p, u));
        }
      }
    }
  }
  std::sort(report.bridges.begin(), report.bridges.end());
  report.count = static_cast<int>(report.bridges.size());
  return report;
}

std::optional<Graph> attempt_double_edge_swap(const Graph& g, int i, int j) {
  const auto [a, b] = g.edges()[static_cast<size_t>(i)];
  const auto [c, d] = g.edges()[static_cast<size_t>(j)];
  // Candidate replacement edges (a,d) and (c,b).
  if (a == d || c == b) return std::nullopt;
  if (g.has_edge(a, d) || g.has_edge(c, b)) return std::nullopt;
  EdgeList edges = g.edges();
  edges[static_cast<size_t>(i)] = {std::min(a, d), std::max(a, d)};
  edges[static_cast<size_t>(j)] = {std::min(c, b), std::max(c, b)};
  return Graph(g.num_nodes(), std::move(edges));
}

std::optional<Graph> double_edge_swap(const Graph& g, Rng& rng, int max_attempts) {
  const int m = g.num_edges();
  if (m < 2) throw std::invalid_argument("double_edge_swap: need at least 2 edges");
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    int i = rng.uniform_int(0, m - 1);
    int j = rng.uniform_int(0, m - 2);
    if (j >= i) ++j;
    if (auto swapped = attempt_double_edge_swap(g, i, j)) return swapped;
  }
  return std::nullopt;
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
  EdgeList edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

Graph path_graph(int n) {
  if (n < 1) throw std::invalid_argument("path_graph: need n >= 1");
  EdgeList edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph star_graph(int leaves) {
  if (leaves < 1) throw std::invalid_argument("star_graph: need >= 1 leaf");
  EdgeList edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, std::move(edges));
}

Graph complete_graph(int n) {
  EdgeList edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

}  // namespace ga
