#include "ga/symmetry_generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "ga/errors.hpp"

namespace ga {

namespace {

int gcd_int(int a, int b) { return b == 0 ? a : gcd_int(b, a % b); }

}  // namespace

Graph gen_cayley_cyclic(const CayleySpec& spec) {
  const int n = spec.n;
  if (n < 3) throw std::invalid_argument("gen_cayley_cyclic: need n >= 3");
  if (spec.generators.empty() || spec.generators.size() > 3)
    throw std::invalid_argument("gen_cayley_cyclic: need 1-3 generators");
  EdgeList edges;
  for (int g : spec.generators) {
    const int r = ((g % n) + n) % n;
    if (r == 0 || gcd_int(r, n) != 1)
      throw std::invalid_argument("gen_cayley_cyclic: generator " + std::to_string(g) +
                                  " not coprime to " + std::to_string(n));
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + r) % n);
  }
  return Graph(n, std::move(edges));
}

Graph bipartite_double_cover(const Graph& base) {
  const int n = base.num_nodes();
  EdgeList edges;
  edges.reserve(static_cast<size_t>(2 * base.num_edges()));
  for (const auto& [u, v] : base.edges()) {
    edges.emplace_back(u, n + v);  // (u,0)-(v,1)
    edges.emplace_back(v, n + u);  // (u,1)-(v,0)
  }
  return Graph(2 * n, std::move(edges));
}

Graph cartesian_product(const Graph& g1, const Graph& g2) {
  const int n1 = g1.num_nodes();
  const int n2 = g2.num_nodes();
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("cartesian_product: empty factor");
  if (static_cast<long long>(n1) * n2 > 400)
    throw std::invalid_argument("cartesian_product: product exceeds 400 nodes");
  EdgeList edges;
  edges.reserve(static_cast<size_t>(n2) * g1.num_edges() + static_cast<size_t>(n1) * g2.num_edges());
  for (const auto& [u1, u2] : g1.edges())
    for (int v = 0; v < n2; ++v) edges.emplace_back(u1 * n2 + v, u2 * n2 + v);
  for (const auto& [v1, v2] : g2.edges())
    for (int u = 0; u < n1; ++u) edges.emplace_back(u * n2 + v1, u * n2 + v2);
  return Graph(n1 * n2, std::move(edges));
}

Graph k_fold_cyclic_cover(const CoverSpec& spec) {
  const int k = spec.k;
  if (k < 2 || k > 5) throw std::invalid_argument("k_fold_cyclic_cover: k must be in [2, 5]");
  const int n = spec.base.num_nodes();
  EdgeList edges;
  edges.reserve(static_cast<size_t>(2 * k) * spec.base.num_edges());
  for (const auto& [u, v] : spec.base.edges()) {
    for (int i = 0; i < k; ++i) {
      const int up = (i + 1) % k;
      edges.emplace_back(i * n + u, up * n + v);
      edges.emplace_back(i * n + v, up * n + u);
    }
  }
  return Graph(k * n, std::move(edges));
}

std::vector<int> double_cover_swap_permutation(int base_nodes) {
  std::vector<int> phi(static_cast<size_t>(2 * base_nodes));
  for (int v = 0; v < base_nodes; ++v) {
    phi[static_cast<size_t>(v)] = base_nodes + v;
    phi[static_cast<size_t>(base_nodes + v)] = v;
  }
  return phi;
}

std::vector<int> cyclic_cover_rotation_permutation(int base_nodes, int k) {
  std::vector<int> phi(static_cast<size_t>(k) * base_nodes);
  for (int i = 0; i < k; ++i)
    for (int v = 0; v < base_nodes; ++v)
      phi[static_cast<size_t>(i * base_nodes + v)] = ((i + 1) % k) * base_nodes + v;
  return phi;
}

std::optional<Graph> gen_perturbed_asymmetric(const Graph& start, Rng& rng,
                                              const AutomorphismSearchOptions& opts) {
  Graph current = start;
  for (int attempt = 0; attempt < 20; ++attempt) {
    auto swapped = double_edge_swap(current, rng, 100);
    if (!swapped) continue;
    if (!is_connected(*swapped)) continue;  // reject the swap, keep the last good graph
    current = std::move(*swapped);
    if (!find_nontrivial_automorphism(current, opts).symmetric) return current;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Base-graph corpus

Graph read_edge_list(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open edge list: " + file.string());
  std::string line;
  int line_no = 0;
  std::vector<std::pair<long long, long long>> raw;
  std::map<long long, int> ids;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    long long u, v;
    if (!(ss >> u >> v) || u < 0 || v < 0) {
      throw std::runtime_error(file.string() + ":" + std::to_string(line_no) +
                               ": malformed edge line");
    }
    std::string rest;
    if (ss >> rest && !rest.empty() && rest[0] == '#') {
      // trailing comment; fine
    }
    if (u != v) {
      raw.emplace_back(u, v);
      ids.emplace(u, 0);
      ids.emplace(v, 0);
    }
  }
  if (raw.empty()) throw std::runtime_error("empty edge-list source: " + file.string());
  int next = 0;
  for (auto& [id, dense] : ids) dense = next++;
  EdgeList edges;
  edges.reserve(raw.size());
  for (const auto& [u, v] : raw) edges.emplace_back(ids[u], ids[v]);
  return Graph(next, std::move(edges));
}

namespace {

Graph induced_subgraph(const Graph& g, const std::vector<int>& nodes) {
  std::vector<int> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> index(static_cast<size_t>(g.num_nodes()), -1);
  for (size_t i = 0; i < sorted.size(); ++i) index[static_cast<size_t>(sorted[i])] = static_cast<int>(i);
  EdgeList edges;
  for (int u : sorted)
    for (int v : g.neighbors(u))
      if (u < v && index[static_cast<size_t>(v)] != -1)
        edges.emplace_back(index[static_cast<size_t>(u)], index[static_cast<size_t>(v)]);
  return Graph(static_cast<int>(sorted.size()), std::move(edges));
}

std::vector<int> bfs_sample(const Graph& g, int root, int target) {
  std::vector<int> order{root};
  std::vector<char> seen(static_cast<size_t>(g.num_nodes()), 0);
  seen[static_cast<size_t>(root)] = 1;
  for (size_t head = 0; head < order.size() && static_cast<int>(order.size()) < target; ++head) {
    for (int v : g.neighbors(order[head])) {
      if (!seen[static_cast<size_t>(v)]) {
        seen[static_cast<size_t>(v)] = 1;
        order.push_back(v);
        if (static_cast<int>(order.size()) == target) break;
      }
    }
  }
  return order;
}

std::vector<int> walk_sample(const Graph& g, int root, int target, Rng& rng) {
  constexpr double kRestart = 0.2;
  std::vector<int> order{root};
  std::vector<char> seen(static_cast<size_t>(g.num_nodes()), 0);
  seen[static_cast<size_t>(root)] = 1;
  int cur = root;
  const long long cap = 500LL * target;
  for (long long step = 0; step < cap && static_cast<int>(order.size()) < target; ++step) {
    if (rng.bernoulli(kRestart)) {
      cur = root;
      continue;
    }
    const auto& nbrs = g.neighbors(cur);
    if (nbrs.empty()) break;
    cur = nbrs[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(nbrs.size()) - 1))];
    if (!seen[static_cast<size_t>(cur)]) {
      seen[static_cast<size_t>(cur)] = 1;
      order.push_back(cur);
    }
  }
  return order;
}

std::vector<int> layered_sample(const Graph& g, int root, int target, Rng& rng) {
  constexpr int kFanOut = 5;
  constexpr int kDepth = 3;
  std::vector<int> order{root};
  std::vector<char> seen(static_cast<size_t>(g.num_nodes()), 0);
  seen[static_cast<size_t>(root)] = 1;
  std::vector<int> frontier{root};
  for (int d = 0; d < kDepth && static_cast<int>(order.size()) < target; ++d) {
    std::vector<int> next;
    for (int u : frontier) {
      const auto& nbrs = g.neighbors(u);
      const int deg = static_cast<int>(nbrs.size());
      const int take = std::min(kFanOut, deg);
      for (int idx : rng.sample_without_replacement(deg, take)) {
        const int v = nbrs[static_cast<size_t>(idx)];
        if (!seen[static_cast<size_t>(v)]) {
          seen[static_cast<size_t>(v)] = 1;
          order.push_back(v);
          next.push_back(v);
          if (static_cast<int>(order.size()) == target) return order;
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return order;
}

Graph er_connected(int n, double p, Rng& rng) {
  EdgeList edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
  return ensure_connected(Graph(n, std::move(edges)), rng).graph;
}

}  // namespace

BaseGraphCorpus BaseGraphCorpus::from_edge_lists(const std::vector<std::filesystem::path>& files,
                                                 Rng& rng) {
  if (files.empty()) throw std::runtime_error("BaseGraphCorpus: no source files");
  std::vector<Graph> sources;
  for (const auto& f : files) sources.push_back(read_edge_list(f));

  BaseGraphCorpus corpus;
  corpus.synthetic_ = false;
  corpus.buckets_.assign(kMaxSize - kMinSize + 1, {});
  for (int size = kMinSize; size <= kMaxSize; ++size) {
    auto& bucket = corpus.buckets_[static_cast<size_t>(size - kMinSize)];
    for (int slot = 0; slot < kGraphsPerSize; ++slot) {
      const Graph& src = sources[static_cast<size_t>(slot % sources.size())];
      if (src.num_nodes() < size) continue;
      for (int attempt = 0; attempt < 8; ++attempt) {
        const int root = rng.uniform_int(0, src.num_nodes() - 1);
        std::vector<int> nodes;
        switch (slot % 3) {
          case 0: nodes = bfs_sample(src, root, size); break;
          case 1: nodes = walk_sample(src, root, size, rng); break;
          default: nodes = layered_sample(src, root, size, rng); break;
        }
        if (static_cast<int>(nodes.size()) != size) continue;
        Graph sub = ensure_connected(induced_subgraph(src, nodes), rng).graph;
        bucket.push_back(std::move(sub));
        break;
      }
    }
  }
  if (corpus.total_graphs() == 0)
    throw std::runtime_error("BaseGraphCorpus: sources yielded no subgraphs");
  return corpus;
}

BaseGraphCorpus BaseGraphCorpus::synthetic_fallback(Rng& rng) {
  BaseGraphCorpus corpus;
  corpus.synthetic_ = true;
  corpus.buckets_.assign(kMaxSize - kMinSize + 1, {});
  for (int size = kMinSize; size <= kMaxSize; ++size) {
    auto& bucket = corpus.buckets_[static_cast<size_t>(size - kMinSize)];
    const double p = std::min(0.9, 1.3 * std::log(static_cast<double>(size)) / size);
    for (int i = 0; i < kGraphsPerSize; ++i) bucket.push_back(er_connected(size, p, rng));
  }
  return corpus;
}

const Graph& BaseGraphCorpus::sample(int target_size, Rng& rng) const {
  const int lo = kMinSize, hi = kMaxSize;
  const int want = std::clamp(target_size, lo, hi);
  for (int delta = 0; delta <= hi - lo; ++delta) {
    for (int sign = 0; sign < 2; ++sign) {
      const int size = sign == 0 ? want + delta : want - delta;
      if (size < lo || size > hi) continue;
      const auto& bucket = buckets_[static_cast<size_t>(size - lo)];
      if (!bucket.empty())
        return bucket[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(bucket.size()) - 1))];
      if (delta == 0) break;
    }
  }
  throw std::runtime_error("BaseGraphCorpus: all buckets empty");
}

const std::vector<Graph>& BaseGraphCorpus::bucket(int size) const {
  return buckets_[static_cast<size_t>(size - kMinSize)];
}

int BaseGraphCorpus::total_graphs() const {
  int total = 0;
  for (const auto& b : buckets_) total += static_cast<int>(b.size());
  return total;
}

// ---------------------------------------------------------------------------
// Sample assembly

const char* symmetry_method_name(SymmetryMethod m) {
  switch (m) {
    case SymmetryMethod::cayley: return "cayley";
    case SymmetryMethod::double_cover: return "double_cover";
    case SymmetryMethod::cartesian_synthetic: return "cartesian_synthetic";
    case SymmetryMethod::cartesian_real: return "cartesian_real";
    case SymmetryMethod::cyclic_cover: return "cyclic_cover";
    case SymmetryMethod::perturbed: return "perturbed";
  }
  return "unknown";
}

namespace {

std::vector<int> coprime_rules(int n) {
  // One generator per connection rule: g and n-g are the same rule.
  std::vector<int> out;
  for (int g = 1; 2 * g <= n; ++g)
    if (gcd_int(g, n) == 1) out.push_back(g);
  return out;
}

Graph random_cover_base(int b, Rng& rng, nlohmann::json& meta, const BaseGraphCorpus& corpus) {
  const int kind = rng.uniform_int(0, 3);
  switch (kind) {
    case 0: {  // plain random
      meta["base_kind"] = "random";
      return er_connected(b, rng.uniform(0.15, 0.3), rng);
    }
    case 1: {  // community base
      meta["base_kind"] = "community";
      int groups = rng.uniform_int(2, 4);
      while (b / groups < 2) --groups;
      const double p_in = rng.uniform(0.3, 0.7);
      const double p_out = rng.uniform(0.05, 0.15);
      EdgeList edges;
      const int base_size = b / groups;
      std::vector<int> offsets;
      for (int g = 0, at = 0; g <= groups; ++g) {
        offsets.push_back(at);
        at += base_size + (g < b % groups ? 1 : 0);
      }
      offsets.back() = b;
      for (int u = 0; u < b; ++u) {
        int gu = 0;
        while (offsets[static_cast<size_t>(gu + 1)] <= u) ++gu;
        for (int v = u + 1; v < b; ++v) {
          int gv = 0;
          while (offsets[static_cast<size_t>(gv + 1)] <= v) ++gv;
          if (rng.bernoulli(gu == gv ? p_in : p_out)) edges.emplace_back(u, v);
        }
      }
      return ensure_connected(Graph(b, std::move(edges)), rng).graph;
    }
    case 2: {  // bottleneck base
      meta["base_kind"] = "bottleneck";
      int blocks = rng.uniform_int(2, 3);
      while (b / blocks < 2) --blocks;
      const double p_in = rng.uniform(0.3, 0.6);
      EdgeList edges;
      const int per = b / blocks;
      std::vector<int> offsets;
      for (int g = 0, at = 0; g <= blocks; ++g) {
        offsets.push_back(at);
        at += per + (g < b % blocks ? 1 : 0);
      }
      offsets.back() = b;
      for (int g = 0; g < blocks; ++g)
        for (int u = offsets[static_cast<size_t>(g)]; u < offsets[static_cast<size_t>(g) + 1]; ++u)
          for (int v = u + 1; v < offsets[static_cast<size_t>(g) + 1]; ++v)
            if (rng.bernoulli(p_in)) edges.emplace_back(u, v);
      for (int g = 0; g + 1 < blocks; ++g) {
        const int w = rng.uniform_int(1, 3);
        for (int t = 0; t < w; ++t) {
          const int u = rng.uniform_int(offsets[static_cast<size_t>(g)],
                                        offsets[static_cast<size_t>(g) + 1] - 1);
          const int v = rng.uniform_int(offsets[static_cast<size_t>(g) + 1],
                                        offsets[static_cast<size_t>(g) + 2] - 1);
          edges.emplace_back(u, v);
        }
      }
      return ensure_connected(Graph(b, std::move(edges)), rng).graph;
    }
    default: {
      meta["base_kind"] = "real";
      return corpus.sample(b, rng);
    }
  }
}

// Symmetric factor for products: cycle, path, or star.
Graph synthetic_factor(int kind, int size) {
  switch (kind) {
    case 0: return cycle_graph(size);
    case 1: return path_graph(size);
    default: return star_graph(size - 1);  // size nodes total
  }
}

const char* factor_name(int kind) {
  return kind == 0 ? "cycle" : (kind == 1 ? "path" : "star");
}

struct Candidate {
  Graph graph;
  nlohmann::json meta;
};

std::optional<Candidate> symmetric_candidate(SymmetryMethod method, int lo, int hi,
                                             const BaseGraphCorpus& corpus, Rng& rng,
                                             const AutomorphismSearchOptions& opts) {
  nlohmann::json meta;
  meta["method"] = symmetry_method_name(method);
  switch (method) {
    case SymmetryMethod::cayley: {
      const int n = rng.uniform_int(lo, hi);
      std::vector<int> rules = coprime_rules(n);
      if (rules.empty()) return std::nullopt;
      const int want = std::min(rng.uniform_int(1, 3), static_cast<int>(rules.size()));
      std::vector<int> gens;
      for (int idx : rng.sample_without_replacement(static_cast<int>(rules.size()), want))
        gens.push_back(rules[static_cast<size_t>(idx)]);
      std::sort(gens.begin(), gens.end());
      meta["n"] = n;
      meta["generators"] = gens;
      return Candidate{gen_cayley_cyclic({n, gens}), std::move(meta)};
    }
    case SymmetryMethod::double_cover: {
      const int b_lo = (lo + 1) / 2, b_hi = hi / 2;
      if (b_lo > b_hi || b_hi < 2) return std::nullopt;
      const int b = rng.uniform_int(std::max(2, b_lo), b_hi);
      Graph base = random_cover_base(b, rng, meta, corpus);
      meta["base_n"] = base.num_nodes();
      return Candidate{bipartite_double_cover(base), std::move(meta)};
    }
    case SymmetryMethod::cartesian_synthetic: {
      // C_a x P_b, C_a x C_b, or P_a x S_b sized into [lo, hi].
      struct Option {
        int kind1, kind2, a, b;
      };
      std::vector<Option> options;
      for (int a = 2; a <= hi; ++a) {
        for (int b = 2; b <= hi; ++b) {
          const long long nodes = static_cast<long long>(a) * b;
          if (nodes < lo || nodes > hi) continue;
          if (a >= 3) options.push_back({0, 1, a, b});             // cycle x path
          if (a >= 3 && b >= 3 && a <= b) options.push_back({0, 0, a, b});  // cycle x cycle
          if (b >= 3) options.push_back({1, 2, a, b});             // path x star
        }
      }
      if (options.empty()) return std::nullopt;
      const Option& o = options[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(options.size()) - 1))];
      meta["factor1"] = {{"kind", factor_name(o.kind1)}, {"n", o.a}};
      meta["factor2"] = {{"kind", factor_name(o.kind2)}, {"n", o.b}};
      return Candidate{cartesian_product(synthetic_factor(o.kind1, o.a), synthetic_factor(o.kind2, o.b)),
                       std::move(meta)};
    }
    case SymmetryMethod::cartesian_real: {
      // Real base paired with a small symmetric factor; the symmetric factor
      // makes the product symmetric, verification confirms it.
      std::vector<std::pair<int, int>> feasible;  // (factor size, real size)
      for (int fs = 2; fs <= 12; ++fs) {
        const int r_lo = std::max(BaseGraphCorpus::kMinSize, (lo + fs - 1) / fs);
        const int r_hi = std::min(BaseGraphCorpus::kMaxSize, hi / fs);
        if (r_lo <= r_hi) feasible.emplace_back(fs, rng.uniform_int(r_lo, r_hi));
      }
      if (feasible.empty()) return std::nullopt;
      const auto [fs, rs] = feasible[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(feasible.size()) - 1))];
      const int kind = fs >= 3 ? rng.uniform_int(0, 2) : 1;
      const Graph factor = synthetic_factor(kind, fs);
      const Graph& real = corpus.sample(rs, rng);
      meta["factor"] = {{"kind", factor_name(kind)}, {"n", fs}};
      meta["real_n"] = real.num_nodes();
      const bool real_first = rng.bernoulli(0.5);
      Graph product = real_first ? cartesian_product(real, factor) : cartesian_product(factor, real);
      return Candidate{std::move(product), std::move(meta)};
    }
    case SymmetryMethod::cyclic_cover: {
      std::vector<std::pair<int, int>> feasible;  // (k, base size)
      for (int k = 2; k <= 5; ++k) {
        const int b_lo = std::max(BaseGraphCorpus::kMinSize, (lo + k - 1) / k);
        const int b_hi = std::min(BaseGraphCorpus::kMaxSize, hi / k);
        if (b_lo <= b_hi) feasible.emplace_back(k, rng.uniform_int(b_lo, b_hi));
      }
      if (feasible.empty()) return std::nullopt;
      const auto [k, b] = feasible[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(feasible.size()) - 1))];
      const Graph& base = corpus.sample(b, rng);
      meta["k"] = k;
      meta["base_n"] = base.num_nodes();
      return Candidate{k_fold_cyclic_cover({base, k}), std::move(meta)};
    }
    default: return std::nullopt;
  }
  (void)opts;
}

std::optional<Candidate> asymmetric_candidate(int lo, int hi, const BaseGraphCorpus& corpus,
                                              Rng& rng, const AutomorphismSearchOptions& opts) {
  if (rng.bernoulli(0.5)) {
    // Perturbed: break a provably symmetric start with degree-preserving swaps.
    static const SymmetryMethod kStarts[] = {
        SymmetryMethod::cayley, SymmetryMethod::double_cover,
        SymmetryMethod::cartesian_synthetic, SymmetryMethod::cyclic_cover};
    const SymmetryMethod start_method = kStarts[rng.uniform_int(0, 3)];
    auto start = symmetric_candidate(start_method, lo, hi, corpus, rng, opts);
    if (!start || !is_connected(start->graph)) return std::nullopt;
    auto perturbed = gen_perturbed_asymmetric(start->graph, rng, opts);
    if (!perturbed) return std::nullopt;
    nlohmann::json meta;
    meta["method"] = symmetry_method_name(SymmetryMethod::perturbed);
    meta["start_method"] = symmetry_method_name(start_method);
    return Candidate{std::move(*perturbed), std::move(meta)};
  }
  // Product of two real graphs; irregularity usually breaks symmetry.
  std::vector<std::pair<int, int>> feasible;
  for (int s1 = BaseGraphCorpus::kMinSize; s1 <= BaseGraphCorpus::kMaxSize; ++s1) {
    const int s2_lo = std::max(BaseGraphCorpus::kMinSize, (lo + s1 - 1) / s1);
    const int s2_hi = std::min(BaseGraphCorpus::kMaxSize, hi / s1);
    if (s2_lo <= s2_hi) feasible.emplace_back(s1, rng.uniform_int(s2_lo, s2_hi));
  }
  if (feasible.empty()) return std::nullopt;
  const auto [s1, s2] = feasible[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(feasible.size()) - 1))];
  const Graph& a = corpus.sample(s1, rng);
  const Graph& b = corpus.sample(s2, rng);
  nlohmann::json meta;
  meta["method"] = symmetry_method_name(SymmetryMethod::cartesian_real);
  meta["factor1_n"] = a.num_nodes();
  meta["factor2_n"] = b.num_nodes();
  return Candidate{cartesian_product(a, b), std::move(meta)};
}

}  // namespace

SymmetrySample gen_symmetry_sample(bool want_symmetric, int lo, int hi,
                                   const BaseGraphCorpus& corpus, Rng& rng,
                                   const AutomorphismSearchOptions& opts) {
  constexpr int kMaxAttempts = 300;
  static const SymmetryMethod kSymmetric[] = {
      SymmetryMethod::cayley, SymmetryMethod::double_cover, SymmetryMethod::cartesian_synthetic,
      SymmetryMethod::cartesian_real, SymmetryMethod::cyclic_cover};

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    try {
      std::optional<Candidate> cand =
          want_symmetric
              ? symmetric_candidate(kSymmetric[rng.uniform_int(0, 4)], lo, hi, corpus, rng, opts)
              : asymmetric_candidate(lo, hi, corpus, rng, opts);
      if (!cand) continue;
      const int n = cand->graph.num_nodes();
      if (n < lo || n > hi) continue;
      if (!is_connected(cand->graph)) continue;  // e.g. bipartite-base double cover

      // Labels are never trusted from construction alone.
      SymmetryVerdict verdict = find_nontrivial_automorphism(cand->graph, opts);
      if (verdict.symmetric != want_symmetric) continue;

      SymmetrySample sample;
      sample.graph = std::move(cand->graph);
      sample.symmetric = verdict.symmetric;
      sample.meta = std::move(cand->meta);
      sample.meta["verified"] = true;
      if (verdict.symmetric) {
        sample.witness = verdict.witness->mapping;
        sample.meta["witness"] = sample.witness;
      }
      return sample;
    } catch (const UndecidedError&) {
      continue;  // regenerate rather than mislabel
    }
  }
  throw GenerationError("gen_symmetry_sample: retry budget exhausted for " +
                        std::string(want_symmetric ? "symmetric" : "asymmetric") + " sample in [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::vector<SymmetrySample> assemble_symmetry_pool(int count, int lo, int hi,
                                                   const BaseGraphCorpus& corpus, Rng& rng) {
  std::vector<SymmetrySample> pool;
  pool.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    pool.push_back(gen_symmetry_sample(i % 2 == 0, lo, hi, corpus, rng));
  return pool;
}

}  // namespace ga
