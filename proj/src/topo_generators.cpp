#include "ga/topo_generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

#include "ga/kernels.hpp"

namespace ga {

const char* topo_family_name(TopoFamily f) {
  switch (f) {
    case TopoFamily::cyclic: return "cyclic";
    case TopoFamily::geometric: return "geometric";
    case TopoFamily::community: return "community";
    case TopoFamily::hierarchical: return "hierarchical";
    case TopoFamily::bottleneck: return "bottleneck";
    case TopoFamily::multicore: return "multicore";
  }
  return "unknown";
}

TopoFamily topo_family_from_name(const std::string& name) {
  for (TopoFamily f : {TopoFamily::cyclic, TopoFamily::geometric, TopoFamily::community,
                       TopoFamily::hierarchical, TopoFamily::bottleneck, TopoFamily::multicore})
    if (name == topo_family_name(f)) return f;
  throw std::invalid_argument("unknown topology family: " + name);
}

namespace detail {

EdgeList proximity_edges(const std::vector<double>& xs, const std::vector<double>& ys,
                         double radius) {
  const int n = static_cast<int>(xs.size());
  const double r2 = radius * radius;
  EdgeList edges;
  std::vector<uint8_t> mask(static_cast<size_t>(n));
  const auto& k = kernels::active();
  for (int i = 0; i < n; ++i) {
    k.dist2_mask(xs[static_cast<size_t>(i)], ys[static_cast<size_t>(i)], r2, xs.data(), ys.data(),
                 n, mask.data());
    for (int j = i + 1; j < n; ++j)
      if (mask[static_cast<size_t>(j)]) edges.emplace_back(i, j);
  }
  return edges;
}

}  // namespace detail

namespace {

using detail::proximity_edges;

// Near-equal partition: floor division, remainder spread over the first
// groups. Returns group sizes.
std::vector<int> near_equal_sizes(int n, int groups) {
  std::vector<int> sizes(static_cast<size_t>(groups), n / groups);
  for (int i = 0; i < n % groups; ++i) ++sizes[static_cast<size_t>(i)];
  return sizes;
}

// Contiguous node ranges per group given sizes; returns start offsets.
std::vector<int> group_offsets(const std::vector<int>& sizes) {
  std::vector<int> offsets(sizes.size() + 1, 0);
  for (size_t i = 0; i < sizes.size(); ++i) offsets[i + 1] = offsets[i] + sizes[i];
  return offsets;
}

void bernoulli_block(EdgeList& edges, int a_begin, int a_end, int b_begin, int b_end, double p,
                     Rng& rng) {
  if (a_begin == b_begin) {
    for (int u = a_begin; u < a_end; ++u)
      for (int v = u + 1; v < a_end; ++v)
        if (rng.bernoulli(p)) edges.emplace_back(u, v);
  } else {
    for (int u = a_begin; u < a_end; ++u)
      for (int v = b_begin; v < b_end; ++v)
        if (rng.bernoulli(p)) edges.emplace_back(u, v);
  }
}

GenResult finish(const char* family, int n, EdgeList edges, nlohmann::json meta, Rng& rng) {
  RepairResult repaired = ensure_connected(Graph(n, std::move(edges)), rng);
  meta["family"] = family;
  meta["n"] = n;
  meta["repair_edges"] = repaired.edges_added;
  return {std::move(repaired.graph), std::move(meta)};
}

}  // namespace

namespace detail {

GenResult annular_geometric(int n, double r_inner, double r_outer, double r_conn, Rng& rng) {
  std::vector<double> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n));
  const double lo2 = r_inner * r_inner;
  const double hi2 = r_outer * r_outer;
  for (int i = 0; i < n; ++i) {
    // Rejection from the bounding square keeps the density uniform.
    double x, y, d2;
    do {
      x = rng.uniform(-r_outer, r_outer);
      y = rng.uniform(-r_outer, r_outer);
      d2 = x * x + y * y;
    } while (d2 < lo2 || d2 > hi2);
    xs[static_cast<size_t>(i)] = x;
    ys[static_cast<size_t>(i)] = y;
  }
  nlohmann::json meta{{"r_inner", r_inner}, {"r_outer", r_outer}, {"r_conn", r_conn}};
  return finish("cyclic", n, proximity_edges(xs, ys, r_conn), std::move(meta), rng);
}

GenResult community(int n, int groups, double p_in, double p_out, Rng& rng) {
  const std::vector<int> sizes = near_equal_sizes(n, groups);
  const std::vector<int> offsets = group_offsets(sizes);
  EdgeList edges;
  for (int a = 0; a < groups; ++a)
    for (int b = a; b < groups; ++b)
      bernoulli_block(edges, offsets[static_cast<size_t>(a)], offsets[static_cast<size_t>(a) + 1],
                      offsets[static_cast<size_t>(b)], offsets[static_cast<size_t>(b) + 1],
                      a == b ? p_in : p_out, rng);
  nlohmann::json meta{{"groups", groups}, {"p_in", p_in}, {"p_out", p_out}};
  return finish("community", n, std::move(edges), std::move(meta), rng);
}

GenResult hierarchical(int n, int levels, Rng& rng) {
  // Level 0 is the top; sizes shrink by ~0.4 per level going up.
  std::vector<double> weight(static_cast<size_t>(levels));
  double total = 0.0;
  for (int l = 0; l < levels; ++l) {
    weight[static_cast<size_t>(l)] = std::pow(0.4, levels - 1 - l);
    total += weight[static_cast<size_t>(l)];
  }
  std::vector<int> sizes(static_cast<size_t>(levels));
  int assigned = 0;
  for (int l = 0; l < levels; ++l) {
    sizes[static_cast<size_t>(l)] =
        std::max(1, static_cast<int>(std::floor(n * weight[static_cast<size_t>(l)] / total)));
    assigned += sizes[static_cast<size_t>(l)];
  }
  sizes[static_cast<size_t>(levels) - 1] += n - assigned;  // residue to the bottom
  while (sizes[static_cast<size_t>(levels) - 1] <= sizes[0] && levels >= 2) {
    // Keep the bottom strictly larger than the top.
    --sizes[0];
    ++sizes[static_cast<size_t>(levels) - 1];
    if (sizes[0] < 1) throw std::invalid_argument("gen_hierarchical: n too small for levels");
  }
  const std::vector<int> offsets = group_offsets(sizes);

  EdgeList edges;
  for (int l = 0; l < levels; ++l) {
    const double p = 0.7 * static_cast<double>(levels - l) / levels;
    bernoulli_block(edges, offsets[static_cast<size_t>(l)], offsets[static_cast<size_t>(l) + 1],
                    offsets[static_cast<size_t>(l)], offsets[static_cast<size_t>(l) + 1], p, rng);
  }
  for (int l = 1; l < levels; ++l) {
    const int up_begin = offsets[static_cast<size_t>(l) - 1];
    const int up_size = sizes[static_cast<size_t>(l) - 1];
    for (int v = offsets[static_cast<size_t>(l)]; v < offsets[static_cast<size_t>(l) + 1]; ++v) {
      const int links = rng.uniform_int(1, std::min(3, up_size));
      for (int idx : rng.sample_without_replacement(up_size, links))
        edges.emplace_back(up_begin + idx, v);
    }
  }
  nlohmann::json meta{{"levels", levels}, {"level_sizes", sizes}};
  return finish("hierarchical", n, std::move(edges), std::move(meta), rng);
}

}  // namespace detail

GenResult gen_annular_geometric(int n, Rng& rng) {
  if (n < 4) throw std::invalid_argument("gen_annular_geometric: need n >= 4");
  const double r_inner = rng.uniform(0.7, 1.2);
  const double r_outer = r_inner + rng.uniform(0.05, 0.3);
  const double r_conn = rng.uniform(0.5, 0.8);
  return detail::annular_geometric(n, r_inner, r_outer, r_conn, rng);
}

GenResult gen_random_geometric(int n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("gen_random_geometric: need n >= 2");
  const double r_conn = rng.uniform(0.15, 0.25);
  std::vector<double> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<size_t>(i)] = rng.uniform();
    ys[static_cast<size_t>(i)] = rng.uniform();
  }
  nlohmann::json meta{{"r_conn", r_conn}};
  return finish("geometric", n, proximity_edges(xs, ys, r_conn), std::move(meta), rng);
}

GenResult gen_community(int n, Rng& rng) {
  if (n < 9) throw std::invalid_argument("gen_community: need n >= 9");
  int groups = rng.uniform_int(3, 5);
  while (n / groups < 3) --groups;
  const double p_in = rng.uniform(0.6, 0.8);
  const double p_out = rng.uniform(0.01, 0.05);
  return detail::community(n, groups, p_in, p_out, rng);
}

GenResult gen_hierarchical(int n, Rng& rng) {
  if (n < 6) throw std::invalid_argument("gen_hierarchical: need n >= 6");
  const int levels = rng.uniform_int(2, 4);
  return detail::hierarchical(n, levels, rng);
}

GenResult gen_bottleneck(int n, Rng& rng, int max_width) {
  if (n < 8) throw std::invalid_argument("gen_bottleneck: need n >= 8");
  int blocks = rng.uniform_int(2, 4);
  while (n / blocks < 2) --blocks;
  const double p_in = rng.uniform(0.4, 0.6);
  const std::vector<int> sizes = near_equal_sizes(n, blocks);
  const std::vector<int> offsets = group_offsets(sizes);

  EdgeList edges;
  for (int b = 0; b < blocks; ++b)
    bernoulli_block(edges, offsets[static_cast<size_t>(b)], offsets[static_cast<size_t>(b) + 1],
                    offsets[static_cast<size_t>(b)], offsets[static_cast<size_t>(b) + 1], p_in,
                    rng);

  // Adjacent blocks joined through a sampled number of distinct edges.
  std::vector<int> widths;
  for (int b = 0; b + 1 < blocks; ++b) {
    const int w = rng.uniform_int(1, max_width);
    widths.push_back(w);
    std::set<std::pair<int, int>> chosen;
    while (static_cast<int>(chosen.size()) < w) {
      const int u = offsets[static_cast<size_t>(b)] +
                    rng.uniform_int(0, sizes[static_cast<size_t>(b)] - 1);
      const int v = offsets[static_cast<size_t>(b) + 1] +
                    rng.uniform_int(0, sizes[static_cast<size_t>(b) + 1] - 1);
      chosen.insert({u, v});
    }
    for (const auto& [u, v] : chosen) edges.emplace_back(u, v);
  }
  nlohmann::json meta{{"blocks", blocks}, {"p_in", p_in}, {"widths", widths}};
  return finish("bottleneck", n, std::move(edges), std::move(meta), rng);
}

GenResult gen_multicore(int n, Rng& rng) {
  if (n < 10) throw std::invalid_argument("gen_multicore: need n >= 10");
  const int core_cap = static_cast<int>(std::floor(0.6 * n));
  std::vector<int> feasible;
  for (int k = 2; k <= 3; ++k)
    if (4 * k <= core_cap) feasible.push_back(k);
  if (feasible.empty())
    throw std::invalid_argument("gen_multicore: cores cannot reach 4 nodes each at n = " +
                                std::to_string(n));
  const int cores = feasible[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(feasible.size()) - 1))];

  const double frac = rng.uniform(0.5, 0.6);
  int core_total = static_cast<int>(std::lround(frac * n));
  core_total = std::clamp(core_total, std::max(4 * cores, static_cast<int>(std::lround(0.5 * n))),
                          core_cap);
  if (core_total < 4 * cores)
    throw std::invalid_argument("gen_multicore: cores cannot reach 4 nodes each");

  const std::vector<int> core_sizes = near_equal_sizes(core_total, cores);
  const std::vector<int> core_offsets = group_offsets(core_sizes);
  const double p_core = rng.uniform(0.6, 0.8);

  EdgeList edges;
  for (int c = 0; c < cores; ++c)
    bernoulli_block(edges, core_offsets[static_cast<size_t>(c)],
                    core_offsets[static_cast<size_t>(c) + 1], core_offsets[static_cast<size_t>(c)],
                    core_offsets[static_cast<size_t>(c) + 1], p_core, rng);

  // Periphery nodes occupy [core_total, n). Bridging nodes come first: each
  // joins one node in each core of its pair, degree exactly 2.
  int next_periphery = core_total;
  int bridge_nodes = 0;
  for (int a = 0; a < cores; ++a) {
    for (int b = a + 1; b < cores; ++b) {
      int count = rng.uniform_int(1, 2);
      count = std::min(count, n - next_periphery);
      for (int t = 0; t < count; ++t) {
        const int u = core_offsets[static_cast<size_t>(a)] +
                      rng.uniform_int(0, core_sizes[static_cast<size_t>(a)] - 1);
        const int v = core_offsets[static_cast<size_t>(b)] +
                      rng.uniform_int(0, core_sizes[static_cast<size_t>(b)] - 1);
        edges.emplace_back(u, next_periphery);
        edges.emplace_back(v, next_periphery);
        ++next_periphery;
        ++bridge_nodes;
      }
    }
  }
  for (int v = next_periphery; v < n; ++v) {
    const int c = rng.uniform_int(0, cores - 1);
    const int links = rng.uniform_int(1, std::min(2, core_sizes[static_cast<size_t>(c)]));
    for (int idx : rng.sample_without_replacement(core_sizes[static_cast<size_t>(c)], links))
      edges.emplace_back(core_offsets[static_cast<size_t>(c)] + idx, v);
  }

  nlohmann::json meta{{"cores", cores},
                      {"core_total", core_total},
                      {"p_core", p_core},
                      {"bridge_nodes", bridge_nodes}};
  return finish("multicore", n, std::move(edges), std::move(meta), rng);
}

GenResult generate_topology(TopoFamily family, int n, Rng& rng) {
  switch (family) {
    case TopoFamily::cyclic: return gen_annular_geometric(n, rng);
    case TopoFamily::geometric: return gen_random_geometric(n, rng);
    case TopoFamily::community: return gen_community(n, rng);
    case TopoFamily::hierarchical: return gen_hierarchical(n, rng);
    case TopoFamily::bottleneck: return gen_bottleneck(n, rng);
    case TopoFamily::multicore: return gen_multicore(n, rng);
  }
  throw std::invalid_argument("generate_topology: bad family");
}

GenResult generate_bridge_topology(TopoFamily family, int n, Rng& rng) {
  if (family == TopoFamily::bottleneck) return gen_bottleneck(n, rng, 1);
  return generate_topology(family, n, rng);
}

}  // namespace ga
