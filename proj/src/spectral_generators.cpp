#include "ga/spectral_generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "ga/errors.hpp"

namespace ga {

MixingParam sample_mu(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.4) return {rng.uniform(0.0, 0.2)};
  if (u < 0.7) return {rng.uniform(0.2, 0.5)};
  return {rng.uniform(0.5, 0.8)};
}

namespace {

std::pair<double, double> p_out_tier(double mu) {
  if (mu < 0.1) return {0.001, 0.02};
  if (mu < 0.3) return {0.02, 0.1};
  if (mu < 0.7) return {0.1, 0.3};
  return {0.3, mu};
}

uint64_t edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<uint64_t>(u) << 32) | static_cast<uint64_t>(v);
}

}  // namespace

GenResult gen_sbm_evolution(int n, double mu, SbmVariant variant, Rng& rng) {
  if (n < 8) throw std::invalid_argument("gen_sbm_evolution: need n >= 8");
  if (mu < 0.0 || mu > 1.0) throw std::invalid_argument("gen_sbm_evolution: mu out of [0, 1]");

  int blocks = variant == SbmVariant::dumbbell ? 2 : rng.uniform_int(3, 5);
  while (n / blocks < 2) --blocks;
  std::vector<int> sizes(static_cast<size_t>(blocks), n / blocks);
  for (int i = 0; i < n % blocks; ++i) ++sizes[static_cast<size_t>(i)];
  std::vector<int> offsets(static_cast<size_t>(blocks) + 1, 0);
  for (int b = 0; b < blocks; ++b) offsets[static_cast<size_t>(b) + 1] = offsets[static_cast<size_t>(b)] + sizes[static_cast<size_t>(b)];

  const double p_in = rng.uniform(0.6, 0.8);
  const auto [t_lo, t_hi] = p_out_tier(mu);
  const double p_out = rng.uniform(t_lo, t_hi);

  std::vector<int> block_of(static_cast<size_t>(n));
  for (int b = 0; b < blocks; ++b)
    for (int v = offsets[static_cast<size_t>(b)]; v < offsets[static_cast<size_t>(b) + 1]; ++v)
      block_of[static_cast<size_t>(v)] = b;

  EdgeList edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(block_of[static_cast<size_t>(u)] == block_of[static_cast<size_t>(v)] ? p_in : p_out))
        edges.emplace_back(u, v);

  RepairResult repaired = ensure_connected(Graph(n, std::move(edges)), rng);
  nlohmann::json meta{{"family", spectral_family_name(variant == SbmVariant::dumbbell
                                                          ? SpectralFamily::sbm_dumbbell
                                                          : SpectralFamily::sbm_multi)},
                      {"n", n},
                      {"mu", mu},
                      {"blocks", blocks},
                      {"p_in", p_in},
                      {"p_out", p_out},
                      {"repair_edges", repaired.edges_added}};
  return {std::move(repaired.graph), std::move(meta)};
}

GenResult gen_geometric_evolution(int n, double mu, Rng& rng) {
  if (n < 5) throw std::invalid_argument("gen_geometric_evolution: need n >= 5");
  const double radius = std::sqrt(1.1 * std::log(static_cast<double>(n)) /
                                  (3.14159265358979323846 * n));
  std::vector<double> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<size_t>(i)] = rng.uniform();
    ys[static_cast<size_t>(i)] = rng.uniform();
  }
  const double r2 = radius * radius;
  EdgeList edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = xs[static_cast<size_t>(i)] - xs[static_cast<size_t>(j)];
      const double dy = ys[static_cast<size_t>(i)] - ys[static_cast<size_t>(j)];
      if (dx * dx + dy * dy <= r2) edges.emplace_back(i, j);
    }
  }
  RepairResult repaired = ensure_connected(Graph(n, std::move(edges)), rng);

  const long long extra = std::llround(mu * 0.1 * n * std::log(static_cast<double>(n)));
  EdgeList grown = repaired.graph.edges();
  std::unordered_set<uint64_t> present;
  for (const auto& [u, v] : grown) present.insert(edge_key(u, v));
  long long added = 0;
  const long long max_possible = static_cast<long long>(n) * (n - 1) / 2 - static_cast<long long>(grown.size());
  const long long target = std::min(extra, max_possible);
  long long guard = 200 * target + 1000;
  while (added < target && guard-- > 0) {
    const int u = rng.uniform_int(0, n - 1);
    const int v = rng.uniform_int(0, n - 2);
    const int w = v >= u ? v + 1 : v;
    if (present.insert(edge_key(u, w)).second) {
      grown.emplace_back(std::min(u, w), std::max(u, w));
      ++added;
    }
  }
  if (added < target) throw GenerationError("gen_geometric_evolution: extra-edge sampling stalled");

  nlohmann::json meta{{"family", spectral_family_name(SpectralFamily::geometric_evolution)},
                      {"n", n},
                      {"mu", mu},
                      {"radius", radius},
                      {"base_edges", repaired.graph.num_edges()},
                      {"extra_edges", added},
                      {"repair_edges", repaired.edges_added}};
  return {Graph(n, std::move(grown)), std::move(meta)};
}

namespace detail {

Graph rewire_edges(const Graph& base, long long target_swaps, long long max_attempts, Rng& rng) {
  const int m = base.num_edges();
  if (m < 2) throw GenerationError("rewire_edges: need at least 2 edges");
  EdgeList edges = base.edges();
  std::unordered_set<uint64_t> present;
  for (const auto& [u, v] : edges) present.insert(edge_key(u, v));

  long long successes = 0, attempts = 0;
  while (successes < target_swaps) {
    if (attempts++ >= max_attempts) throw GenerationError("rewire_edges: swap budget exhausted");
    const int i = rng.uniform_int(0, m - 1);
    int j = rng.uniform_int(0, m - 2);
    if (j >= i) ++j;
    const auto [a, b] = edges[static_cast<size_t>(i)];
    const auto [c, d] = edges[static_cast<size_t>(j)];
    if (a == d || c == b) continue;
    const uint64_t k1 = edge_key(a, d), k2 = edge_key(c, b);
    if (present.count(k1) || present.count(k2)) continue;
    present.erase(edge_key(a, b));
    present.erase(edge_key(c, d));
    present.insert(k1);
    present.insert(k2);
    edges[static_cast<size_t>(i)] = {std::min(a, d), std::max(a, d)};
    edges[static_cast<size_t>(j)] = {std::min(c, b), std::max(c, b)};
    ++successes;
  }
  return Graph(base.num_nodes(), std::move(edges));
}

}  // namespace detail

GenResult gen_configuration_rewired(int n, double mu, Rng& rng) {
  if (n < 8) throw std::invalid_argument("gen_configuration_rewired: need n >= 8");
  GenResult base = rng.bernoulli(0.5)
                       ? gen_sbm_evolution(n, mu, rng.bernoulli(0.5) ? SbmVariant::dumbbell : SbmVariant::multi, rng)
                       : gen_geometric_evolution(n, mu, rng);

  const double f = rng.uniform(0.3, 0.8);
  const int m = base.graph.num_edges();
  const long long target_swaps = std::llround(f * m);
  Graph rewired = detail::rewire_edges(base.graph, target_swaps, 50LL * m, rng);
  RepairResult repaired = ensure_connected(rewired, rng);

  nlohmann::json meta{{"family", spectral_family_name(SpectralFamily::configuration)},
                      {"n", n},
                      {"mu", mu},
                      {"base_family", base.meta["family"]},
                      {"rewire_fraction", f},
                      {"target_swaps", target_swaps},
                      {"repair_edges", repaired.edges_added}};
  return {std::move(repaired.graph), std::move(meta)};
}

const char* spectral_family_name(SpectralFamily f) {
  switch (f) {
    case SpectralFamily::sbm_dumbbell: return "sbm_dumbbell";
    case SpectralFamily::sbm_multi: return "sbm_multi";
    case SpectralFamily::geometric_evolution: return "geometric_evolution";
    case SpectralFamily::configuration: return "configuration";
  }
  return "unknown";
}

GenResult generate_spectral(SpectralFamily family, int n, double mu, Rng& rng) {
  switch (family) {
    case SpectralFamily::sbm_dumbbell: return gen_sbm_evolution(n, mu, SbmVariant::dumbbell, rng);
    case SpectralFamily::sbm_multi: return gen_sbm_evolution(n, mu, SbmVariant::multi, rng);
    case SpectralFamily::geometric_evolution: return gen_geometric_evolution(n, mu, rng);
    case SpectralFamily::configuration: return gen_configuration_rewired(n, mu, rng);
  }
  throw std::invalid_argument("generate_spectral: bad family");
}

}  // namespace ga
