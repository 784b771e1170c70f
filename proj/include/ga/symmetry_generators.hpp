#ifndef GA_SYMMETRY_GENERATORS_HPP
#define GA_SYMMETRY_GENERATORS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ga/automorphism.hpp"
#include "ga/graph.hpp"
#include "ga/rng.hpp"

namespace ga {

// Cayley graph on the cyclic group Z_n: node i adjacent to (i +- g) mod n
// for each generator g. Every generator must be coprime to n; g and n - g
// describe the same connection rule.
struct CayleySpec {
  int n = 0;
  std::vector<int> generators;  // 1-3 values, each coprime to n
};

// Throws std::invalid_argument when gcd(g, n) != 1 for some generator.
Graph gen_cayley_cyclic(const CayleySpec& spec);

// Two-layer lift: vertex (v, i) -> index i*|V| + v; each base edge becomes
// two cross-layer edges. The layer swap sigma((v,i)) = (v,1-i) is always an
// automorphism. Output is connected iff the base is non-bipartite.
Graph bipartite_double_cover(const Graph& base);

// Cartesian product; edge rule changes one coordinate along a factor edge.
// Vertex (u, v) -> index u*|V2| + v. Throws when the product exceeds 400
// nodes.
Graph cartesian_product(const Graph& g1, const Graph& g2);

struct CoverSpec {
  Graph base;  // no self-loops by construction
  int k = 2;   // layer count in [2, 5]
};

// k-layer lift: vertex (v, i) -> index i*|V| + v; each base edge (u, v)
// yields edges ((u,i),(v,i+1 mod k)) and ((v,i),(u,i+1 mod k)) per layer.
// The rotation tau((v,i)) = (v,(i+1) mod k) is always an automorphism.
Graph k_fold_cyclic_cover(const CoverSpec& spec);

// The layer-swap / layer-rotation witnesses for covers built with the index
// conventions above.
std::vector<int> double_cover_swap_permutation(int base_nodes);
std::vector<int> cyclic_cover_rotation_permutation(int base_nodes, int k);

// Repeatedly applies connectivity-preserving double edge swaps until the
// graph verifies asymmetric, up to 20 attempts. nullopt on failure.
std::optional<Graph> gen_perturbed_asymmetric(const Graph& start, Rng& rng,
                                              const AutomorphismSearchOptions& opts = {});

// Connected base graphs bucketed by node count 5-50, sampled from edge-list
// files (BFS expansion, random walk with restart 0.2, layered neighborhood
// sampling with fan-out 5 / depth 3) or filled with connected random graphs
// when no files are given.
class BaseGraphCorpus {
 public:
  static constexpr int kMinSize = 5;
  static constexpr int kMaxSize = 50;
  static constexpr int kGraphsPerSize = 30;

  // Throws on unreadable files or malformed lines (with line numbers).
  static BaseGraphCorpus from_edge_lists(const std::vector<std::filesystem::path>& files,
                                         Rng& rng);
  static BaseGraphCorpus synthetic_fallback(Rng& rng);

  bool synthetic() const { return synthetic_; }
  // Graph from the nearest non-empty bucket to target_size.
  const Graph& sample(int target_size, Rng& rng) const;
  const std::vector<Graph>& bucket(int size) const;
  int total_graphs() const;

 private:
  std::vector<std::vector<Graph>> buckets_;  // index 0 <-> size kMinSize
  bool synthetic_ = false;
};

// Reads one edge-list file: "u v" per line, '#' comments, ids normalized to
// a dense range. Throws with the line number on malformed input.
Graph read_edge_list(const std::filesystem::path& file);

enum class SymmetryMethod {
  cayley,
  double_cover,
  cartesian_synthetic,
  cartesian_real,
  cyclic_cover,
  perturbed,
};
const char* symmetry_method_name(SymmetryMethod m);

struct SymmetrySample {
  Graph graph;
  bool symmetric = false;
  std::vector<int> witness;  // verified non-identity automorphism when symmetric
  nlohmann::json meta;
};

// One verified sample of the requested class with node count in [lo, hi].
// Symmetric samples draw uniformly over the five symmetric methods,
// asymmetric over {perturbed, cartesian_real}; every label is confirmed by
// the automorphism module. Throws GenerationError when the retry budget
// runs out.
SymmetrySample gen_symmetry_sample(bool want_symmetric, int lo, int hi,
                                   const BaseGraphCorpus& corpus, Rng& rng,
                                   const AutomorphismSearchOptions& opts = {});

// 50/50 pool (symmetric first on even indices), each sample verified.
std::vector<SymmetrySample> assemble_symmetry_pool(int count, int lo, int hi,
                                                   const BaseGraphCorpus& corpus, Rng& rng);

}  // namespace ga

#endif  // GA_SYMMETRY_GENERATORS_HPP
