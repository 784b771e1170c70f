#ifndef GA_AUTOMORPHISM_HPP
#define GA_AUTOMORPHISM_HPP

#include <optional>
#include <vector>

#include "ga/graph.hpp"

namespace ga {

struct AutomorphismWitness {
  std::vector<int> mapping;  // phi: node -> node, a bijection on [0, n)
  bool is_identity = false;
};

struct SymmetryVerdict {
  bool symmetric = false;
  std::optional<AutomorphismWitness> witness;  // present iff symmetric; non-identity
};

// True iff phi maps the edge set onto itself. Throws std::invalid_argument
// when |phi| != n or phi is not a bijection.
bool verify_automorphism(const Graph& g, const std::vector<int>& phi);

struct AutomorphismSearchOptions {
  int max_nodes = 400;              // size-limit error beyond this
  long long expansion_budget = 10'000'000;  // refinement work units before "undecided"
};

// Decides |Aut(G)| > 1 with an explicit verified witness.
//
// Individualization-refinement: iterated neighborhood color refinement to an
// equitable partition, then backtracking that individualizes one source
// vertex against each candidate target vertex of the same cell, re-refining
// both colorings in lockstep. Every leaf mapping is re-checked with
// verify_automorphism before being accepted; asymmetric means the search
// exhausted the pruned tree without finding a non-identity map.
//
// Throws UndecidedError when the expansion budget runs out, and
// std::invalid_argument when n exceeds max_nodes.
SymmetryVerdict find_nontrivial_automorphism(const Graph& g,
                                             const AutomorphismSearchOptions& options = {});

}  // namespace ga

#endif  // GA_AUTOMORPHISM_HPP
