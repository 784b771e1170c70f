#include "ga/automorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "ga/errors.hpp"

namespace ga {

bool verify_automorphism(const Graph& g, const std::vector<int>& phi) {
  const int n = g.num_nodes();
  if (static_cast<int>(phi.size()) != n)
    throw std::invalid_argument("verify_automorphism: permutation length " +
                                std::to_string(phi.size()) + " != node count " +
                                std::to_string(n));
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int v : phi) {
    if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
      throw std::invalid_argument("verify_automorphism: not a bijection on [0, n)");
    seen[static_cast<size_t>(v)] = 1;
  }
  // phi(E) subset of E plus |phi(E)| = |E| implies phi(E) = E, so checking
  // edges alone also covers non-edges.
  for (const auto& [u, v] : g.edges())
    if (!g.has_edge(phi[static_cast<size_t>(u)], phi[static_cast<size_t>(v)])) return false;
  return true;
}

namespace {

using Coloring = std::vector<int>;

// One refinement pass for both colorings with a shared signature -> id map,
// so matching cells keep matching ids. Returns false when per-color node
// counts diverge (no automorphism can relate the two colorings).
// Iterates until neither partition splits further.
bool refine_pair(const Graph& g, Coloring& cs, Coloring& ct, long long& budget) {
  const int n = g.num_nodes();
  using Signature = std::pair<int, std::vector<int>>;
  std::vector<Signature> sig_s(static_cast<size_t>(n)), sig_t(static_cast<size_t>(n));

  while (true) {
    budget -= n;
    if (budget < 0) throw UndecidedError("automorphism search budget exhausted");

    for (int v = 0; v < n; ++v) {
      auto& ss = sig_s[static_cast<size_t>(v)];
      auto& st = sig_t[static_cast<size_t>(v)];
      ss.first = cs[static_cast<size_t>(v)];
      st.first = ct[static_cast<size_t>(v)];
      ss.second.clear();
      st.second.clear();
      for (int w : g.neighbors(v)) {
        ss.second.push_back(cs[static_cast<size_t>(w)]);
        st.second.push_back(ct[static_cast<size_t>(w)]);
      }
      std::sort(ss.second.begin(), ss.second.end());
      std::sort(st.second.begin(), st.second.end());
    }

    std::map<Signature, int> ids;
    for (const auto& sig : sig_s) ids.emplace(sig, 0);
    for (const auto& sig : sig_t) ids.emplace(sig, 0);
    int next = 0;
    for (auto& [sig, id] : ids) id = next++;

    int old_cells = 0;
    for (int c : cs) old_cells = std::max(old_cells, c + 1);
    Coloring new_s(static_cast<size_t>(n)), new_t(static_cast<size_t>(n));
    std::vector<int> count_s(static_cast<size_t>(next), 0), count_t(static_cast<size_t>(next), 0);
    for (int v = 0; v < n; ++v) {
      new_s[static_cast<size_t>(v)] = ids[sig_s[static_cast<size_t>(v)]];
      new_t[static_cast<size_t>(v)] = ids[sig_t[static_cast<size_t>(v)]];
      ++count_s[static_cast<size_t>(new_s[static_cast<size_t>(v)])];
      ++count_t[static_cast<size_t>(new_t[static_cast<size_t>(v)])];
    }
    if (count_s != count_t) return false;

    int new_cells = 0;
    for (int c = 0; c < next; ++c)
      if (count_s[static_cast<size_t>(c)] > 0) ++new_cells;
    cs = std::move(new_s);
    ct = std::move(new_t);
    if (new_cells == old_cells) return true;  // equitable: no cell split
  }
}

struct SearchState {
  const Graph& g;
  long long budget;
  std::vector<int> witness;
};

// Exhaustive backtracking over refined cells. Any automorphism maps the
// chosen source vertex within its cell, so fixing u and branching over the
// target cell loses nothing. Candidates v != u are tried first so symmetric
// graphs yield a witness before the identity subtree is entered.
bool search(SearchState& st, Coloring cs, Coloring ct) {
  if (!refine_pair(st.g, cs, ct, st.budget)) return false;
  const int n = st.g.num_nodes();

  int max_color = 0;
  for (int c : cs) max_color = std::max(max_color, c);
  std::vector<int> count(static_cast<size_t>(max_color + 1), 0);
  for (int c : cs) ++count[static_cast<size_t>(c)];

  int cell = -1;
  for (int c = 0; c <= max_color; ++c) {
    if (count[static_cast<size_t>(c)] < 2) continue;
    if (cell == -1 || count[static_cast<size_t>(c)] < count[static_cast<size_t>(cell)]) cell = c;
  }

  if (cell == -1) {
    // Both partitions discrete; cells pair up by color id.
    std::vector<int> phi(static_cast<size_t>(n), -1);
    std::vector<int> target_of_color(static_cast<size_t>(max_color + 1), -1);
    for (int v = 0; v < n; ++v) target_of_color[static_cast<size_t>(ct[static_cast<size_t>(v)])] = v;
    bool identity = true;
    for (int v = 0; v < n; ++v) {
      phi[static_cast<size_t>(v)] = target_of_color[static_cast<size_t>(cs[static_cast<size_t>(v)])];
      identity = identity && phi[static_cast<size_t>(v)] == v;
    }
    if (identity) return false;
    if (!verify_automorphism(st.g, phi)) return false;  // refinement is necessary, not sufficient
    st.witness = std::move(phi);
    return true;
  }

  int u = -1;
  for (int v = 0; v < n && u == -1; ++v)
    if (cs[static_cast<size_t>(v)] == cell) u = v;

  std::vector<int> candidates;
  for (int v = 0; v < n; ++v)
    if (ct[static_cast<size_t>(v)] == cell && v != u) candidates.push_back(v);
  candidates.push_back(u);

  const int fresh = max_color + 1;
  for (int v : candidates) {
    Coloring cs2 = cs;
    Coloring ct2 = ct;
    cs2[static_cast<size_t>(u)] = fresh;
    ct2[static_cast<size_t>(v)] = fresh;
    if (search(st, std::move(cs2), std::move(ct2))) return true;
  }
  return false;
}

}  // namespace

SymmetryVerdict find_nontrivial_automorphism(const Graph& g,
                                             const AutomorphismSearchOptions& options) {
  const int n = g.num_nodes();
  if (n > options.max_nodes)
    throw std::invalid_argument("find_nontrivial_automorphism: n = " + std::to_string(n) +
                                " exceeds limit " + std::to_string(options.max_nodes));
  if (n <= 1) return {false, std::nullopt};

  SearchState st{g, options.expansion_budget, {}};
  Coloring cs(static_cast<size_t>(n), 0), ct(static_cast<size_t>(n), 0);
  if (search(st, std::move(cs), std::move(ct))) {
    AutomorphismWitness w{std::move(st.witness), false};
    return {true, std::move(w)};
  }
  return {false, std::nullopt};
}

}  // namespace ga
