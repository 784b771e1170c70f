#ifndef GA_TOPO_GENERATORS_HPP
#define GA_TOPO_GENERATORS_HPP

#include <string>

#include "json.hpp"

#include "ga/graph.hpp"
#include "ga/rng.hpp"

namespace ga {

// The six topology families. Enum order is the class-id order of the
// topology task; the bridge task uses the five non-cyclic families.
enum class TopoFamily { cyclic, geometric, community, hierarchical, bottleneck, multicore };

const char* topo_family_name(TopoFamily f);
TopoFamily topo_family_from_name(const std::string& name);

struct GenResult {
  Graph graph;
  nlohmann::json meta;  // family, sampled parameters, repair_edges
};

// Annular random geometric graph: nodes uniform in a ring, edges by
// proximity. r_inner ~ U[0.7, 1.2], r_outer = r_inner + U[0.05, 0.3],
// connection radius ~ U[0.5, 0.8].
GenResult gen_annular_geometric(int n, Rng& rng);

// Uniform unit square, connection radius ~ U[0.15, 0.25].
GenResult gen_random_geometric(int n, Rng& rng);

// 3-5 near-equal groups, p_in ~ U[0.6, 0.8], p_out ~ U[0.01, 0.05].
GenResult gen_community(int n, Rng& rng);

// 2-4 levels shrinking by ~0.4 toward the top; within-level density
// 0.7*(L-level)/L; each non-top node links to 1-3 nodes one level up.
GenResult gen_hierarchical(int n, Rng& rng);

// 2-4 blocks in a chain, p_in ~ U[0.4, 0.6], adjacent blocks joined by a
// sampled width of 1..max_width edges. The bridge task pins max_width to 1
// (single-connection bottlenecks); the topology task uses the default 3.
GenResult gen_bottleneck(int n, Rng& rng, int max_width = 3);

// 2-3 dense cores totaling 50-60% of nodes (>= 4 each), 1-2 bridging nodes
// per core pair, remaining periphery attached to 1-2 nodes of one core.
// Throws std::invalid_argument when the cores cannot reach 4 nodes each.
GenResult gen_multicore(int n, Rng& rng);

GenResult generate_topology(TopoFamily family, int n, Rng& rng);

// Bridge-task variant: identical families except that bottleneck joins use
// exactly one edge, keeping the junctions cut edges.
GenResult generate_bridge_topology(TopoFamily family, int n, Rng& rng);

// Parameter-pinned cores, exposed for the statistical unit tests.
namespace detail {
GenResult annular_geometric(int n, double r_inner, double r_outer, double r_conn, Rng& rng);
GenResult hierarchical(int n, int levels, Rng& rng);
GenResult community(int n, int groups, double p_in, double p_out, Rng& rng);
// Edges between all point pairs within the connection radius.
EdgeList proximity_edges(const std::vector<double>& xs, const std::vector<double>& ys,
                         double radius);
}  // namespace detail

}  // namespace ga

#endif  // GA_TOPO_GENERATORS_HPP
