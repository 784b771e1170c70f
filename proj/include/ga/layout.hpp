#ifndef GA_LAYOUT_HPP
#define GA_LAYOUT_HPP

#include <array>
#include <string>
#include <vector>

#include "ga/graph.hpp"

namespace ga {

enum class LayoutAlgorithm { kamada_kawai, forceatlas2, spectral, circular };

const char* layout_algorithm_name(LayoutAlgorithm a);
LayoutAlgorithm layout_algorithm_from_name(const std::string& name);

struct Layout {
  std::vector<std::array<double, 2>> positions;  // normalized to [0, 1]^2
  LayoutAlgorithm algorithm = LayoutAlgorithm::circular;
};

// Rescales positions uniformly so the bounding box fits
// [margin, 1-margin]^2 with margin 0.05, centered; coincident point clouds
// collapse to the center. Idempotent.
void normalize_layout(Layout& layout);

// Stress minimization with 1/d^2 weights over shortest-path distances;
// circle initialization, per-node 2D Newton relaxation, stops when the max
// node gradient norm drops below 1e-4 or after 500 sweeps. Connected input.
Layout kamada_kawai(const Graph& g);

// Edge attraction proportional to distance, pairwise repulsion
// (deg_u+1)(deg_v+1)/d scaled by 2.0, adaptive speed with swing damping.
// No gravity, no LinLog, exact pairwise forces. Deterministic per seed.
Layout forceatlas2(const Graph& g, int iterations, uint64_t seed);

// Coordinates from the eigenvectors of the two smallest nonzero eigenvalues
// of the combinatorial Laplacian D - A. Overlapping positions are allowed.
// Connected input, n >= 3.
Layout spectral_layout(const Graph& g);

// Node i at angle 2*pi*i/n on the unit circle.
Layout circular_layout(const Graph& g);

// Default iteration count used by compute_layout for forceatlas2.
inline constexpr int kForceAtlas2Iterations = 300;

Layout compute_layout(LayoutAlgorithm algorithm, const Graph& g, uint64_t seed);

// True when more than half the nodes share one position (rendered anyway;
// callers may warn).
bool degenerate_layout(const Layout& layout);

// Internals exposed for the oracle tests.
namespace layout_detail {
// All-pairs shortest path distances (BFS); -1 when unreachable.
std::vector<std::vector<int>> shortest_path_distances(const Graph& g);
// Weighted stress of raw (unnormalized) positions.
double kk_stress(const std::vector<std::array<double, 2>>& pos,
                 const std::vector<std::vector<int>>& dist);
// Unnormalized variants.
std::vector<std::array<double, 2>> kamada_kawai_raw(const Graph& g);
std::vector<std::array<double, 2>> forceatlas2_raw(const Graph& g, int iterations, uint64_t seed);
std::vector<std::array<double, 2>> spectral_raw(const Graph& g);
std::vector<std::array<double, 2>> circular_raw(int n);
}  // namespace layout_detail

}  // namespace ga

#endif  // GA_LAYOUT_HPP
