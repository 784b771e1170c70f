#ifndef GA_SPECTRAL_GENERATORS_HPP
#define GA_SPECTRAL_GENERATORS_HPP

#include "json.hpp"

#include "ga/graph.hpp"
#include "ga/rng.hpp"
#include "ga/topo_generators.hpp"

namespace ga {

struct MixingParam {
  double mu = 0.0;  // in [0, 0.8]
};

// Stratified: mu < 0.2 with probability 0.4, mu in [0.2, 0.5] with 0.3,
// mu in [0.5, 0.8] with 0.3; uniform within each stratum.
MixingParam sample_mu(Rng& rng);

enum class SbmVariant { dumbbell, multi };

// Stochastic block model: dumbbell = two equal blocks, multi = 3-5 blocks.
// p_in ~ U[0.6, 0.8]; p_out drawn from the mu tier: [0.001, 0.02] when
// mu < 0.1, [0.02, 0.1] when mu < 0.3, [0.1, 0.3] when mu < 0.7, else
// [0.3, mu].
GenResult gen_sbm_evolution(int n, double mu, SbmVariant variant, Rng& rng);

// Geometric base with radius sqrt(1.1 ln n / (pi n)), then
// round(mu * 0.1 * n * ln n) uniformly random extra non-edges.
GenResult gen_geometric_evolution(int n, double mu, Rng& rng);

// Degree-preserving rewiring of an SBM or geometric base (coin flip):
// exactly round(f * |E|) successful double edge swaps with f ~ U[0.3, 0.8],
// connectivity repaired afterwards. Throws GenerationError when the target
// swap count is unreachable within 50 * |E| attempts.
GenResult gen_configuration_rewired(int n, double mu, Rng& rng);

enum class SpectralFamily { sbm_dumbbell, sbm_multi, geometric_evolution, configuration };
const char* spectral_family_name(SpectralFamily f);

GenResult generate_spectral(SpectralFamily family, int n, double mu, Rng& rng);

namespace detail {
// Exactly target_swaps successful degree-preserving swaps on a copy of
// base; same proposal rule as double_edge_swap. Throws GenerationError when
// the budget runs out.
Graph rewire_edges(const Graph& base, long long target_swaps, long long max_attempts, Rng& rng);
}  // namespace detail

}  // namespace ga

#endif  // GA_SPECTRAL_GENERATORS_HPP
