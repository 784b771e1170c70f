#ifndef GA_KERNELS_HPP
#define GA_KERNELS_HPP

#include <cstdint>

namespace ga::kernels {

// Data-parallel inner loops behind the layout, eigensolver, geometric
// generator, and rasterizer hot paths. Two backends: a scalar reference and
// an AVX2 variant selected at runtime. Both produce bit-identical results:
// reductions are lane-blocked (four partial accumulators combined in a fixed
// order) so the dispatch choice never changes any output byte.
struct Backend {
  const char* name;

  // In-place plane rotation of two rows: (a, b) <- (c*a - s*b, s*a + c*b).
  void (*rotate_rows)(double* a, double* b, int n, double c, double s);

  // Accumulated repulsion on a probe point at (xi, yi) against all points
  // j in [0, n) except skip: f += (pi - pj) * (w * mass[j] / |pi - pj|^2).
  // Coincident points contribute zero. w folds in the global scaling and
  // the probe mass.
  void (*repulsion)(double xi, double yi, double w, const double* xs, const double* ys,
                    const double* mass, int n, int skip, double* fx, double* fy);

  // mask[j] = 1 iff (xs[j]-xi)^2 + (ys[j]-yi)^2 <= r2, for j in [0, n).
  void (*dist2_mask)(double xi, double yi, double r2, const double* xs, const double* ys,
                     int n, uint8_t* mask);

  // Alpha-composites a constant RGB color over an 8-bit RGB pixel span:
  // dst = round_nearest_even(dst + (src - dst) * alpha[k]), alpha in [0, 1].
  void (*blend_span)(uint8_t* rgb, const float* alpha, int count, uint8_t r, uint8_t g,
                     uint8_t b);
};

// Backend picked at startup from CPU features (AVX2 when available).
const Backend& active();

// Scalar reference, always available; the equivalence tests compare the
// other backends against it for exact equality.
const Backend& scalar();

// AVX2 backend, or nullptr when unsupported by the CPU or the build.
const Backend* avx2();

}  // namespace ga::kernels

#endif  // GA_KERNELS_HPP
