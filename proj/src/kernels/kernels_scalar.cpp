#include <cmath>
#include <cstdint>

#include "ga/kernels.hpp"

// Scalar reference backend. The loop structure mirrors the 4-lane vector
// variant exactly: reductions keep four partial accumulators indexed by
// j mod 4 over the vectorized prefix, combined as (l0+l2)+(l1+l3), with a
// sequential tail. This fixes the floating-point contract for all backends.

namespace ga::kernels {
namespace {

void rotate_rows_scalar(double* a, double* b, int n, double c, double s) {
  for (int k = 0; k < n; ++k) {
    const double ak = a[k];
    const double bk = b[k];
    a[k] = c * ak - s * bk;
    b[k] = s * ak + c * bk;
  }
}

void repulsion_scalar(double xi, double yi, double w, const double* xs, const double* ys,
                      const double* mass, int n, int skip, double* fx, double* fy) {
  double accx[4] = {0.0, 0.0, 0.0, 0.0};
  double accy[4] = {0.0, 0.0, 0.0, 0.0};
  const int nvec = n - (n % 4);
  for (int j = 0; j < nvec; ++j) {
    const double dx = xi - xs[j];
    const double dy = yi - ys[j];
    const double d2 = dx * dx + dy * dy;
    double f = 0.0;
    if (j != skip && d2 > 0.0) f = w * mass[j] / d2;
    accx[j % 4] += dx * f;
    accy[j % 4] += dy * f;
  }
  double sx = (accx[0] + accx[2]) + (accx[1] + accx[3]);
  double sy = (accy[0] + accy[2]) + (accy[1] + accy[3]);
  for (int j = nvec; j < n; ++j) {
    const double dx = xi - xs[j];
    const double dy = yi - ys[j];
    const double d2 = dx * dx + dy * dy;
    double f = 0.0;
    if (j != skip && d2 > 0.0) f = w * mass[j] / d2;
    sx += dx * f;
    sy += dy * f;
  }
  *fx += sx;
  *fy += sy;
}

void dist2_mask_scalar(double xi, double yi, double r2, const double* xs, const double* ys,
                       int n, uint8_t* mask) {
  for (int j = 0; j < n; ++j) {
    const double dx = xs[j] - xi;
    const double dy = ys[j] - yi;
    mask[j] = (dx * dx + dy * dy <= r2) ? 1 : 0;
  }
}

void blend_span_scalar(uint8_t* rgb, const float* alpha, int count, uint8_t r, uint8_t g,
                       uint8_t b) {
  const float sr = static_cast<float>(r);
  const float sg = static_cast<float>(g);
  const float sb = static_cast<float>(b);
  for (int k = 0; k < count; ++k) {
    const float a = alpha[k];
    uint8_t* px = rgb + 3 * k;
    const float dr = static_cast<float>(px[0]);
    const float dg = static_cast<float>(px[1]);
    const float db = static_cast<float>(px[2]);
    // Round-to-nearest-even, matching the vector cvtps path.
    px[0] = static_cast<uint8_t>(std::lrintf(dr + (sr - dr) * a));
    px[1] = static_cast<uint8_t>(std::lrintf(dg + (sg - dg) * a));
    px[2] = static_cast<uint8_t>(std::lrintf(db + (sb - db) * a));
  }
}

}  // namespace

const Backend& scalar() {
  static const Backend backend{
      "scalar", rotate_rows_scalar, repulsion_scalar, dist2_mask_scalar, blend_span_scalar,
  };
  return backend;
}

}  // namespace ga::kernels
