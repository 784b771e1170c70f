// AVX2 backend. Compiled with -mavx2 (x86 only); selected at runtime by the
// dispatcher. Must stay bit-identical to the scalar reference: same lane
// blocking, same combine order, no FMA.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cstdint>

#include "ga/kernels.hpp"

namespace ga::kernels {
namespace {

void rotate_rows_avx2(double* a, double* b, int n, double c, double s) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sv = _mm256_set1_pd(s);
  int k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d av = _mm256_loadu_pd(a + k);
    const __m256d bv = _mm256_loadu_pd(b + k);
    _mm256_storeu_pd(a + k, _mm256_sub_pd(_mm256_mul_pd(cv, av), _mm256_mul_pd(sv, bv)));
    _mm256_storeu_pd(b + k, _mm256_add_pd(_mm256_mul_pd(sv, av), _mm256_mul_pd(cv, bv)));
  }
  for (; k < n; ++k) {
    const double ak = a[k];
    const double bk = b[k];
    a[k] = c * ak - s * bk;
    b[k] = s * ak + c * bk;
  }
}

void repulsion_avx2(double xi, double yi, double w, const double* xs, const double* ys,
                    const double* mass, int n, int skip, double* fx, double* fy) {
  const __m256d xiv = _mm256_set1_pd(xi);
  const __m256d yiv = _mm256_set1_pd(yi);
  const __m256d wv = _mm256_set1_pd(w);
  const __m256d zero = _mm256_setzero_pd();
  const __m256i lane = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i skipv = _mm256_set1_epi64x(skip);
  __m256d accx = zero;
  __m256d accy = zero;
  const int nvec = n - (n % 4);
  for (int j = 0; j < nvec; j += 4) {
    const __m256i jv = _mm256_add_epi64(_mm256_set1_epi64x(j), lane);
    const __m256d skipmask = _mm256_castsi256_pd(_mm256_cmpeq_epi64(jv, skipv));
    const __m256d dx = _mm256_sub_pd(xiv, _mm256_loadu_pd(xs + j));
    const __m256d dy = _mm256_sub_pd(yiv, _mm256_loadu_pd(ys + j));
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d valid = _mm256_andnot_pd(skipmask, _mm256_cmp_pd(d2, zero, _CMP_GT_OQ));
    __m256d f = _mm256_div_pd(_mm256_mul_pd(wv, _mm256_loadu_pd(mass + j)), d2);
    f = _mm256_and_pd(f, valid);
    accx = _mm256_add_pd(accx, _mm256_mul_pd(dx, f));
    accy = _mm256_add_pd(accy, _mm256_mul_pd(dy, f));
  }
  // Combine lanes as (l0+l2)+(l1+l3); the scalar reference does the same.
  const __m128d sx2 = _mm_add_pd(_mm256_castpd256_pd128(accx), _mm256_extractf128_pd(accx, 1));
  const __m128d sy2 = _mm_add_pd(_mm256_castpd256_pd128(accy), _mm256_extractf128_pd(accy, 1));
  double sx = _mm_cvtsd_f64(sx2) + _mm_cvtsd_f64(_mm_unpackhi_pd(sx2, sx2));
  double sy = _mm_cvtsd_f64(sy2) + _mm_cvtsd_f64(_mm_unpackhi_pd(sy2, sy2));
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

void dist2_mask_avx2(double xi, double yi, double r2, const double* xs, const double* ys,
                     int n, uint8_t* mask) {
  const __m256d xiv = _mm256_set1_pd(xi);
  const __m256d yiv = _mm256_set1_pd(yi);
  const __m256d r2v = _mm256_set1_pd(r2);
  int j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + j), xiv);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + j), yiv);
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const int bits = _mm256_movemask_pd(_mm256_cmp_pd(d2, r2v, _CMP_LE_OQ));
    mask[j] = static_cast<uint8_t>(bits & 1);
    mask[j + 1] = static_cast<uint8_t>((bits >> 1) & 1);
    mask[j + 2] = static_cast<uint8_t>((bits >> 2) & 1);
    mask[j + 3] = static_cast<uint8_t>((bits >> 3) & 1);
  }
  for (; j < n; ++j) {
    const double dx = xs[j] - xi;
    const double dy = ys[j] - yi;
    mask[j] = (dx * dx + dy * dy <= r2) ? 1 : 0;
  }
}

void blend_span_avx2(uint8_t* rgb, const float* alpha, int count, uint8_t r, uint8_t g,
                     uint8_t b) {
  // One pixel per iteration in a 128-bit lane; cvtps_epi32 rounds to nearest
  // even, matching lrintf in the scalar reference.
  const __m128 src = _mm_setr_ps(static_cast<float>(r), static_cast<float>(g),
                                 static_cast<float>(b), 0.0f);
  for (int k = 0; k < count; ++k) {
    uint8_t* px = rgb + 3 * k;
    const __m128 dst =
        _mm_setr_ps(static_cast<float>(px[0]), static_cast<float>(px[1]),
                    static_cast<float>(px[2]), 0.0f);
    const __m128 av = _mm_set1_ps(alpha[k]);
    const __m128 out = _mm_add_ps(dst, _mm_mul_ps(_mm_sub_ps(src, dst), av));
    const __m128i q = _mm_cvtps_epi32(out);
    px[0] = static_cast<uint8_t>(_mm_extract_epi32(q, 0));
    px[1] = static_cast<uint8_t>(_mm_extract_epi32(q, 1));
    px[2] = static_cast<uint8_t>(_mm_extract_epi32(q, 2));
  }
}

}  // namespace

const Backend* avx2_backend_impl() {
  static const Backend backend{
      "avx2", rotate_rows_avx2, repulsion_avx2, dist2_mask_avx2, blend_span_avx2,
  };
  return &backend;
}

}  // namespace ga::kernels

#else

namespace ga::kernels {
struct Backend;
const Backend* avx2_backend_impl() { return nullptr; }
}  // namespace ga::kernels

#endif
