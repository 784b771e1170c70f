#include <cstring>
#include <vector>

#include "doctest.h"

#include "ga/kernels.hpp"
#include "ga/rng.hpp"

using namespace ga;

// The backends must agree bit-for-bit: the dispatch choice may never change
// an output byte.

TEST_CASE("kernel backends are bit-identical") {
  const kernels::Backend& ref = kernels::scalar();
  const kernels::Backend* vec = kernels::avx2();
  if (vec == nullptr) {
    MESSAGE("AVX2 unavailable; scalar-only host");
    CHECK(std::strcmp(kernels::active().name, "scalar") == 0);
    return;
  }

  Rng rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(1, 93);

    {  // rotate_rows
      std::vector<double> a1(static_cast<size_t>(n)), b1(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        a1[static_cast<size_t>(i)] = rng.uniform(-5.0, 5.0);
        b1[static_cast<size_t>(i)] = rng.uniform(-5.0, 5.0);
      }
      std::vector<double> a2 = a1, b2 = b1;
      const double c = rng.uniform(-1.0, 1.0), s = rng.uniform(-1.0, 1.0);
      ref.rotate_rows(a1.data(), b1.data(), n, c, s);
      vec->rotate_rows(a2.data(), b2.data(), n, c, s);
      CHECK(std::memcmp(a1.data(), a2.data(), sizeof(double) * static_cast<size_t>(n)) == 0);
      CHECK(std::memcmp(b1.data(), b2.data(), sizeof(double) * static_cast<size_t>(n)) == 0);
    }

    {  // repulsion, including a coincident point and the skip index
      std::vector<double> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n)),
          mass(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        xs[static_cast<size_t>(i)] = rng.uniform(-2.0, 2.0);
        ys[static_cast<size_t>(i)] = rng.uniform(-2.0, 2.0);
        mass[static_cast<size_t>(i)] = rng.uniform(1.0, 8.0);
      }
      const int skip = rng.uniform_int(0, n - 1);
      const double xi = xs[static_cast<size_t>(skip)];
      const double yi = ys[static_cast<size_t>(skip)];
      if (n > 1) {  // duplicate the probe position somewhere else
        const int dup = (skip + 1) % n;
        xs[static_cast<size_t>(dup)] = xi;
        ys[static_cast<size_t>(dup)] = yi;
      }
      double fx1 = 0.25, fy1 = -0.5, fx2 = 0.25, fy2 = -0.5;
      const double w = rng.uniform(0.5, 4.0);
      ref.repulsion(xi, yi, w, xs.data(), ys.data(), mass.data(), n, skip, &fx1, &fy1);
      vec->repulsion(xi, yi, w, xs.data(), ys.data(), mass.data(), n, skip, &fx2, &fy2);
      CHECK(std::memcmp(&fx1, &fx2, sizeof fx1) == 0);
      CHECK(std::memcmp(&fy1, &fy2, sizeof fy1) == 0);
    }

    {  // dist2_mask
      std::vector<double> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        xs[static_cast<size_t>(i)] = rng.uniform(0.0, 1.0);
        ys[static_cast<size_t>(i)] = rng.uniform(0.0, 1.0);
      }
      std::vector<uint8_t> m1(static_cast<size_t>(n)), m2(static_cast<size_t>(n));
      const double r2 = rng.uniform(0.0, 0.2);
      ref.dist2_mask(xs[0], ys[0], r2, xs.data(), ys.data(), n, m1.data());
      vec->dist2_mask(xs[0], ys[0], r2, xs.data(), ys.data(), n, m2.data());
      CHECK(m1 == m2);
    }

    {  // blend_span
      std::vector<uint8_t> row1(static_cast<size_t>(3 * n));
      std::vector<float> alpha(static_cast<size_t>(n));
      for (int i = 0; i < 3 * n; ++i) row1[static_cast<size_t>(i)] = static_cast<uint8_t>(rng.uniform_int(0, 255));
      for (int i = 0; i < n; ++i) alpha[static_cast<size_t>(i)] = static_cast<float>(rng.uniform());
      std::vector<uint8_t> row2 = row1;
      ref.blend_span(row1.data(), alpha.data(), n, 135, 206, 235);
      vec->blend_span(row2.data(), alpha.data(), n, 135, 206, 235);
      CHECK(row1 == row2);
    }
  }
}

TEST_CASE("runtime dispatch picks a real backend") {
  const kernels::Backend& active = kernels::active();
  CHECK((std::strcmp(active.name, "scalar") == 0 || std::strcmp(active.name, "avx2") == 0));
}
