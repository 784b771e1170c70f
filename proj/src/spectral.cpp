#include "ga/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ga/kernels.hpp"

namespace ga {

Matrix normalized_laplacian(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<double> inv_sqrt_deg(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    const int d = g.degree(v);
    if (d == 0)
      throw std::invalid_argument("normalized_laplacian: isolated node " + std::to_string(v));
    inv_sqrt_deg[static_cast<size_t>(v)] = 1.0 / std::sqrt(static_cast<double>(d));
  }
  Matrix m = Matrix::identity(n);
  for (const auto& [u, v] : g.edges()) {
    const double w = -inv_sqrt_deg[static_cast<size_t>(u)] * inv_sqrt_deg[static_cast<size_t>(v)];
    m.at(u, v) = w;
    m.at(v, u) = w;
  }
  return m;
}

Matrix combinatorial_laplacian(const Graph& g) {
  const int n = g.num_nodes();
  Matrix m = Matrix::zero(n);
  for (int v = 0; v < n; ++v) m.at(v, v) = static_cast<double>(g.degree(v));
  for (const auto& [u, v] : g.edges()) {
    m.at(u, v) = -1.0;
    m.at(v, u) = -1.0;
  }
  return m;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      if (i != j) sum += a.at(i, j) * a.at(i, j);
  return std::sqrt(sum);
}

}  // namespace

EigenResult jacobi_eigen(Matrix a, double off_tol) {
  const int n = a.n;
  Matrix vt = Matrix::identity(n);  // rows accumulate the eigenvectors
  if (n == 0) return {{}, vt};

  const auto& k = kernels::active();
  constexpr int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) < off_tol) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (apq == 0.0) continue;
        const double app = a.at(p, p);
        const double aqq = a.at(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Rotate rows p and q, then mirror onto the columns; the 2x2 block
        // gets its closed form so the matrix stays exactly symmetric.
        k.rotate_rows(a.row(p), a.row(q), n, c, s);
        for (int i = 0; i < n; ++i) {
          a.at(i, p) = a.at(p, i);
          a.at(i, q) = a.at(q, i);
        }
        a.at(p, p) = app - t * apq;
        a.at(q, q) = aqq + t * apq;
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;

        k.rotate_rows(vt.row(p), vt.row(q), n, c, s);
      }
    }
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a.at(i, i) < a.at(j, j); });

  EigenResult result;
  result.values.resize(static_cast<size_t>(n));
  result.vectors = Matrix::zero(n);
  for (int k2 = 0; k2 < n; ++k2) {
    const int src = order[static_cast<size_t>(k2)];
    result.values[static_cast<size_t>(k2)] = a.at(src, src);
    std::copy(vt.row(src), vt.row(src) + n, result.vectors.row(k2));
  }
  return result;
}

SpectralSummary spectral_gap(const Graph& g) {
  if (g.num_nodes() < 2) throw std::invalid_argument("spectral_gap: need n >= 2");
  if (!is_connected(g)) throw std::invalid_argument("spectral_gap: graph is disconnected");
  EigenResult eig = jacobi_eigen(normalized_laplacian(g));
  return {eig.values[1], std::move(eig.values)};
}

}  // namespace ga
