#ifndef GA_SPECTRAL_HPP
#define GA_SPECTRAL_HPP

#include <vector>

#include "ga/graph.hpp"

namespace ga {

// Dense square matrix, row-major.
struct Matrix {
  int n = 0;
  std::vector<double> data;

  static Matrix zero(int n) { return {n, std::vector<double>(static_cast<size_t>(n) * n, 0.0)}; }
  static Matrix identity(int n) {
    Matrix m = zero(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
  double& at(int i, int j) { return data[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return data[static_cast<size_t>(i) * n + j]; }
  double* row(int i) { return data.data() + static_cast<size_t>(i) * n; }
  const double* row(int i) const { return data.data() + static_cast<size_t>(i) * n; }
};

// L = I - D^(-1/2) A D^(-1/2). Throws std::invalid_argument if any node is
// isolated (degree 0); run ensure_connected first.
Matrix normalized_laplacian(const Graph& g);

// L = D - A.
Matrix combinatorial_laplacian(const Graph& g);

struct EigenResult {
  std::vector<double> values;  // ascending
  Matrix vectors;              // row k is the eigenvector for values[k]
};

// Cyclic Jacobi rotations on a symmetric matrix. Iterates sweeps until the
// off-diagonal Frobenius norm drops below off_tol. Deterministic.
EigenResult jacobi_eigen(Matrix a, double off_tol = 1e-10);

struct SpectralSummary {
  double lambda2 = 0.0;
  std::vector<double> eigenvalues;  // ascending, in [0, 2] up to tolerance
};

// Full eigendecomposition of the normalized Laplacian; lambda2 is the
// second-smallest eigenvalue. Requires a connected graph with n >= 2.
SpectralSummary spectral_gap(const Graph& g);

}  // namespace ga

#endif  // GA_SPECTRAL_HPP
