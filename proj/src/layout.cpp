#include "ga/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ga/kernels.hpp"
#include "ga/rng.hpp"
#include "ga/spectral.hpp"

namespace ga {

const char* layout_algorithm_name(LayoutAlgorithm a) {
  switch (a) {
    case LayoutAlgorithm::kamada_kawai: return "kamada_kawai";
    case LayoutAlgorithm::forceatlas2: return "forceatlas2";
    case LayoutAlgorithm::spectral: return "spectral";
    case LayoutAlgorithm::circular: return "circular";
  }
  return "unknown";
}

LayoutAlgorithm layout_algorithm_from_name(const std::string& name) {
  for (LayoutAlgorithm a : {LayoutAlgorithm::kamada_kawai, LayoutAlgorithm::forceatlas2,
                            LayoutAlgorithm::spectral, LayoutAlgorithm::circular})
    if (name == layout_algorithm_name(a)) return a;
  throw std::invalid_argument("unknown layout algorithm: " + name);
}

void normalize_layout(Layout& layout) {
  constexpr double kMargin = 0.05;
  if (layout.positions.empty()) return;
  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
  double min_y = min_x, max_y = -min_x;
  for (const auto& p : layout.positions) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]))
      throw std::runtime_error("normalize_layout: non-finite coordinate");
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  const double cx = 0.5 * (min_x + max_x);
  const double cy = 0.5 * (min_y + max_y);
  const double scale = extent > 0.0 ? (1.0 - 2.0 * kMargin) / extent : 0.0;
  for (auto& p : layout.positions) {
    p[0] = 0.5 + (p[0] - cx) * scale;
    p[1] = 0.5 + (p[1] - cy) * scale;
  }
}

namespace layout_detail {

std::vector<std::vector<int>> shortest_path_distances(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<std::vector<int>> dist(static_cast<size_t>(n),
                                     std::vector<int>(static_cast<size_t>(n), -1));
  std::vector<int> queue;
  for (int s = 0; s < n; ++s) {
    auto& row = dist[static_cast<size_t>(s)];
    queue.clear();
    queue.push_back(s);
    row[static_cast<size_t>(s)] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      for (int v : g.neighbors(u)) {
        if (row[static_cast<size_t>(v)] == -1) {
          row[static_cast<size_t>(v)] = row[static_cast<size_t>(u)] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return dist;
}

double kk_stress(const std::vector<std::array<double, 2>>& pos,
                 const std::vector<std::vector<int>>& dist) {
  const int n = static_cast<int>(pos.size());
  double stress = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = static_cast<double>(dist[static_cast<size_t>(i)][static_cast<size_t>(j)]);
      const double w = 1.0 / (d * d);
      const double dx = pos[static_cast<size_t>(i)][0] - pos[static_cast<size_t>(j)][0];
      const double dy = pos[static_cast<size_t>(i)][1] - pos[static_cast<size_t>(j)][1];
      const double r = std::sqrt(dx * dx + dy * dy);
      stress += w * (r - d) * (r - d);
    }
  }
  return stress;
}

std::vector<std::array<double, 2>> circular_raw(int n) {
  std::vector<std::array<double, 2>> pos(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double angle = 2.0 * 3.14159265358979323846 * i / n;
    pos[static_cast<size_t>(i)] = {std::cos(angle), std::sin(angle)};
  }
  return pos;
}

namespace {

// Stress restricted to terms involving node m.
double local_stress(const std::vector<std::array<double, 2>>& pos,
                    const std::vector<std::vector<int>>& dist, int m, double x, double y) {
  const int n = static_cast<int>(pos.size());
  double stress = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == m) continue;
    const double d = static_cast<double>(dist[static_cast<size_t>(m)][static_cast<size_t>(j)]);
    const double w = 1.0 / (d * d);
    const double dx = x - pos[static_cast<size_t>(j)][0];
    const double dy = y - pos[static_cast<size_t>(j)][1];
    const double r = std::sqrt(dx * dx + dy * dy);
    stress += w * (r - d) * (r - d);
  }
  return stress;
}

}  // namespace

std::vector<std::array<double, 2>> kamada_kawai_raw(const Graph& g) {
  const int n = g.num_nodes();
  if (n == 0) return {};
  if (!is_connected(g)) throw std::invalid_argument("kamada_kawai: graph is disconnected");

  const auto dist = shortest_path_distances(g);
  int diameter = 1;
  for (const auto& row : dist)
    for (int d : row) diameter = std::max(diameter, d);

  // Circle initialization scaled to the graph's metric.
  std::vector<std::array<double, 2>> pos = circular_raw(n);
  const double radius = 0.5 * diameter;
  for (auto& p : pos) {
    p[0] *= radius;
    p[1] *= radius;
  }
  if (n == 1) return pos;

  constexpr double kGradientTol = 1e-4;
  constexpr int kMaxSweeps = 500;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double max_grad = 0.0;
    for (int m = 0; m < n; ++m) {
      // Gradient and Hessian of the stress with respect to node m.
      double gx = 0.0, gy = 0.0, hxx = 0.0, hyy = 0.0, hxy = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == m) continue;
        const double d = static_cast<double>(dist[static_cast<size_t>(m)][static_cast<size_t>(j)]);
        const double w = 1.0 / (d * d);
        const double dx = pos[static_cast<size_t>(m)][0] - pos[static_cast<size_t>(j)][0];
        const double dy = pos[static_cast<size_t>(m)][1] - pos[static_cast<size_t>(j)][1];
        double r = std::sqrt(dx * dx + dy * dy);
        if (r < 1e-12) r = 1e-12;
        const double r3 = r * r * r;
        gx += 2.0 * w * dx * (1.0 - d / r);
        gy += 2.0 * w * dy * (1.0 - d / r);
        hxx += 2.0 * w * (1.0 - d * dy * dy / r3);
        hyy += 2.0 * w * (1.0 - d * dx * dx / r3);
        hxy += 2.0 * w * d * dx * dy / r3;
      }
      const double grad_norm = std::sqrt(gx * gx + gy * gy);
      max_grad = std::max(max_grad, grad_norm);
      if (grad_norm < kGradientTol) continue;

      const double det = hxx * hyy - hxy * hxy;
      double step_x, step_y;
      if (std::abs(det) > 1e-12) {
        step_x = -(hyy * gx - hxy * gy) / det;
        step_y = -(hxx * gy - hxy * gx) / det;
      } else {
        step_x = -gx;
        step_y = -gy;
      }

      // Accept only strict descent; halve the step a few times otherwise.
      const double x0 = pos[static_cast<size_t>(m)][0];
      const double y0 = pos[static_cast<size_t>(m)][1];
      const double before = local_stress(pos, dist, m, x0, y0);
      double scale = 1.0;
      for (int halve = 0; halve < 5; ++halve) {
        const double x1 = x0 + scale * step_x;
        const double y1 = y0 + scale * step_y;
        if (local_stress(pos, dist, m, x1, y1) < before) {
          pos[static_cast<size_t>(m)][0] = x1;
          pos[static_cast<size_t>(m)][1] = y1;
          break;
        }
        scale *= 0.5;
      }
    }
    if (max_grad < kGradientTol) break;
  }
  return pos;
}

std::vector<std::array<double, 2>> forceatlas2_raw(const Graph& g, int iterations,
                                                   uint64_t seed) {
  const int n = g.num_nodes();
  if (n == 0) return {};
  constexpr double kScaling = 2.0;   // repulsion scaling
  constexpr double kSpeedKs = 0.1;
  constexpr double kSpeedKsMax = 10.0;
  constexpr double kJitterTolerance = 1.0;

  Rng rng(seed);
  std::vector<double> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n));
  std::vector<double> mass(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    xs[static_cast<size_t>(v)] = rng.uniform(-1.0, 1.0);
    ys[static_cast<size_t>(v)] = rng.uniform(-1.0, 1.0);
    mass[static_cast<size_t>(v)] = static_cast<double>(g.degree(v) + 1);
  }

  std::vector<double> fx(static_cast<size_t>(n)), fy(static_cast<size_t>(n));
  std::vector<double> prev_fx(static_cast<size_t>(n), 0.0), prev_fy(static_cast<size_t>(n), 0.0);
  double speed = 1.0;
  const auto& k = kernels::active();

  for (int it = 0; it < iterations; ++it) {
    std::fill(fx.begin(), fx.end(), 0.0);
    std::fill(fy.begin(), fy.end(), 0.0);

    for (int v = 0; v < n; ++v)
      k.repulsion(xs[static_cast<size_t>(v)], ys[static_cast<size_t>(v)],
                  kScaling * mass[static_cast<size_t>(v)], xs.data(), ys.data(), mass.data(), n, v,
                  &fx[static_cast<size_t>(v)], &fy[static_cast<size_t>(v)]);

    for (const auto& [u, v] : g.edges()) {
      const double dx = xs[static_cast<size_t>(u)] - xs[static_cast<size_t>(v)];
      const double dy = ys[static_cast<size_t>(u)] - ys[static_cast<size_t>(v)];
      fx[static_cast<size_t>(u)] -= dx;
      fy[static_cast<size_t>(u)] -= dy;
      fx[static_cast<size_t>(v)] += dx;
      fy[static_cast<size_t>(v)] += dy;
    }

    // Adaptive global speed from swing (force oscillation) vs traction.
    double total_swing = 0.0, total_traction = 0.0;
    for (int v = 0; v < n; ++v) {
      const double sw = std::hypot(fx[static_cast<size_t>(v)] - prev_fx[static_cast<size_t>(v)],
                                   fy[static_cast<size_t>(v)] - prev_fy[static_cast<size_t>(v)]);
      const double tr = 0.5 * std::hypot(fx[static_cast<size_t>(v)] + prev_fx[static_cast<size_t>(v)],
                                         fy[static_cast<size_t>(v)] + prev_fy[static_cast<size_t>(v)]);
      total_swing += mass[static_cast<size_t>(v)] * sw;
      total_traction += mass[static_cast<size_t>(v)] * tr;
    }
    if (total_swing > 0.0) {
      const double target = kJitterTolerance * kJitterTolerance * total_traction / total_swing;
      speed = std::min(target, 1.5 * speed);  // cap the ramp-up
    }

    for (int v = 0; v < n; ++v) {
      const double f = std::hypot(fx[static_cast<size_t>(v)], fy[static_cast<size_t>(v)]);
      if (f <= 0.0) continue;
      const double sw = std::hypot(fx[static_cast<size_t>(v)] - prev_fx[static_cast<size_t>(v)],
                                   fy[static_cast<size_t>(v)] - prev_fy[static_cast<size_t>(v)]);
      double factor = kSpeedKs * speed / (1.0 + speed * std::sqrt(sw));
      factor = std::min(factor, kSpeedKsMax / f);
      xs[static_cast<size_t>(v)] += fx[static_cast<size_t>(v)] * factor;
      ys[static_cast<size_t>(v)] += fy[static_cast<size_t>(v)] * factor;
    }
    prev_fx = fx;
    prev_fy = fy;
  }

  std::vector<std::array<double, 2>> pos(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) pos[static_cast<size_t>(v)] = {xs[static_cast<size_t>(v)], ys[static_cast<size_t>(v)]};
  return pos;
}

std::vector<std::array<double, 2>> spectral_raw(const Graph& g) {
  const int n = g.num_nodes();
  if (n < 3) throw std::invalid_argument("spectral_layout: need n >= 3");
  if (!is_connected(g)) throw std::invalid_argument("spectral_layout: graph is disconnected");

  EigenResult eig = jacobi_eigen(combinatorial_laplacian(g));
  // Skip the zero eigenvalue (exactly one for a connected graph); take the
  // next two eigenvectors. Jacobi's deterministic rotation order fixes the
  // basis for repeated eigenvalues.
  int first = 0;
  while (first < n && eig.values[static_cast<size_t>(first)] <= 1e-8) ++first;
  if (first + 1 >= n) throw std::runtime_error("spectral_layout: not enough nonzero eigenvalues");

  std::vector<std::array<double, 2>> pos(static_cast<size_t>(n));
  const double* vx = eig.vectors.row(first);
  const double* vy = eig.vectors.row(first + 1);
  for (int v = 0; v < n; ++v) pos[static_cast<size_t>(v)] = {vx[v], vy[v]};
  return pos;
}

}  // namespace layout_detail

Layout kamada_kawai(const Graph& g) {
  Layout layout{layout_detail::kamada_kawai_raw(g), LayoutAlgorithm::kamada_kawai};
  normalize_layout(layout);
  return layout;
}

Layout forceatlas2(const Graph& g, int iterations, uint64_t seed) {
  Layout layout{layout_detail::forceatlas2_raw(g, iterations, seed), LayoutAlgorithm::forceatlas2};
  normalize_layout(layout);
  return layout;
}

Layout spectral_layout(const Graph& g) {
  Layout layout{layout_detail::spectral_raw(g), LayoutAlgorithm::spectral};
  normalize_layout(layout);
  return layout;
}

Layout circular_layout(const Graph& g) {
  if (g.num_nodes() < 1) throw std::invalid_argument("circular_layout: need n >= 1");
  Layout layout{layout_detail::circular_raw(g.num_nodes()), LayoutAlgorithm::circular};
  normalize_layout(layout);
  return layout;
}

Layout compute_layout(LayoutAlgorithm algorithm, const Graph& g, uint64_t seed) {
  switch (algorithm) {
    case LayoutAlgorithm::kamada_kawai: return kamada_kawai(g);
    case LayoutAlgorithm::forceatlas2: return forceatlas2(g, kForceAtlas2Iterations, seed);
    case LayoutAlgorithm::spectral: return spectral_layout(g);
    case LayoutAlgorithm::circular: return circular_layout(g);
  }
  throw std::invalid_argument("compute_layout: bad algorithm");
}

bool degenerate_layout(const Layout& layout) {
  const size_t n = layout.positions.size();
  if (n == 0) return false;
  std::vector<std::array<double, 2>> sorted = layout.positions;
  std::sort(sorted.begin(), sorted.end());
  size_t best = 1, run = 1;
  for (size_t i = 1; i < n; ++i) {
    run = sorted[i] == sorted[i - 1] ? run + 1 : 1;
    best = std::max(best, run);
  }
  return best * 2 > n;
}

}  // namespace ga
