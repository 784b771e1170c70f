#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "ga/layout.hpp"
#include "ga/spectral.hpp"

using namespace ga;
using namespace ga::layout_detail;

namespace {

double dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

TEST_CASE("normalization fits the margin box and is idempotent") {
  Layout layout;
  layout.positions = {{-3.0, 2.0}, {5.0, -1.0}, {0.0, 0.5}, {2.0, 7.0}};
  normalize_layout(layout);
  auto check_box = [&](const Layout& l) {
    for (const auto& p : l.positions) {
      CHECK(p[0] >= 0.05 - 1e-12);
      CHECK(p[0] <= 0.95 + 1e-12);
      CHECK(p[1] >= 0.05 - 1e-12);
      CHECK(p[1] <= 0.95 + 1e-12);
    }
  };
  check_box(layout);
  Layout again = layout;
  normalize_layout(again);
  for (size_t i = 0; i < layout.positions.size(); ++i) {
    CHECK(again.positions[i][0] == doctest::Approx(layout.positions[i][0]).epsilon(1e-12));
    CHECK(again.positions[i][1] == doctest::Approx(layout.positions[i][1]).epsilon(1e-12));
  }

  Layout coincident;
  coincident.positions = {{3.0, 3.0}, {3.0, 3.0}};
  normalize_layout(coincident);
  for (const auto& p : coincident.positions) {
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.5));
  }
}

TEST_CASE("kamada_kawai: K_3 is equilateral, P_2 spans the ideal distance") {
  const auto tri = kamada_kawai_raw(complete_graph(3));
  const double d01 = dist(tri[0], tri[1]);
  const double d02 = dist(tri[0], tri[2]);
  const double d12 = dist(tri[1], tri[2]);
  CHECK(std::abs(d01 - d02) < 1e-3);
  CHECK(std::abs(d01 - d12) < 1e-3);

  const auto pair = kamada_kawai_raw(path_graph(2));
  CHECK(dist(pair[0], pair[1]) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("kamada_kawai stress never exceeds the circular start") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(3, 25);
    const Graph g = oracles::random_connected_graph(n, rng.uniform(0.2, 0.6), rng);
    const auto d = shortest_path_distances(g);

    int diameter = 1;
    for (const auto& row : d)
      for (int v : row) diameter = std::max(diameter, v);
    auto start = circular_raw(n);
    for (auto& p : start) {
      p[0] *= 0.5 * diameter;
      p[1] *= 0.5 * diameter;
    }
    const double initial = kk_stress(start, d);
    const double final_stress = kk_stress(kamada_kawai_raw(g), d);
    CHECK(final_stress <= initial + 1e-9);
  }
}

TEST_CASE("forceatlas2 determinism and clique separation") {
  Rng graph_rng(5);
  const Graph g = oracles::random_connected_graph(20, 0.3, graph_rng);
  const Layout a = forceatlas2(g, 100, 42);
  const Layout b = forceatlas2(g, 100, 42);
  REQUIRE(a.positions.size() == b.positions.size());
  for (size_t i = 0; i < a.positions.size(); ++i) {
    CHECK(a.positions[i][0] == b.positions[i][0]);
    CHECK(a.positions[i][1] == b.positions[i][1]);
  }

  // Two cliques joined by one edge drift apart between iteration 10 and 300.
  EdgeList edges;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      edges.emplace_back(i, j);
      edges.emplace_back(6 + i, 6 + j);
    }
  edges.emplace_back(5, 6);
  const Graph cliques(12, std::move(edges));
  auto centroid_gap = [&](int iterations) {
    const auto pos = forceatlas2_raw(cliques, iterations, 7);
    double ax = 0, ay = 0, bx = 0, by = 0;
    for (int i = 0; i < 6; ++i) {
      ax += pos[static_cast<size_t>(i)][0];
      ay += pos[static_cast<size_t>(i)][1];
      bx += pos[static_cast<size_t>(6 + i)][0];
      by += pos[static_cast<size_t>(6 + i)][1];
    }
    return std::hypot(ax - bx, ay - by) / 6.0;
  };
  CHECK(centroid_gap(300) > centroid_gap(10));

  // Single node: no forces move it.
  const auto single_early = forceatlas2_raw(Graph(1, {}), 1, 3);
  const auto single_late = forceatlas2_raw(Graph(1, {}), 300, 3);
  CHECK(single_early[0][0] == single_late[0][0]);
  CHECK(single_early[0][1] == single_late[0][1]);
}

TEST_CASE("spectral layout: C_4 square, residuals, ones-orthogonality") {
  SUBCASE("C_4 forms a square") {
    const auto pos = spectral_raw(cycle_graph(4));
    const double side01 = dist(pos[0], pos[1]);
    const double side12 = dist(pos[1], pos[2]);
    const double side23 = dist(pos[2], pos[3]);
    const double side30 = dist(pos[3], pos[0]);
    const double diag02 = dist(pos[0], pos[2]);
    const double diag13 = dist(pos[1], pos[3]);
    CHECK(side01 == doctest::Approx(side12).epsilon(1e-6));
    CHECK(side12 == doctest::Approx(side23).epsilon(1e-6));
    CHECK(side23 == doctest::Approx(side30).epsilon(1e-6));
    CHECK(diag02 == doctest::Approx(side01 * std::sqrt(2.0)).epsilon(1e-6));
    CHECK(diag13 == doctest::Approx(diag02).epsilon(1e-6));
  }
  SUBCASE("coordinates orthogonal to the all-ones vector, residual < 1e-6") {
    Rng rng(31);
    for (int trial = 0; trial < 15; ++trial) {
      const Graph g = oracles::random_connected_graph(rng.uniform_int(4, 30), 0.3, rng);
      const auto pos = spectral_raw(g);
      const int n = g.num_nodes();
      double sum_x = 0.0, sum_y = 0.0;
      for (const auto& p : pos) {
        sum_x += p[0];
        sum_y += p[1];
      }
      CHECK(std::abs(sum_x) < 1e-6);
      CHECK(std::abs(sum_y) < 1e-6);

      // L x = lambda x within 1e-6 for both coordinate vectors.
      const Matrix lap = combinatorial_laplacian(g);
      const EigenResult eig = jacobi_eigen(lap);
      int first = 0;
      while (eig.values[static_cast<size_t>(first)] <= 1e-8) ++first;
      for (int axis = 0; axis < 2; ++axis) {
        const double lambda = eig.values[static_cast<size_t>(first + axis)];
        double residual = 0.0;
        for (int i = 0; i < n; ++i) {
          double lx = 0.0;
          for (int j = 0; j < n; ++j) lx += lap.at(i, j) * pos[static_cast<size_t>(j)][static_cast<size_t>(axis)];
          const double r = lx - lambda * pos[static_cast<size_t>(i)][static_cast<size_t>(axis)];
          residual += r * r;
        }
        CHECK(std::sqrt(residual) < 1e-6);
      }
    }
  }
  SUBCASE("star layouts compute; coincident positions are permitted") {
    const Layout layout = spectral_layout(star_graph(5));
    CHECK(layout.positions.size() == 6);
    for (const auto& p : layout.positions) {
      CHECK(std::isfinite(p[0]));
      CHECK(std::isfinite(p[1]));
    }
    // The degeneracy probe itself triggers on mostly-coincident layouts.
    Layout collapsed;
    collapsed.positions = {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.2, 0.1}};
    CHECK(degenerate_layout(collapsed));
  }
}

TEST_CASE("circular layout geometry") {
  const Layout l = circular_layout(complete_graph(4));
  // Normalized positions of angles {0, 90, 180, 270} degrees.
  const auto& p = l.positions;
  CHECK(dist(p[0], p[1]) == doctest::Approx(dist(p[1], p[2])).epsilon(1e-12));
  CHECK(dist(p[1], p[2]) == doctest::Approx(dist(p[2], p[3])).epsilon(1e-12));
  CHECK(dist(p[2], p[3]) == doctest::Approx(dist(p[3], p[0])).epsilon(1e-12));

  // Positions depend only on the node count, not the edge set.
  const Layout path_l = circular_layout(path_graph(4));
  for (size_t i = 0; i < 4; ++i) {
    CHECK(l.positions[i][0] == path_l.positions[i][0]);
    CHECK(l.positions[i][1] == path_l.positions[i][1]);
  }
}

TEST_CASE("layout determinism across repeated calls") {
  Rng rng(77);
  const Graph g = oracles::random_connected_graph(24, 0.25, rng);
  for (LayoutAlgorithm algo : {LayoutAlgorithm::kamada_kawai, LayoutAlgorithm::forceatlas2,
                               LayoutAlgorithm::spectral, LayoutAlgorithm::circular}) {
    const Layout a = compute_layout(algo, g, 99);
    const Layout b = compute_layout(algo, g, 99);
    REQUIRE(a.positions.size() == b.positions.size());
    for (size_t i = 0; i < a.positions.size(); ++i) {
      CHECK(a.positions[i][0] == b.positions[i][0]);
      CHECK(a.positions[i][1] == b.positions[i][1]);
    }
  }
}
