#ifndef GA_RENDER_HPP
#define GA_RENDER_HPP

#include <cstdint>
#include <vector>

#include "ga/graph.hpp"
#include "ga/layout.hpp"

namespace ga {

struct Color {
  uint8_t r = 0, g = 0, b = 0;
};

// Visual contract: skyblue discs with white borders over an opaque black
// background, white anti-aliased edges at width 1.5 and opacity 0.8. Pixel
// sizes are given at the 224 baseline and scale linearly with resolution.
struct RenderSpec {
  int resolution = 224;  // square; valid range [32, 1024]
  Color node_fill{135, 206, 235};
  Color node_border{255, 255, 255};
  Color edge_color{255, 255, 255};
  Color background{0, 0, 0};
  double node_radius = 4.0;   // px at 224
  double border_width = 1.0;  // px at 224
  double edge_width = 1.5;    // px at 224
  double edge_opacity = 0.8;
};

struct Image {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // RGB8, row-major

  uint8_t* pixel(int x, int y) { return pixels.data() + 3 * (static_cast<size_t>(y) * width + x); }
  const uint8_t* pixel(int x, int y) const {
    return pixels.data() + 3 * (static_cast<size_t>(y) * width + x);
  }
};

// Edges first, then nodes, alpha-composited. Deterministic: identical
// inputs produce identical bytes. Throws std::invalid_argument when the
// layout does not cover every node or the spec is out of range.
Image render_image(const Graph& g, const Layout& layout, const RenderSpec& spec = {});

}  // namespace ga

#endif  // GA_RENDER_HPP
