#include "ga/render.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ga/kernels.hpp"

namespace ga {

namespace {

// Coverage of a pixel center against a disc: 1 inside, 0 outside, linear
// ramp across the rim.
inline float disc_coverage(double dist, double radius) {
  return static_cast<float>(std::clamp(radius + 0.5 - dist, 0.0, 1.0));
}

void fill_disc(Image& img, double cx, double cy, double radius, Color color, double opacity) {
  const auto& k = kernels::active();
  const int x0 = std::max(0, static_cast<int>(std::floor(cx - radius - 1.0)));
  const int x1 = std::min(img.width - 1, static_cast<int>(std::ceil(cx + radius + 1.0)));
  const int y0 = std::max(0, static_cast<int>(std::floor(cy - radius - 1.0)));
  const int y1 = std::min(img.height - 1, static_cast<int>(std::ceil(cy + radius + 1.0)));
  if (x1 < x0 || y1 < y0) return;
  std::vector<float> alpha(static_cast<size_t>(x1 - x0 + 1));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      alpha[static_cast<size_t>(x - x0)] =
          disc_coverage(std::sqrt(dx * dx + dy * dy), radius) * static_cast<float>(opacity);
    }
    k.blend_span(img.pixel(x0, y), alpha.data(), x1 - x0 + 1, color.r, color.g, color.b);
  }
}

void draw_segment(Image& img, double ax, double ay, double bx, double by, double half_width,
                  Color color, double opacity) {
  const auto& k = kernels::active();
  const double pad = half_width + 1.0;
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(ax, bx) - pad)));
  const int x1 = std::min(img.width - 1, static_cast<int>(std::ceil(std::max(ax, bx) + pad)));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(ay, by) - pad)));
  const int y1 = std::min(img.height - 1, static_cast<int>(std::ceil(std::max(ay, by) + pad)));
  if (x1 < x0 || y1 < y0) return;

  const double ux = bx - ax;
  const double uy = by - ay;
  const double len2 = ux * ux + uy * uy;
  std::vector<float> alpha(static_cast<size_t>(x1 - x0 + 1));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double px = x + 0.5 - ax;
      const double py = y + 0.5 - ay;
      double t = len2 > 0.0 ? (px * ux + py * uy) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double dx = px - t * ux;
      const double dy = py - t * uy;
      alpha[static_cast<size_t>(x - x0)] =
          disc_coverage(std::sqrt(dx * dx + dy * dy), half_width) * static_cast<float>(opacity);
    }
    k.blend_span(img.pixel(x0, y), alpha.data(), x1 - x0 + 1, color.r, color.g, color.b);
  }
}

}  // namespace

Image render_image(const Graph& g, const Layout& layout, const RenderSpec& spec) {
  if (spec.resolution < 32 || spec.resolution > 1024)
    throw std::invalid_argument("render_image: resolution out of [32, 1024]");
  if (spec.edge_opacity < 0.0 || spec.edge_opacity > 1.0)
    throw std::invalid_argument("render_image: opacity out of [0, 1]");
  if (static_cast<int>(layout.positions.size()) < g.num_nodes())
    throw std::invalid_argument("render_image: layout missing node positions");

  const int res = spec.resolution;
  Image img{res, res, std::vector<uint8_t>(static_cast<size_t>(res) * res * 3)};
  for (size_t i = 0; i < img.pixels.size(); i += 3) {
    img.pixels[i] = spec.background.r;
    img.pixels[i + 1] = spec.background.g;
    img.pixels[i + 2] = spec.background.b;
  }

  const double scale = static_cast<double>(res) / 224.0;
  std::vector<std::array<double, 2>> px(static_cast<size_t>(g.num_nodes()));
  for (int v = 0; v < g.num_nodes(); ++v) {
    const auto& p = layout.positions[static_cast<size_t>(v)];
    px[static_cast<size_t>(v)] = {p[0] * res, (1.0 - p[1]) * res};  // image rows grow downward
  }

  const double half_width = 0.5 * spec.edge_width * scale;
  for (const auto& [u, v] : g.edges())
    draw_segment(img, px[static_cast<size_t>(u)][0], px[static_cast<size_t>(u)][1],
                 px[static_cast<size_t>(v)][0], px[static_cast<size_t>(v)][1], half_width,
                 spec.edge_color, spec.edge_opacity);

  const double radius = spec.node_radius * scale;
  const double border = spec.border_width * scale;
  for (int v = 0; v < g.num_nodes(); ++v) {
    fill_disc(img, px[static_cast<size_t>(v)][0], px[static_cast<size_t>(v)][1], radius + border,
              spec.node_border, 1.0);
    fill_disc(img, px[static_cast<size_t>(v)][0], px[static_cast<size_t>(v)][1], radius,
              spec.node_fill, 1.0);
  }
  return img;
}

}  // namespace ga
