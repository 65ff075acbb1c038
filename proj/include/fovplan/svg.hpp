// SVG 1.1 rendering of a placement's field-of-view layout.
#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>

#include "fovplan/config.hpp"
#include "fovplan/coverage.hpp"
#include "fovplan/placement.hpp"

namespace fovplan {

namespace detail {

inline std::string svg_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

/// Room-to-canvas transform: uniform scale to a 1000-unit max dimension,
/// fixed margin, y flipped so larger room coordinates draw upward.
struct Canvas {
  static constexpr double kSize = 1000.0;
  static constexpr double kMargin = 20.0;
  double extent_u = 1.0;
  double extent_v = 1.0;
  double scale = 1.0;

  Canvas(double u, double v) : extent_u(u), extent_v(v), scale(kSize / std::max(u, v)) {}

  double x(double u) const { return kMargin + u * scale; }
  double y(double v) const { return kMargin + (extent_v - v) * scale; }
  double width() const { return extent_u * scale + 2 * kMargin; }
  double height() const { return extent_v * scale + 2 * kMargin; }
};

inline constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace detail

/// Draws the room, one translucent polygon per camera's clipped field of
/// view, apex markers with heading arrows and, when a grid is given, the
/// uncovered cells. Output is a pure function of the inputs.
inline std::string render_svg(const Placement& placement, View view,
                              const CoverageGrid* grid = nullptr) {
  using detail::svg_num;
  check(placement.room);
  const Rect extent =
      view == View::top ? placement.room.footprint() : placement.room.side_plane();
  const detail::Canvas c(extent.width, extent.length);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + svg_num(c.width()) +
         "\" height=\"" + svg_num(c.height()) + "\" viewBox=\"0 0 " + svg_num(c.width()) + " " +
         svg_num(c.height()) + "\">\n";
  out += "<title>" + std::string(to_string(placement.strategy)) + " (" +
         std::string(to_string(view)) + " view)</title>\n";
  out += "<rect class=\"room\" x=\"" + svg_num(c.x(0)) + "\" y=\"" + svg_num(c.y(extent.length)) +
         "\" width=\"" + svg_num(extent.width * c.scale) + "\" height=\"" +
         svg_num(extent.length * c.scale) + "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"2\"/>\n";

  if (grid != nullptr) {
    // Horizontal runs of uncovered cells, one subpath each.
    std::string d;
    for (std::size_t row = 0; row < grid->rows; ++row) {
      const auto [v0, v1] = grid->span_v(row);
      std::size_t col = 0;
      while (col < grid->columns) {
        if (grid->count(col, row) != 0) {
          ++col;
          continue;
        }
        const std::size_t start = col;
        while (col < grid->columns && grid->count(col, row) == 0) ++col;
        const double u0 = grid->span_u(start).first, u1 = grid->span_u(col - 1).second;
        d += "M" + svg_num(c.x(u0)) + " " + svg_num(c.y(v1)) + "H" + svg_num(c.x(u1)) + "V" +
             svg_num(c.y(v0)) + "H" + svg_num(c.x(u0)) + "Z";
      }
    }
    if (!d.empty())
      out += "<path class=\"uncovered\" fill=\"#888888\" fill-opacity=\"0.6\" d=\"" + d + "\"/>\n";
  }

  const auto polygons =
      view == View::top ? top_view_polygons(placement) : side_view_polygons(placement);
  out += "<g class=\"fov\" stroke=\"#333333\" stroke-width=\"1\">\n";
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    std::string pts;
    for (const Point2& p : polygons[i].vertices()) {
      if (!pts.empty()) pts += ' ';
      pts += svg_num(c.x(p.x)) + "," + svg_num(c.y(p.y));
    }
    out += "<polygon id=\"fov-" + std::to_string(i + 1) + "\" points=\"" + pts + "\" fill=\"" +
           detail::kPalette[i % detail::kPalette.size()] + "\" fill-opacity=\"0.35\"/>\n";
  }
  out += "</g>\n";

  out += "<g class=\"cameras\">\n";
  const double arrow = 0.06 * detail::Canvas::kSize;
  for (std::size_t i = 0; i < placement.poses.size(); ++i) {
    const Wedge w = view == View::top ? top_view_wedge(placement.poses[i], placement.intrinsics)
                                      : side_view_wedge(placement.poses[i], placement.intrinsics);
    const double ax = c.x(w.apex.x), ay = c.y(w.apex.y);
    const Point2 b = w.bisector();
    out += "<circle id=\"camera-" + std::to_string(i + 1) + "\" cx=\"" + svg_num(ax) + "\" cy=\"" +
           svg_num(ay) + "\" r=\"6\" fill=\"#000000\"/>\n";
    out += "<line x1=\"" + svg_num(ax) + "\" y1=\"" + svg_num(ay) + "\" x2=\"" +
           svg_num(ax + arrow * b.x) + "\" y2=\"" + svg_num(ay - arrow * b.y) +
           "\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + svg_num(ax + 8) + "\" y=\"" + svg_num(ay - 8) +
           "\" font-family=\"sans-serif\" font-size=\"14\">" + std::to_string(i + 1) + "</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace fovplan
