// Exact 2D primitives: points, convex polygons, field-of-view wedges.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fovplan {

/// Tolerance (room units) for collinearity and containment tests.
inline constexpr double kGeomEps = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

inline constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

/// Unit vector at `angle` radians from +x. Multiples of pi/2 map to exact axes.
inline Point2 direction(double angle) {
  constexpr double quarter = std::numbers::pi / 2.0;
  const double k = std::round(angle / quarter);
  if (std::abs(angle - k * quarter) < 1e-12) {
    switch (((static_cast<long long>(k) % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return {std::cos(angle), std::sin(angle)};
}

/// Axis-aligned room footprint: x in [0, width], y in [0, length].
struct Rect {
  double width = 0.0;
  double length = 0.0;

  double area() const { return width * length; }
  double diagonal() const { return std::hypot(width, length); }
  bool contains(Point2 p, double eps = kGeomEps) const {
    return p.x >= -eps && p.x <= width + eps && p.y >= -eps && p.y <= length + eps;
  }
};

inline void check(const Rect& r) {
  if (!(r.width > 0.0) || !(r.length > 0.0) || !std::isfinite(r.width) ||
      !std::isfinite(r.length))
    throw std::invalid_argument("rect dimensions must be finite and > 0");
}

/// Convex polygon with counterclockwise vertices, or the empty polygon.
///
/// Construction normalizes its input: near-duplicate and collinear vertices
/// are dropped, clockwise input is reversed, and anything degenerate (fewer
/// than three vertices or no area) collapses to empty. Convexity itself is
/// the caller's responsibility; every producer in this library emits convex
/// vertex chains.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  explicit ConvexPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    normalize();
  }

  static ConvexPolygon rectangle(const Rect& r) {
    return ConvexPolygon({{0.0, 0.0}, {r.width, 0.0}, {r.width, r.length}, {0.0, r.length}});
  }

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }

  double signed_area() const {
    double twice = 0.0;
    for (std::size_t i = 0, n = vertices_.size(); i < n; ++i)
      twice += cross(vertices_[i], vertices_[(i + 1) % n]);
    return 0.5 * twice;
  }

  bool is_convex(double eps = kGeomEps) const {
    const std::size_t n = vertices_.size();
    if (n == 0) return true;
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 a = vertices_[i], b = vertices_[(i + 1) % n], c = vertices_[(i + 2) % n];
      if (cross(b - a, c - b) < -eps * norm(b - a) * norm(c - b)) return false;
    }
    return true;
  }

  bool contains(Point2 p, double eps = kGeomEps) const {
    const std::size_t n = vertices_.size();
    if (n == 0) return false;
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 a = vertices_[i], b = vertices_[(i + 1) % n];
      if (cross(b - a, p - a) / norm(b - a) < -eps) return false;
    }
    return true;
  }

 private:
  void normalize() {
    auto& v = vertices_;
    std::vector<Point2> out;
    out.reserve(v.size());
    for (const Point2& p : v)
      if (out.empty() || norm(p - out.back()) > kGeomEps) out.push_back(p);
    while (out.size() > 1 && norm(out.front() - out.back()) <= kGeomEps) out.pop_back();

    // Drop vertices lying on the segment joining their neighbours.
    bool changed = true;
    while (changed && out.size() >= 3) {
      changed = false;
      for (std::size_t i = 0; i < out.size() && out.size() >= 3; ++i) {
        const std::size_t n = out.size();
        const Point2 a = out[(i + n - 1) % n], b = out[i], c = out[(i + 1) % n];
        const double base = norm(c - a);
        const double dist = base > 0.0 ? std::abs(cross(c - a, b - a)) / base : norm(b - a);
        if (dist <= kGeomEps) {
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          --i;
        }
      }
    }
    v = std::move(out);
    if (v.size() < 3) {
      v.clear();
      return;
    }
    const double area = signed_area();
    if (std::abs(area) <= kGeomEps * kGeomEps) {
      v.clear();
      return;
    }
    if (area < 0.0) std::reverse(v.begin(), v.end());
  }

  std::vector<Point2> vertices_;
};

/// Shoelace area; 0 for the empty polygon.
inline double polygon_area(const ConvexPolygon& poly) { return std::abs(poly.signed_area()); }

inline double polygon_perimeter(const ConvexPolygon& poly) {
  const auto& v = poly.vertices();
  double total = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) total += norm(v[(i + 1) % n] - v[i]);
  return total;
}

/// Intersection of two convex polygons (Sutherland-Hodgman against each
/// edge of `clip`). Boundary-inclusive within kGeomEps.
inline ConvexPolygon clip_convex(const ConvexPolygon& subject, const ConvexPolygon& clip) {
  if (subject.empty() || clip.empty()) return {};
  std::vector<Point2> out = subject.vertices();
  const auto& c = clip.vertices();
  for (std::size_t e = 0, m = c.size(); e < m && !out.empty(); ++e) {
    const Point2 a = c[e];
    const Point2 edge = c[(e + 1) % m] - a;
    const double len = norm(edge);
    const auto side = [&](Point2 p) { return cross(edge, p - a) / len; };

    std::vector<Point2> in = std::move(out);
    out.clear();
    for (std::size_t i = 0, n = in.size(); i < n; ++i) {
      const Point2 prev = in[(i + n - 1) % n];
      const Point2 cur = in[i];
      const double sp = side(prev), sc = side(cur);
      const bool prev_in = sp >= -kGeomEps, cur_in = sc >= -kGeomEps;
      if (prev_in != cur_in) {
        const double t = std::clamp(sp / (sp - sc), 0.0, 1.0);
        out.push_back(prev + t * (cur - prev));
      }
      if (cur_in) out.push_back(cur);
    }
  }
  return ConvexPolygon(std::move(out));
}

/// Angular field-of-view sector. With a range the sector closes into the
/// triangle whose two legs along the edge rays have length `range`.
struct Wedge {
  Point2 apex;
  double bisector_azimuth = 0.0;
  double half_angle = 0.0;
  std::optional<double> range;

  Point2 bisector() const { return direction(bisector_azimuth); }
  /// Edge rays, clockwise one first.
  std::pair<Point2, Point2> edge_directions() const {
    return {direction(bisector_azimuth - half_angle), direction(bisector_azimuth + half_angle)};
  }
};

inline void check(const Wedge& w) {
  if (!(w.half_angle > 0.0 && w.half_angle < std::numbers::pi / 2.0))
    throw std::invalid_argument("wedge half_angle must lie in (0, pi/2)");
  if (w.range && !(*w.range > 0.0)) throw std::invalid_argument("wedge range must be > 0");
  if (!std::isfinite(w.apex.x) || !std::isfinite(w.apex.y) || !std::isfinite(w.bisector_azimuth))
    throw std::invalid_argument("wedge apex and azimuth must be finite");
}

/// Boundary-inclusive membership. Uses depth along the bisector and lateral
/// offset, so the tolerance is linear in room units.
inline bool point_in_wedge(Point2 p, const Wedge& w) {
  const Point2 b = w.bisector();
  const Point2 d = p - w.apex;
  const double depth = dot(d, b);
  const double lateral = cross(b, d);
  if (depth < -kGeomEps) return false;
  if (std::abs(lateral) > depth * std::tan(w.half_angle) + kGeomEps) return false;
  if (w.range && depth > *w.range * std::cos(w.half_angle) + kGeomEps) return false;
  return true;
}

/// The part of `bounds` that lies inside the wedge.
inline ConvexPolygon wedge_to_polygon(const Wedge& w, const Rect& bounds) {
  check(w);
  check(bounds);
  const auto [lo, hi] = w.edge_directions();
  double leg = 0.0;
  if (w.range) {
    leg = *w.range;
  } else {
    const Point2 centre{bounds.width / 2.0, bounds.length / 2.0};
    const double reach = 4.0 * bounds.diagonal() + norm(w.apex - centre);
    leg = reach / std::cos(w.half_angle);
  }
  const ConvexPolygon sector({w.apex, w.apex + leg * lo, w.apex + leg * hi});
  return clip_convex(sector, ConvexPolygon::rectangle(bounds));
}

/// True iff the unit directions of `a` and `b` have cross product <= tol.
inline bool edges_parallel(Point2 a, Point2 b, double tol) {
  const double na = norm(a), nb = norm(b);
  if (!(na > 0.0) || !(nb > 0.0))
    throw std::invalid_argument("edges_parallel: zero-length direction");
  return std::abs(cross(a, b)) / (na * nb) <= tol;
}

}  // namespace fovplan
