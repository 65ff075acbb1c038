// Coverage evaluation: cell-centre grid sampling, exact polygon-union
// cross-check for tilings, and measurement of the two-projection
// decomposition of the 3D field of view.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <vector>

#include "fovplan/camera.hpp"
#include "fovplan/geometry.hpp"
#include "fovplan/placement.hpp"

namespace fovplan {

enum class Plane { top_xy, side_yz };
enum class Method { grid, exact };

inline std::string_view to_string(Plane p) { return p == Plane::top_xy ? "top_xy" : "side_yz"; }
inline std::string_view to_string(Method m) { return m == Method::grid ? "grid" : "exact"; }

struct GridOptions {
  /// Cell edge length; exactly 0 selects the default min(extent) / 500.
  double resolution = 0.0;
  unsigned threads = 1;
  std::size_t cell_budget = 100'000'000;
};

/// Per-cell camera counts over a plane rectangle, sampled at cell centres.
/// Row-major with rows along the vertical axis; the last row/column may be a
/// partial cell when the extent is not a multiple of the resolution.
struct CoverageGrid {
  Plane plane = Plane::top_xy;
  double resolution = 0.0;
  double extent_u = 0.0;
  double extent_v = 0.0;
  std::size_t columns = 0;
  std::size_t rows = 0;
  std::vector<std::uint32_t> counts;

  std::uint32_t count(std::size_t col, std::size_t row) const { return counts[row * columns + col]; }

  std::pair<double, double> span_u(std::size_t col) const {
    return {col * resolution, std::min((col + 1) * resolution, extent_u)};
  }
  std::pair<double, double> span_v(std::size_t row) const {
    return {row * resolution, std::min((row + 1) * resolution, extent_v)};
  }
  Point2 cell_center(std::size_t col, std::size_t row) const {
    const auto [u0, u1] = span_u(col);
    const auto [v0, v1] = span_v(row);
    return {(u0 + u1) / 2.0, (v0 + v1) / 2.0};
  }
  double cell_area(std::size_t col, std::size_t row) const {
    const auto [u0, u1] = span_u(col);
    const auto [v0, v1] = span_v(row);
    return (u1 - u0) * (v1 - v0);
  }
};

struct CoverageReport {
  double coverage_ratio = 0.0;
  double overlap_ratio = 0.0;
  /// Fraction of plane area covered by exactly k cameras.
  std::map<int, double> k_histogram;
  std::size_t uncovered_cell_count = 0;
  std::size_t camera_count = 0;
  Method method = Method::grid;
  double resolution = 0.0;
  /// Side view only: covered fraction of the floor edge z = 0.
  std::optional<double> floor_coverage_ratio;
};

struct Evaluation {
  CoverageReport report;
  CoverageGrid grid;
};

inline double default_resolution(double extent_u, double extent_v) {
  return std::min(extent_u, extent_v) / 500.0;
}

namespace detail {

/// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

inline std::size_t cells_along(double extent, double resolution) {
  const double q = extent / resolution;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(q - 1e-9 * q)));
}

/// Runs body(row) for every row, split into contiguous chunks across threads.
template <typename Body>
void for_each_row(std::size_t rows, unsigned threads, Body&& body) {
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(rows, 1));
  if (workers == 1) {
    for (std::size_t r = 0; r < rows; ++r) body(r);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (rows + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk, end = std::min(rows, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &body] {
      for (std::size_t r = begin; r < end; ++r) body(r);
    });
  }
}

inline Evaluation evaluate_plane(const std::vector<Wedge>& wedges, const Rect& extent, Plane plane,
                                 const GridOptions& options) {
  check(extent);
  const double delta = options.resolution == 0.0
                           ? default_resolution(extent.width, extent.length)
                           : options.resolution;
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("grid resolution must be > 0");
  if (delta > std::min(extent.width, extent.length) / 10.0 * (1.0 + 1e-12))
    throw std::invalid_argument("grid resolution must be ≤ min(extent)/10");
  const double approx_cells = (extent.width / delta) * (extent.length / delta);
  if (approx_cells > static_cast<double>(options.cell_budget))
    throw std::invalid_argument("grid resolution exceeds the cell budget");
  for (const Wedge& w : wedges) check(w);

  Evaluation out;
  CoverageGrid& grid = out.grid;
  grid.plane = plane;
  grid.resolution = delta;
  grid.extent_u = extent.width;
  grid.extent_v = extent.length;
  grid.columns = cells_along(extent.width, delta);
  grid.rows = cells_along(extent.length, delta);
  grid.counts.assign(grid.columns * grid.rows, 0);

  for_each_row(grid.rows, options.threads, [&](std::size_t row) {
    for (std::size_t col = 0; col < grid.columns; ++col) {
      const Point2 p = grid.cell_center(col, row);
      std::uint32_t k = 0;
      for (const Wedge& w : wedges) k += point_in_wedge(p, w) ? 1u : 0u;
      grid.counts[row * grid.columns + col] = k;
    }
  });

  // Serial reduction in row-major order keeps the sums independent of threads.
  std::vector<CompensatedSum> area_by_k(wedges.size() + 1);
  CompensatedSum total;
  CoverageReport& report = out.report;
  for (std::size_t row = 0; row < grid.rows; ++row) {
    for (std::size_t col = 0; col < grid.columns; ++col) {
      const double a = grid.cell_area(col, row);
      const std::uint32_t k = grid.count(col, row);
      area_by_k[k].add(a);
      total.add(a);
      if (k == 0) ++report.uncovered_cell_count;
    }
  }
  for (std::size_t k = 0; k < area_by_k.size(); ++k)
    if (area_by_k[k].value() > 0.0)
      report.k_histogram[static_cast<int>(k)] = area_by_k[k].value() / total.value();

  const auto zero = report.k_histogram.find(0);
  report.coverage_ratio = 1.0 - (zero == report.k_histogram.end() ? 0.0 : zero->second);
  for (const auto& [k, fraction] : report.k_histogram)
    if (k >= 2) report.overlap_ratio += fraction;
  report.overlap_ratio = std::min(report.overlap_ratio, 1.0);
  report.camera_count = wedges.size();
  report.method = Method::grid;
  report.resolution = delta;
  return out;
}

}  // namespace detail

/// Grid coverage of the floor rectangle by the cameras' top-view wedges.
inline Evaluation evaluate_top(const Placement& placement, const GridOptions& options = {}) {
  if (placement.strategy == Strategy::side_equal)
    throw std::invalid_argument("evaluate_top needs a top-view or custom placement");
  check(placement.room);
  check(placement.intrinsics);
  std::vector<Wedge> wedges;
  wedges.reserve(placement.poses.size());
  for (const CameraPose& pose : placement.poses)
    wedges.push_back(top_view_wedge(pose, placement.intrinsics));
  return detail::evaluate_plane(wedges, placement.room.footprint(), Plane::top_xy, options);
}

/// Grid coverage of the (y, z) side rectangle by the ceiling side-view
/// wedges, plus the covered fraction of the floor edge z = 0.
inline Evaluation evaluate_side(const Placement& placement, const GridOptions& options = {}) {
  if (placement.strategy != Strategy::side_equal && placement.strategy != Strategy::custom)
    throw std::invalid_argument("evaluate_side needs a side_equal or custom placement");
  check(placement.room);
  check(placement.intrinsics);
  std::vector<Wedge> wedges;
  wedges.reserve(placement.poses.size());
  for (const CameraPose& pose : placement.poses)
    wedges.push_back(side_view_wedge(pose, placement.intrinsics));
  Evaluation out =
      detail::evaluate_plane(wedges, placement.room.side_plane(), Plane::side_yz, options);

  const CoverageGrid& grid = out.grid;
  double covered = 0.0, total = 0.0;
  for (std::size_t col = 0; col < grid.columns; ++col) {
    const auto [u0, u1] = grid.span_u(col);
    const Point2 floor{(u0 + u1) / 2.0, 0.0};
    const bool hit = std::any_of(wedges.begin(), wedges.end(),
                                 [&](const Wedge& w) { return point_in_wedge(floor, w); });
    total += u1 - u0;
    if (hit) covered += u1 - u0;
  }
  out.report.floor_coverage_ratio = covered / total;
  return out;
}

/// Clipped top-view field-of-view polygon of every camera, in pose order.
inline std::vector<ConvexPolygon> top_view_polygons(const Placement& placement) {
  std::vector<ConvexPolygon> out;
  out.reserve(placement.poses.size());
  for (const CameraPose& pose : placement.poses)
    out.push_back(wedge_to_polygon(top_view_wedge(pose, placement.intrinsics),
                                   placement.room.footprint()));
  return out;
}

inline std::vector<ConvexPolygon> side_view_polygons(const Placement& placement) {
  std::vector<ConvexPolygon> out;
  out.reserve(placement.poses.size());
  for (const CameraPose& pose : placement.poses)
    out.push_back(wedge_to_polygon(side_view_wedge(pose, placement.intrinsics),
                                   placement.room.side_plane()));
  return out;
}

struct PairOverlap {
  std::size_t first = 0;
  std::size_t second = 0;
  double area = 0.0;
};

struct UnionArea {
  double area = 0.0;
  std::vector<ConvexPolygon> polygons;
  std::vector<PairOverlap> pairwise;
  /// exact: inclusion-exclusion to second order; grid: triple overlaps were
  /// found and `area` comes from a fine grid at `fallback_resolution`.
  Method method = Method::exact;
  std::optional<double> fallback_resolution;
};

inline constexpr std::size_t kMaxExactCameras = 64;

/// Union area of the clipped top-view polygons. Uses sum-of-areas minus
/// pairwise intersections when no three polygons share interior area, and
/// falls back to a fine grid otherwise.
inline UnionArea exact_union_area(const Placement& placement, unsigned threads = 1) {
  if (placement.strategy == Strategy::side_equal)
    throw std::invalid_argument("exact_union_area needs a top-view placement");
  if (placement.poses.size() > kMaxExactCameras)
    throw std::invalid_argument("exact_union_area supports at most 64 cameras");
  check(placement.room);
  check(placement.intrinsics);

  UnionArea out;
  out.polygons = top_view_polygons(placement);
  const auto& polys = out.polygons;
  const double threshold = kGeomEps * placement.room.footprint().area();

  double area = 0.0;
  for (const ConvexPolygon& p : polys) area += polygon_area(p);

  bool triple = false;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      const ConvexPolygon both = clip_convex(polys[i], polys[j]);
      const double a = polygon_area(both);
      out.pairwise.push_back({i, j, a});
      area -= a;
      if (a <= threshold || triple) continue;
      for (std::size_t k = j + 1; k < polys.size() && !triple; ++k)
        triple = polygon_area(clip_convex(both, polys[k])) > threshold;
    }
  }

  if (!triple) {
    out.area = area;
    out.method = Method::exact;
    return out;
  }
  const Rect room = placement.room.footprint();
  GridOptions fine;
  fine.resolution = std::min(room.width, room.length) / 1000.0;
  fine.threads = threads;
  const Evaluation eval = evaluate_top(placement, fine);
  out.area = eval.report.coverage_ratio * room.area();
  out.method = Method::grid;
  out.fallback_resolution = fine.resolution;
  return out;
}

struct AgreementRecord {
  /// Fraction of samples where the camera-frame projections agree with the frustum.
  double camera_frame_rate = 0.0;
  /// Same for the world-axis projections.
  double world_frame_rate = 0.0;
  std::size_t samples = 0;
};

namespace detail {

template <typename Points>
AgreementRecord tally_agreement(const CameraPose& pose, const CameraIntrinsics& intr,
                                Points&& next_point, std::size_t samples) {
  std::size_t camera_agree = 0, world_agree = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point3 p = next_point(i);
    const bool truth = in_frustum_3d(p, pose, intr);
    camera_agree += covered_by_camera_frame_projections(p, pose, intr) == truth;
    world_agree += covered_by_world_projections(p, pose, intr) == truth;
  }
  const double n = static_cast<double>(samples);
  return {static_cast<double>(camera_agree) / n, static_cast<double>(world_agree) / n, samples};
}

}  // namespace detail

/// Measures how often the projection tests agree with the 3D frustum over
/// `samples` uniform points in the room (deterministic in `seed`).
inline AgreementRecord decomposition_agreement(const RoomSpec& room, const CameraPose& pose,
                                               const CameraIntrinsics& intr, std::size_t samples,
                                               std::uint64_t seed) {
  check(room);
  check(intr);
  if (samples < 1000) throw std::invalid_argument("decomposition_agreement needs ≥ 1000 samples");
  std::mt19937_64 rng(seed);
  return detail::tally_agreement(
      pose, intr,
      [&](std::size_t) {
        const double x = detail::unit_uniform(rng) * room.width;
        const double y = detail::unit_uniform(rng) * room.length;
        const double z = detail::unit_uniform(rng) * room.height;
        return Point3{x, y, z};
      },
      samples);
}

/// Same measurement over the centres of a cells^3 lattice.
inline AgreementRecord decomposition_agreement_grid(const RoomSpec& room, const CameraPose& pose,
                                                    const CameraIntrinsics& intr,
                                                    std::size_t cells) {
  check(room);
  check(intr);
  if (cells == 0) throw std::invalid_argument("decomposition_agreement_grid needs cells ≥ 1");
  const double n = static_cast<double>(cells);
  return detail::tally_agreement(
      pose, intr,
      [&](std::size_t i) {
        const std::size_t ix = i % cells, iy = (i / cells) % cells, iz = i / (cells * cells);
        return Point3{(ix + 0.5) / n * room.width, (iy + 0.5) / n * room.length,
                      (iz + 0.5) / n * room.height};
      },
      cells * cells * cells);
}

}  // namespace fovplan
