// Camera intrinsics and pose, 2D projections of the field of view, and
// 3D pyramidal-frustum membership.
#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "fovplan/geometry.hpp"

namespace fovplan {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr bool operator==(Point3, Point3) = default;
};

/// Cuboid room: x in [0, width], y in [0, length], z in [0, height].
struct RoomSpec {
  double width = 0.0;
  double length = 0.0;
  double height = 0.0;

  Rect footprint() const { return {width, length}; }
  /// The (y, z) side plane as a rect: horizontal extent length, vertical extent height.
  Rect side_plane() const { return {length, height}; }
  bool contains(Point3 p, double eps = kGeomEps) const {
    return p.x >= -eps && p.x <= width + eps && p.y >= -eps && p.y <= length + eps &&
           p.z >= -eps && p.z <= height + eps;
  }

  friend bool operator==(const RoomSpec&, const RoomSpec&) = default;
};

inline void check(const RoomSpec& room) {
  for (double v : {room.width, room.length, room.height})
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("room dimensions must be finite and > 0");
}

struct CameraIntrinsics {
  double half_angle_h = 0.0;
  double half_angle_v = 0.0;
  std::optional<double> range;

  friend bool operator==(const CameraIntrinsics&, const CameraIntrinsics&) = default;
};

inline void check(const CameraIntrinsics& intr) {
  constexpr double right = std::numbers::pi / 2.0;
  if (!(intr.half_angle_h > 0.0 && intr.half_angle_h < right) ||
      !(intr.half_angle_v > 0.0 && intr.half_angle_v < right))
    throw std::invalid_argument("camera half-angles must lie in (0, pi/2)");
  if (intr.range && !(*intr.range > 0.0)) throw std::invalid_argument("camera range must be > 0");
}

/// Apex position plus yaw (rotation about +z, 0 = +x) and pitch (elevation
/// of the bisector above the horizontal plane).
struct CameraPose {
  Point3 position;
  double yaw = 0.0;
  double pitch = 0.0;

  friend bool operator==(const CameraPose&, const CameraPose&) = default;
};

/// Maps any angle into [0, 2pi).
inline double normalize_angle(double a) {
  constexpr double turn = 2.0 * std::numbers::pi;
  a = std::fmod(a, turn);
  if (a < 0.0) a += turn;
  if (a >= turn) a = 0.0;
  return a;
}

inline Wedge top_view_wedge(const CameraPose& pose, const CameraIntrinsics& intr) {
  return {{pose.position.x, pose.position.y}, pose.yaw, intr.half_angle_h, intr.range};
}

/// Ceiling-mount side view in the (y, z) plane: pitch 0 looks straight down
/// (-z) and pitch tilts the bisector towards +y.
inline Wedge side_view_wedge(const CameraPose& pose, const CameraIntrinsics& intr) {
  return {{pose.position.y, pose.position.z},
          -std::numbers::pi / 2.0 + pose.pitch,
          intr.half_angle_v,
          intr.range};
}

/// Point coordinates in the camera frame: depth along the bisector, lateral
/// (left positive) and vertical offsets.
struct CameraFrameCoords {
  double depth = 0.0;
  double lateral = 0.0;
  double vertical = 0.0;
};

inline CameraFrameCoords to_camera_frame(Point3 p, const CameraPose& pose) {
  const double dx = p.x - pose.position.x;
  const double dy = p.y - pose.position.y;
  const double dz = p.z - pose.position.z;
  const Point2 yaw = direction(pose.yaw);
  const double forward = dx * yaw.x + dy * yaw.y;
  const double lateral = -dx * yaw.y + dy * yaw.x;
  const Point2 pitch = direction(pose.pitch);
  return {forward * pitch.x + dz * pitch.y, lateral, -forward * pitch.y + dz * pitch.x};
}

namespace detail {

inline bool within_depth(const CameraFrameCoords& c, const CameraIntrinsics& intr) {
  return c.depth >= -kGeomEps && (!intr.range || c.depth <= *intr.range + kGeomEps);
}

inline bool within_horizontal(const CameraFrameCoords& c, const CameraIntrinsics& intr) {
  return std::abs(c.lateral) <= c.depth * std::tan(intr.half_angle_h) + kGeomEps;
}

inline bool within_vertical(const CameraFrameCoords& c, const CameraIntrinsics& intr) {
  return std::abs(c.vertical) <= c.depth * std::tan(intr.half_angle_v) + kGeomEps;
}

}  // namespace detail

/// Membership in the rectangular pyramid spanned by the two half-angles,
/// cut at camera-frame depth `range` when one is set.
inline bool in_frustum_3d(Point3 p, const CameraPose& pose, const CameraIntrinsics& intr) {
  const CameraFrameCoords c = to_camera_frame(p, pose);
  return detail::within_depth(c, intr) && detail::within_horizontal(c, intr) &&
         detail::within_vertical(c, intr);
}

/// Top-view test AND side-view test, both taken in the camera's own axes.
inline bool covered_by_camera_frame_projections(Point3 p, const CameraPose& pose,
                                                const CameraIntrinsics& intr) {
  const CameraFrameCoords c = to_camera_frame(p, pose);
  const bool top = detail::within_depth(c, intr) && detail::within_horizontal(c, intr);
  const bool side = detail::within_depth(c, intr) && detail::within_vertical(c, intr);
  return top && side;
}

enum class SidePlane { xz, yz };

struct WorldSideProjection {
  SidePlane plane = SidePlane::yz;
  Wedge wedge;

  Point2 project(Point3 p) const {
    return plane == SidePlane::xz ? Point2{p.x, p.z} : Point2{p.y, p.z};
  }
};

namespace detail {

/// Range of a 2D wedge whose chord sits at depth `depth`.
inline std::optional<double> legs_for_depth(std::optional<double> depth, double half_angle) {
  if (!depth) return std::nullopt;
  return *depth / std::cos(half_angle);
}

}  // namespace detail

/// Side view in the world vertical plane closest to the camera heading:
/// (x, z) for yaw near 0 or pi, (y, z) for yaw near pi/2 or 3pi/2. The wedge
/// bisector is elevated by the pose pitch.
inline WorldSideProjection world_side_projection(const CameraPose& pose,
                                                 const CameraIntrinsics& intr) {
  const double yaw = normalize_angle(pose.yaw);
  const int quadrant = static_cast<int>(std::lround(yaw / (std::numbers::pi / 2.0))) % 4;
  const bool along_x = quadrant == 0 || quadrant == 2;
  const bool backwards = quadrant == 2 || quadrant == 3;
  WorldSideProjection out;
  out.plane = along_x ? SidePlane::xz : SidePlane::yz;
  const Point3 c = pose.position;
  out.wedge.apex = along_x ? Point2{c.x, c.z} : Point2{c.y, c.z};
  out.wedge.bisector_azimuth = backwards ? std::numbers::pi - pose.pitch : pose.pitch;
  out.wedge.half_angle = intr.half_angle_v;
  out.wedge.range = detail::legs_for_depth(intr.range, intr.half_angle_v);
  return out;
}

/// The decomposition read literally in world axes: the floor projection must
/// lie in the top-view wedge and the vertical-plane projection in the side
/// wedge. Exact only for axis-aligned, level cameras.
inline bool covered_by_world_projections(Point3 p, const CameraPose& pose,
                                         const CameraIntrinsics& intr) {
  Wedge top = top_view_wedge(pose, intr);
  top.range = detail::legs_for_depth(intr.range, intr.half_angle_h);
  if (!point_in_wedge({p.x, p.y}, top)) return false;
  const WorldSideProjection side = world_side_projection(pose, intr);
  return point_in_wedge(side.project(p), side.wedge);
}

}  // namespace fovplan
