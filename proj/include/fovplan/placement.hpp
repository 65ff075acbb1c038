// Placement strategies: staggered opposite-wall top view, required camera
// count, equal ceiling spacing for the side view, and the aligned/random
// baselines.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fovplan/camera.hpp"

namespace fovplan {

enum class Strategy { staggered_top, aligned_top, side_equal, random_top, custom };

inline std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::staggered_top: return "staggered_top";
    case Strategy::aligned_top: return "aligned_top";
    case Strategy::side_equal: return "side_equal";
    case Strategy::random_top: return "random_top";
    case Strategy::custom: return "custom";
  }
  return "custom";
}

struct Placement {
  Strategy strategy = Strategy::custom;
  std::vector<CameraPose> poses;
  RoomSpec room;
  CameraIntrinsics intrinsics;

  /// Throws std::invalid_argument when the pose list is empty or a pose sits
  /// off the surface its strategy mounts on.
  void validate() const {
    check(room);
    check(intrinsics);
    if (poses.empty()) throw std::invalid_argument("placement has no cameras");
    for (std::size_t i = 0; i < poses.size(); ++i) {
      const Point3 p = poses[i].position;
      const std::string where = "camera " + std::to_string(i + 1);
      if (!room.contains(p)) throw std::invalid_argument(where + " lies outside the room");
      switch (strategy) {
        case Strategy::staggered_top:
        case Strategy::aligned_top:
        case Strategy::random_top:
          if (std::abs(p.x) > kGeomEps && std::abs(p.x - room.width) > kGeomEps)
            throw std::invalid_argument(where + " is not on wall x=0 or x=w");
          break;
        case Strategy::side_equal:
          if (std::abs(p.z - room.height) > kGeomEps)
            throw std::invalid_argument(where + " is not on the ceiling");
          break;
        case Strategy::custom:
          break;
      }
      if (!(std::abs(poses[i].pitch) < std::numbers::pi / 2.0))
        throw std::invalid_argument(where + " pitch must lie in (-pi/2, pi/2)");
    }
  }
};

namespace detail {

inline void check_count(int n) {
  if (n <= 0) throw std::invalid_argument("count must be ≥ 1");
}

/// Vertical advance between consecutive staggered cameras.
inline double stagger_step(const RoomSpec& room, const CameraIntrinsics& intr) {
  return room.width * std::tan(intr.half_angle_h);
}

}  // namespace detail

/// Least n for which the staggered scheme covers the floor:
/// ceil(l / (w tan a)) + 1, with the quotient snapped to an integer when it
/// is within a relative 1e-9 of one.
inline int required_camera_count(const RoomSpec& room, const CameraIntrinsics& intr) {
  check(room);
  check(intr);
  const double q = room.length / detail::stagger_step(room, intr);
  const double m = std::ceil(q - 1e-9 * std::max(1.0, q));
  return static_cast<int>(std::max(0.0, m)) + 1;
}

/// Opposite-wall zig-zag. Camera 1 sits in the corner (0, l) looking +x; each
/// next camera drops by w tan a and switches walls, so consecutive sight
/// edges are parallel. Positions below the floor clamp to y = 0.
inline Placement staggered_top(const RoomSpec& room, const CameraIntrinsics& intr,
                               std::optional<int> n = std::nullopt) {
  check(room);
  check(intr);
  const int count = n ? *n : required_camera_count(room, intr);
  detail::check_count(count);
  const double step = detail::stagger_step(room, intr);
  if (!(step > 0.0)) throw std::invalid_argument("staggered step w tan a is zero");

  Placement out{Strategy::staggered_top, {}, room, intr};
  out.poses.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const bool left = k % 2 == 0;
    const double y = std::max(0.0, room.length - k * step);
    out.poses.push_back({{left ? 0.0 : room.width, y, room.height},
                         left ? 0.0 : std::numbers::pi,
                         0.0});
  }
  return out;
}

/// All cameras on wall x=0 looking +x, at midpoints y = (2i-1) l / 2n.
inline Placement aligned_top(const RoomSpec& room, const CameraIntrinsics& intr, int n) {
  check(room);
  check(intr);
  detail::check_count(n);
  Placement out{Strategy::aligned_top, {}, room, intr};
  for (int i = 1; i <= n; ++i)
    out.poses.push_back({{0.0, (2 * i - 1) * room.length / (2.0 * n), room.height}, 0.0, 0.0});
  return out;
}

/// Ceiling cameras looking straight down, spaced l/n apart at midpoints.
inline Placement equal_spacing_side(const RoomSpec& room, const CameraIntrinsics& intr, int n) {
  check(room);
  check(intr);
  detail::check_count(n);
  Placement out{Strategy::side_equal, {}, room, intr};
  for (int i = 1; i <= n; ++i)
    out.poses.push_back(
        {{room.width / 2.0, (2 * i - 1) * room.length / (2.0 * n), room.height}, 0.0, 0.0});
  return out;
}

namespace detail {

/// Uniform double in [0, 1) from the top 53 bits; independent of the
/// standard library's distribution implementation.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in the open interval (0, 1).
inline double unit_uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace detail

/// Random wall positions on x=0 / x=w, bisector pointing into the room.
inline Placement random_top(const RoomSpec& room, const CameraIntrinsics& intr, int n,
                            std::uint64_t seed) {
  check(room);
  check(intr);
  detail::check_count(n);
  std::mt19937_64 rng(seed);
  Placement out{Strategy::random_top, {}, room, intr};
  constexpr double pi = std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    const bool left = detail::unit_uniform(rng) < 0.5;
    const double y = detail::unit_uniform(rng) * room.length;
    const double off = (detail::unit_uniform_open(rng) - 0.5) * pi;
    out.poses.push_back({{left ? 0.0 : room.width, y, room.height},
                         normalize_angle(left ? off : pi + off),
                         0.0});
  }
  return out;
}

/// Sight-edge directions of a top-view wedge, ordered by vertical component.
struct SightEdges {
  Point2 downward;
  Point2 upward;
};

inline SightEdges sight_edges(const Wedge& w) {
  const auto [a, b] = w.edge_directions();
  return a.y <= b.y ? SightEdges{a, b} : SightEdges{b, a};
}

}  // namespace fovplan
