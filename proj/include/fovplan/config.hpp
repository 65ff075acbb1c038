// Strict JSON configuration for planning runs. Angles are degrees on disk and
// radians in memory.
#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fovplan/camera.hpp"
#include "fovplan/coverage.hpp"
#include "fovplan/placement.hpp"

namespace fovplan {

/// Schema violation; the message starts with the offending field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scenario { top_staggered, top_aligned, side_equal, random_top, custom };
enum class View { top, side };

inline std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::top_staggered: return "top_staggered";
    case Scenario::top_aligned: return "top_aligned";
    case Scenario::side_equal: return "side_equal";
    case Scenario::random_top: return "random_top";
    case Scenario::custom: return "custom";
  }
  return "custom";
}

inline std::string_view to_string(View v) { return v == View::top ? "top" : "side"; }

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct PlanConfig {
  RoomSpec room;
  CameraIntrinsics camera;
  Scenario scenario = Scenario::top_staggered;
  std::optional<int> count;
  std::vector<CameraPose> poses;
  std::optional<double> grid_resolution;
  std::uint64_t seed = 0;
  View view = View::top;
};

namespace detail {

using json = nlohmann::json;

[[noreturn]] inline void config_fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

inline void reject_unknown(const json& obj, const std::string& prefix,
                           std::initializer_list<std::string_view> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || item.key() == a;
    if (!known) config_fail(prefix + item.key(), "unknown field");
  }
}

inline const json& require_object(const json& parent, const std::string& key,
                                  const std::string& path) {
  if (!parent.contains(key)) config_fail(path, "required field missing");
  const json& v = parent.at(key);
  if (!v.is_object()) config_fail(path, "must be an object");
  return v;
}

inline std::optional<double> optional_number(const json& obj, const std::string& key,
                                             const std::string& path) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  const json& v = obj.at(key);
  if (!v.is_number()) config_fail(path, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) config_fail(path, "must be finite");
  return d;
}

inline double require_number(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key) || obj.at(key).is_null()) config_fail(path, "required field missing");
  return *optional_number(obj, key, path);
}

inline double require_positive(const json& obj, const std::string& key, const std::string& path) {
  const double v = require_number(obj, key, path);
  if (!(v > 0.0)) config_fail(path, "must be > 0");
  return v;
}

inline double require_half_angle(const json& obj, const std::string& key,
                                 const std::string& path) {
  const double deg = require_number(obj, key, path);
  if (!(deg > 0.0 && deg < 90.0)) config_fail(path, "must lie in (0, 90) degrees");
  return deg_to_rad(deg);
}

inline Scenario parse_scenario(const json& v) {
  if (!v.is_string()) config_fail("scenario", "must be a string");
  const std::string s = v.get<std::string>();
  for (Scenario sc : {Scenario::top_staggered, Scenario::top_aligned, Scenario::side_equal,
                      Scenario::random_top, Scenario::custom})
    if (s == to_string(sc)) return sc;
  config_fail("scenario",
              "must be one of top_staggered, top_aligned, side_equal, random_top, custom");
}

inline CameraPose parse_pose(const json& v, std::size_t index, const RoomSpec& room) {
  const std::string prefix = "poses[" + std::to_string(index) + "]";
  if (!v.is_object()) config_fail(prefix, "must be an object");
  reject_unknown(v, prefix + ".", {"x", "y", "z", "yaw_deg", "pitch_deg"});
  CameraPose pose;
  pose.position.x = require_number(v, "x", prefix + ".x");
  pose.position.y = require_number(v, "y", prefix + ".y");
  pose.position.z = optional_number(v, "z", prefix + ".z").value_or(room.height);
  pose.yaw = normalize_angle(deg_to_rad(require_number(v, "yaw_deg", prefix + ".yaw_deg")));
  const double pitch = optional_number(v, "pitch_deg", prefix + ".pitch_deg").value_or(0.0);
  if (!(pitch > -90.0 && pitch < 90.0))
    config_fail(prefix + ".pitch_deg", "must lie in (-90, 90) degrees");
  pose.pitch = deg_to_rad(pitch);

  const Point3 p = pose.position;
  if (p.x < -kGeomEps || p.x > room.width + kGeomEps)
    config_fail(prefix + ".x", "must lie in [0, room.width]");
  if (p.y < -kGeomEps || p.y > room.length + kGeomEps)
    config_fail(prefix + ".y", "must lie in [0, room.length]");
  if (p.z < -kGeomEps || p.z > room.height + kGeomEps)
    config_fail(prefix + ".z", "must lie in [0, room.height]");
  return pose;
}

}  // namespace detail

/// Parses and validates a configuration document. Unknown fields are
/// rejected. A missing count is filled from required_camera_count for the
/// top-view scenarios.
inline PlanConfig parse_config(std::string_view text) {
  using detail::config_fail;
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("document: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) config_fail("document", "must be a JSON object");
  detail::reject_unknown(doc, "", {"room", "camera", "scenario", "count", "poses",
                                   "grid_resolution", "seed", "view"});

  PlanConfig cfg;
  const json& room = detail::require_object(doc, "room", "room");
  detail::reject_unknown(room, "room.", {"width", "length", "height"});
  cfg.room.width = detail::require_positive(room, "width", "room.width");
  cfg.room.length = detail::require_positive(room, "length", "room.length");
  cfg.room.height = detail::require_positive(room, "height", "room.height");

  const json& cam = detail::require_object(doc, "camera", "camera");
  detail::reject_unknown(cam, "camera.", {"half_angle_h_deg", "half_angle_v_deg", "range"});
  cfg.camera.half_angle_h = detail::require_half_angle(cam, "half_angle_h_deg", "camera.half_angle_h_deg");
  cfg.camera.half_angle_v = detail::require_half_angle(cam, "half_angle_v_deg", "camera.half_angle_v_deg");
  cfg.camera.range = detail::optional_number(cam, "range", "camera.range");
  if (cfg.camera.range && !(*cfg.camera.range > 0.0)) config_fail("camera.range", "must be > 0");

  if (!doc.contains("scenario")) config_fail("scenario", "required field missing");
  cfg.scenario = detail::parse_scenario(doc.at("scenario"));

  if (doc.contains("count") && !doc.at("count").is_null()) {
    const json& c = doc.at("count");
    if (!c.is_number_integer()) config_fail("count", "must be an integer");
    const auto n = c.get<std::int64_t>();
    if (n < 1) config_fail("count", "count must be ≥ 1");
    if (n > 1'000'000) config_fail("count", "count must be ≤ 1000000");
    cfg.count = static_cast<int>(n);
  }

  const bool has_poses = doc.contains("poses") && !doc.at("poses").is_null();
  if (cfg.scenario == Scenario::custom) {
    if (!has_poses) config_fail("poses", "required for scenario custom");
    if (cfg.count) config_fail("count", "not allowed for scenario custom (use poses)");
    const json& list = doc.at("poses");
    if (!list.is_array()) config_fail("poses", "must be an array");
    for (std::size_t i = 0; i < list.size(); ++i)
      cfg.poses.push_back(detail::parse_pose(list[i], i, cfg.room));
  } else if (has_poses) {
    config_fail("poses", "only allowed for scenario custom");
  }

  if (doc.contains("view") && !doc.at("view").is_null()) {
    const json& v = doc.at("view");
    if (!v.is_string() || (v != "top" && v != "side")) config_fail("view", "must be top or side");
    cfg.view = v == "top" ? View::top : View::side;
    if (cfg.scenario != Scenario::custom &&
        cfg.view != (cfg.scenario == Scenario::side_equal ? View::side : View::top))
      config_fail("view", "conflicts with scenario");
  } else {
    cfg.view = cfg.scenario == Scenario::side_equal ? View::side : View::top;
  }

  cfg.grid_resolution = detail::optional_number(doc, "grid_resolution", "grid_resolution");
  if (cfg.grid_resolution && !(*cfg.grid_resolution > 0.0))
    config_fail("grid_resolution", "must be > 0");

  if (doc.contains("seed") && !doc.at("seed").is_null()) {
    const json& s = doc.at("seed");
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<std::int64_t>() < 0))
      config_fail("seed", "must be a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }

  if (!cfg.count) {
    switch (cfg.scenario) {
      case Scenario::top_staggered:
      case Scenario::top_aligned:
      case Scenario::random_top:
        cfg.count = required_camera_count(cfg.room, cfg.camera);
        break;
      case Scenario::side_equal:
        config_fail("count", "required for scenario side_equal");
      case Scenario::custom:
        break;
    }
  }
  return cfg;
}

/// Builds the placement a configuration describes.
inline Placement build_placement(const PlanConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::top_staggered: return staggered_top(cfg.room, cfg.camera, cfg.count);
    case Scenario::top_aligned: return aligned_top(cfg.room, cfg.camera, *cfg.count);
    case Scenario::side_equal: return equal_spacing_side(cfg.room, cfg.camera, *cfg.count);
    case Scenario::random_top: return random_top(cfg.room, cfg.camera, *cfg.count, cfg.seed);
    case Scenario::custom: return Placement{Strategy::custom, cfg.poses, cfg.room, cfg.camera};
  }
  throw std::logic_error("unhandled scenario");
}

}  // namespace fovplan
