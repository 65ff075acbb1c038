// Command orchestration behind the fovplan CLI: plan, eval, compare, count
// and render, producing JSON/text reports and SVG layouts.
#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fovplan/config.hpp"
#include "fovplan/coverage.hpp"
#include "fovplan/placement.hpp"
#include "fovplan/svg.hpp"

namespace fovplan {

enum class Command { plan, eval, compare, count, render };
enum class Format { json, text };

/// Failure of a command on a schema-valid configuration.
class RunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::optional<Command> parse_command(std::string_view s) {
  if (s == "plan") return Command::plan;
  if (s == "eval") return Command::eval;
  if (s == "compare") return Command::compare;
  if (s == "count") return Command::count;
  if (s == "render") return Command::render;
  return std::nullopt;
}

struct RunOptions {
  /// Overrides the configuration's grid_resolution.
  std::optional<double> resolution;
  Format format = Format::json;
  unsigned threads = 1;
  /// Also produce an SVG for plan/eval.
  bool want_svg = false;
};

struct RunOutput {
  /// Report document; empty for render.
  std::string report;
  std::optional<std::string> svg;
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json pose_json(const CameraPose& pose) {
  return {{"x", pose.position.x},
          {"y", pose.position.y},
          {"z", pose.position.z},
          {"yaw_deg", rad_to_deg(pose.yaw)},
          {"pitch_deg", rad_to_deg(pose.pitch)}};
}

inline ordered_json coverage_json(const Placement& placement, View view,
                                  const CoverageReport& report) {
  ordered_json doc;
  doc["strategy"] = to_string(placement.strategy);
  doc["view"] = to_string(view);
  doc["camera_count"] = report.camera_count;
  ordered_json poses = ordered_json::array();
  for (const CameraPose& p : placement.poses) poses.push_back(pose_json(p));
  doc["poses"] = std::move(poses);
  doc["coverage_ratio"] = report.coverage_ratio;
  doc["overlap_ratio"] = report.overlap_ratio;
  ordered_json hist = ordered_json::object();
  for (const auto& [k, fraction] : report.k_histogram) hist[std::to_string(k)] = fraction;
  doc["k_histogram"] = std::move(hist);
  doc["uncovered_cell_count"] = report.uncovered_cell_count;
  doc["method"] = to_string(report.method);
  doc["resolution"] = report.resolution;
  if (report.floor_coverage_ratio) doc["floor_coverage_ratio"] = *report.floor_coverage_ratio;
  return doc;
}

inline std::string text_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string coverage_text(const ordered_json& doc) {
  std::ostringstream os;
  os << "strategy: " << doc["strategy"].get<std::string>() << " (" << doc["view"].get<std::string>()
     << " view)\n";
  os << "cameras: " << doc["camera_count"].get<std::size_t>() << "\n";
  std::size_t i = 0;
  for (const auto& p : doc["poses"]) {
    os << "  #" << ++i << " x=" << text_number(p["x"].get<double>())
       << " y=" << text_number(p["y"].get<double>()) << " z=" << text_number(p["z"].get<double>())
       << " yaw=" << text_number(p["yaw_deg"].get<double>())
       << " pitch=" << text_number(p["pitch_deg"].get<double>()) << "\n";
  }
  os << "coverage_ratio: " << text_number(doc["coverage_ratio"].get<double>()) << "\n";
  os << "overlap_ratio: " << text_number(doc["overlap_ratio"].get<double>()) << "\n";
  if (doc.contains("floor_coverage_ratio"))
    os << "floor_coverage_ratio: " << text_number(doc["floor_coverage_ratio"].get<double>()) << "\n";
  os << "k_histogram:";
  for (const auto& [k, f] : doc["k_histogram"].items()) os << " " << k << "=" << text_number(f.get<double>());
  os << "\n";
  os << "uncovered_cells: " << doc["uncovered_cell_count"].get<std::size_t>() << "\n";
  os << "method: " << doc["method"].get<std::string>()
     << " resolution: " << text_number(doc["resolution"].get<double>()) << "\n";
  if (doc.contains("exact")) {
    const auto& e = doc["exact"];
    os << "exact_union_area: " << text_number(e["union_area"].get<double>()) << " ("
       << e["method"].get<std::string>() << ")\n";
  }
  return os.str();
}

inline Evaluation evaluate_view(const Placement& placement, View view, const GridOptions& grid) {
  return view == View::top ? evaluate_top(placement, grid) : evaluate_side(placement, grid);
}

inline GridOptions grid_options(const PlanConfig& cfg, const RunOptions& options) {
  GridOptions grid;
  grid.threads = options.threads;
  if (options.resolution) {
    grid.resolution = *options.resolution;
  } else if (cfg.grid_resolution) {
    grid.resolution = *cfg.grid_resolution;
  } else {
    const Rect extent = cfg.view == View::top ? cfg.room.footprint() : cfg.room.side_plane();
    grid.resolution = default_resolution(extent.width, extent.length);
  }
  return grid;
}

inline void require_top_scenario(const PlanConfig& cfg, std::string_view command) {
  if (cfg.scenario == Scenario::side_equal || cfg.scenario == Scenario::custom)
    throw RunError(std::string(command) + " does not apply to scenario " +
                   std::string(to_string(cfg.scenario)));
}

inline std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace detail

/// Executes one command. Throws RunError (or std::invalid_argument from the
/// library) on failure.
inline RunOutput run(Command command, const PlanConfig& cfg, const RunOptions& options = {}) {
  using detail::ordered_json;
  RunOutput out;
  const GridOptions grid = detail::grid_options(cfg, options);

  try {
    switch (command) {
      case Command::plan:
      case Command::eval: {
        const Placement placement = build_placement(cfg);
        placement.validate();
        const Evaluation eval = detail::evaluate_view(placement, cfg.view, grid);
        ordered_json doc;
        doc["command"] = command == Command::plan ? "plan" : "eval";
        doc.update(detail::coverage_json(placement, cfg.view, eval.report));
        if (command == Command::eval) {
          doc["grid"] = {{"plane", to_string(eval.grid.plane)},
                         {"columns", eval.grid.columns},
                         {"rows", eval.grid.rows}};
          if (cfg.view == View::top && placement.poses.size() <= kMaxExactCameras) {
            const UnionArea u = exact_union_area(placement, options.threads);
            ordered_json exact;
            exact["union_area"] = u.area;
            exact["coverage_ratio"] =
                std::clamp(u.area / cfg.room.footprint().area(), 0.0, 1.0);
            exact["method"] = to_string(u.method);
            if (u.fallback_resolution) exact["resolution"] = *u.fallback_resolution;
            doc["exact"] = std::move(exact);
          }
        }
        out.report = options.format == Format::json ? detail::dump(doc) : detail::coverage_text(doc);
        if (options.want_svg) out.svg = render_svg(placement, cfg.view, &eval.grid);
        break;
      }
      case Command::compare: {
        detail::require_top_scenario(cfg, "compare");
        const int n = *cfg.count;
        const Placement candidates[] = {staggered_top(cfg.room, cfg.camera, n),
                                        aligned_top(cfg.room, cfg.camera, n),
                                        random_top(cfg.room, cfg.camera, n, cfg.seed)};
        ordered_json rows = ordered_json::array();
        double resolution = 0.0;
        for (const Placement& p : candidates) {
          const CoverageReport r = evaluate_top(p, grid).report;
          resolution = r.resolution;
          rows.push_back({{"strategy", to_string(p.strategy)},
                          {"coverage_ratio", r.coverage_ratio},
                          {"overlap_ratio", r.overlap_ratio}});
        }
        if (options.format == Format::json) {
          ordered_json doc;
          doc["command"] = "compare";
          doc["camera_count"] = n;
          doc["resolution"] = resolution;
          doc["seed"] = cfg.seed;
          doc["strategies"] = std::move(rows);
          out.report = detail::dump(doc);
        } else {
          std::ostringstream os;
          os << "cameras: " << n << "  resolution: " << detail::text_number(resolution) << "\n";
          os << "strategy         coverage   overlap\n";
          for (const auto& r : rows) {
            char line[96];
            std::snprintf(line, sizeof line, "%-15s  %.6f   %.6f\n",
                          r["strategy"].get<std::string>().c_str(),
                          r["coverage_ratio"].get<double>(), r["overlap_ratio"].get<double>());
            os << line;
          }
          out.report = os.str();
        }
        break;
      }
      case Command::count: {
        detail::require_top_scenario(cfg, "count");
        const int n = required_camera_count(cfg.room, cfg.camera);
        if (options.format == Format::json) {
          ordered_json doc;
          doc["command"] = "count";
          doc["camera_count"] = n;
          out.report = detail::dump(doc);
        } else {
          out.report = std::to_string(n) + "\n";
        }
        break;
      }
      case Command::render: {
        const Placement placement = build_placement(cfg);
        if (!placement.poses.empty()) placement.validate();
        const Evaluation eval = detail::evaluate_view(placement, cfg.view, grid);
        out.svg = render_svg(placement, cfg.view, &eval.grid);
        break;
      }
    }
  } catch (const std::invalid_argument& e) {
    throw RunError(e.what());
  }
  return out;
}

}  // namespace fovplan
