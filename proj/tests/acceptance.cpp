// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// if any fails.
//   usage: acceptance <path-to-fovplan-cli> <scratch-dir>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fovplan/fovplan.hpp"
#include "oracles.hpp"

using namespace fovplan;
namespace fs = std::filesystem;
using oracle::deg;
using oracle::kPi;

namespace {

const RoomSpec kRoom{1, 5, 3};
const CameraIntrinsics k45{deg(45), deg(45), std::nullopt};

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double v, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

double grid_coverage(const Placement& p, double delta) {
  GridOptions opts;
  opts.resolution = delta;
  return evaluate_top(p, opts).report.coverage_ratio;
}

Outcome staggered_recurrence() {
  Outcome o;
  const Placement p = staggered_top(kRoom, k45, 6);
  const Point3 cam2 = p.poses[1].position;
  o.require(cam2.x == 1.0 && cam2.y == 4.0, "camera #2 at (" + fmt(cam2.x) + "," + fmt(cam2.y) + ")");
  const double step = kRoom.width * std::tan(deg(45));
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < p.poses.size(); ++k)
    worst = std::max(worst, std::abs(p.poses[k].position.y - p.poses[k + 1].position.y - step));
  o.require(worst <= 1e-12, "step error " + fmt(worst, "%.3g"));
  o.note("max step error " + fmt(worst, "%.3g"));
  return o;
}

Outcome corridor_scenario() {
  Outcome o;
  const int n = required_camera_count(kRoom, k45);
  o.require(n == 6, "required_camera_count = " + std::to_string(n));
  GridOptions opts;
  opts.resolution = 0.005;
  const CoverageReport r = evaluate_top(staggered_top(kRoom, k45, 6), opts).report;
  o.require(r.coverage_ratio >= 0.998, "coverage " + fmt(r.coverage_ratio));
  o.require(r.overlap_ratio <= 0.01, "overlap " + fmt(r.overlap_ratio));
  const UnionArea u = exact_union_area(staggered_top(kRoom, k45, 6));
  o.require(u.method == Method::exact, "exact union fell back to grid");
  o.require(std::abs(u.area - 5.0) <= 1e-6, "union area " + fmt(u.area, "%.9f"));
  double worst_pair = 0.0;
  for (const PairOverlap& po : u.pairwise) worst_pair = std::max(worst_pair, po.area);
  o.require(worst_pair <= 1e-9, "pairwise overlap " + fmt(worst_pair, "%.3g"));
  const std::size_t missing = evaluate_top(staggered_top(kRoom, k45, 5), opts).report.uncovered_cell_count;
  // Independent oracle agrees that five cameras leave a gap.
  const long oracle_missing = oracle::uncovered_cells(
      [](double x, double y) { return oracle::staggered_covered(x, y, 1, 5, deg(45), 5); }, 1, 5, 0.005);
  o.require(missing >= 1 && oracle_missing >= 1, "n=5 uncovered cells " + std::to_string(missing));
  o.note("n=" + std::to_string(n) + " coverage " + fmt(r.coverage_ratio) + " overlap " +
         fmt(r.overlap_ratio) + " union " + fmt(u.area, "%.9f") + " n=5 uncovered " +
         std::to_string(missing));
  return o;
}

Outcome parallel_edges() {
  Outcome o;
  const Placement p = staggered_top(kRoom, k45, 6);
  int passed = 0;
  for (std::size_t k = 0; k + 1 < p.poses.size(); ++k) {
    const SightEdges a = sight_edges(top_view_wedge(p.poses[k], k45));
    const SightEdges b = sight_edges(top_view_wedge(p.poses[k + 1], k45));
    passed += edges_parallel(a.downward, b.upward, 1e-9);
  }
  o.require(passed == 5, std::to_string(passed) + "/5 pairs parallel");
  o.note(std::to_string(passed) + "/5 pairs parallel");
  return o;
}

Outcome baseline_dominance() {
  Outcome o;
  const PlanConfig cfg = parse_config(
      R"({"room":{"width":1,"length":5,"height":3},"camera":{"half_angle_h_deg":45,"half_angle_v_deg":45,"range":null},"scenario":"top_staggered","count":6,"grid_resolution":0.005})");
  const auto doc = nlohmann::json::parse(run(Command::compare, cfg).report);
  const double staggered = doc["strategies"][0]["coverage_ratio"];
  const double aligned = doc["strategies"][1]["coverage_ratio"];
  o.require(std::abs(staggered - 1.0) <= 0.002, "staggered " + fmt(staggered));
  o.require(std::abs(aligned - 0.792) <= 0.01, "aligned " + fmt(aligned));
  const double closed = 1.0 - oracle::aligned_uncovered_area_45(5, 6) / 5;
  const double grid = oracle::grid_area(
                          [](double x, double y) { return oracle::aligned_covered(x, y, 5, deg(45), 6); },
                          1, 5, 0.002) / 5;
  o.require(std::abs(closed - grid) <= 0.005, "closed form " + fmt(closed) + " vs grid " + fmt(grid));
  int losses = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    losses += grid_coverage(random_top(kRoom, k45, 6, seed), 0.005) > staggered;
  o.require(losses == 0, std::to_string(losses) + " random seeds beat staggered");
  o.note("staggered " + fmt(staggered) + " aligned " + fmt(aligned) + " closed form " + fmt(closed) +
         " oracle grid " + fmt(grid) + " random wins " + std::to_string(losses) + "/100");
  return o;
}

Outcome side_view() {
  Outcome o;
  const RoomSpec room{1, 5, 1};
  const Placement five = equal_spacing_side(room, k45, 5);
  for (std::size_t i = 1; i < five.poses.size(); ++i) {
    const double gap = five.poses[i].position.y - five.poses[i - 1].position.y;
    o.require(gap == 1.0, "spacing " + fmt(gap, "%.17g"));
  }
  GridOptions opts;
  opts.resolution = 0.005;
  const double f5 = *evaluate_side(five, opts).report.floor_coverage_ratio;
  const double f2 = *evaluate_side(equal_spacing_side(room, k45, 2), opts).report.floor_coverage_ratio;
  o.require(std::abs(f5 - 1.0) <= 0.002, "n=5 floor " + fmt(f5));
  o.require(std::abs(f2 - 0.8) <= 0.005, "n=2 floor " + fmt(f2));
  o.note("n=5 floor " + fmt(f5) + " n=2 floor " + fmt(f2));
  return o;
}

Outcome decomposition() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const RoomSpec room{4, 5, 3};
  double worst_camera = 1.0;
  for (int i = 0; i < 100; ++i) {
    const CameraPose pose{{unit(rng) * room.width, unit(rng) * room.length, unit(rng) * room.height},
                          unit(rng) * 2 * kPi, (unit(rng) - 0.5) * kPi * 0.9};
    CameraIntrinsics intr{deg(5 + 80 * unit(rng)), deg(5 + 80 * unit(rng)), std::nullopt};
    if (i % 3 == 0) intr.range = 0.5 + 4 * unit(rng);
    const AgreementRecord g = decomposition_agreement_grid(room, pose, intr, 50);
    const AgreementRecord r = decomposition_agreement(room, pose, intr, 100000, 1000 + i);
    worst_camera = std::min({worst_camera, g.camera_frame_rate, r.camera_frame_rate});
  }
  o.require(worst_camera == 1.0, "camera frame rate " + fmt(worst_camera, "%.8f"));

  double worst_world = 1.0;
  for (int q = 0; q < 4; ++q) {
    for (double range : {0.0, 2.5}) {
      const CameraPose pose{{2, 2.5, 1.5}, q * kPi / 2, 0.0};
      CameraIntrinsics intr{deg(40), deg(25), std::nullopt};
      if (range > 0) intr.range = range;
      worst_world = std::min({worst_world, decomposition_agreement_grid(room, pose, intr, 50).world_frame_rate,
                              decomposition_agreement(room, pose, intr, 100000, 77).world_frame_rate});
    }
  }
  o.require(worst_world == 1.0, "axis-aligned world rate " + fmt(worst_world, "%.8f"));

  const AgreementRecord yawed =
      decomposition_agreement(room, {{2, 2.5, 1.5}, deg(30), 0.0}, k45, 100000, 5);
  o.require(yawed.world_frame_rate < 1.0, "yaw 30 world rate is 1");
  o.note("camera frame min " + fmt(worst_camera) + " axis-aligned world min " + fmt(worst_world) +
         " yaw=30deg world rate " + fmt(yawed.world_frame_rate));
  return o;
}

Outcome oracle_consistency() {
  Outcome o;
  std::vector<Placement> suite = {staggered_top(kRoom, k45, 6), staggered_top(kRoom, k45, 5),
                                  aligned_top(kRoom, k45, 6), aligned_top(kRoom, k45, 3)};
  for (std::uint64_t seed : {0u, 1u, 7u, 42u}) suite.push_back(random_top(kRoom, k45, 6, seed));
  const CameraIntrinsics narrow{deg(30), deg(30), 2.0};
  suite.push_back(staggered_top({2, 6, 3}, narrow, 4));
  suite.push_back(Placement{Strategy::custom, {{{0, 1, 3}, deg(20), 0}, {{1, 3.5, 3}, deg(200), 0}}, kRoom, k45});

  double worst_margin = 1e300;
  for (const Placement& p : suite) {
    const Rect room = p.room.footprint();
    const UnionArea u = exact_union_area(p);
    const double exact = u.area / room.area();
    double perimeter = 0.0;
    for (const ConvexPolygon& poly : u.polygons) perimeter += polygon_perimeter(poly);
    for (double delta : {0.01, 0.005}) {
      const double bound = 2 * delta * perimeter / room.area();
      const double err = std::abs(grid_coverage(p, delta) - exact);
      worst_margin = std::min(worst_margin, bound - err);
      o.require(err <= bound, std::string(to_string(p.strategy)) + " delta " + fmt(delta) + " err " +
                                  fmt(err, "%.3g") + " > " + fmt(bound, "%.3g"));
    }
  }
  o.note(std::to_string(suite.size()) + " placements, min slack " + fmt(worst_margin, "%.3g"));
  return o;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const std::string& cli, const fs::path& dir) {
  Outcome o;
  const std::string config =
      R"({"room":{"width":1,"length":5,"height":3},"camera":{"half_angle_h_deg":45,"half_angle_v_deg":45,"range":null},"scenario":"top_staggered","count":5,"grid_resolution":0.005})";

  const PlanConfig cfg = parse_config(config);
  RunOptions base;
  base.want_svg = true;
  const RunOutput ref = run(Command::eval, cfg, base);
  for (unsigned threads : {1u, 2u, 8u}) {
    RunOptions opts = base;
    opts.threads = threads;
    const RunOutput again = run(Command::eval, cfg, opts);
    o.require(again.report == ref.report, "library report differs at threads " + std::to_string(threads));
    o.require(again.svg == ref.svg, "library svg differs at threads " + std::to_string(threads));
  }

  fs::create_directories(dir);
  const fs::path cfg_path = dir / "acceptance_determinism.json";
  std::ofstream(cfg_path) << config;
  std::string first_json, first_svg;
  int runs = 0;
  for (unsigned threads : {1u, 1u, 4u, 8u}) {
    const fs::path out = dir / ("acc_out_" + std::to_string(runs) + ".json");
    const fs::path svg = dir / ("acc_out_" + std::to_string(runs) + ".svg");
    const std::string cmd = "\"" + cli + "\" eval --config \"" + cfg_path.string() + "\" --out \"" +
                            out.string() + "\" --svg \"" + svg.string() + "\" --threads " +
                            std::to_string(threads);
    const int rc = std::system(cmd.c_str());
    o.require(rc == 0, "cli exit " + std::to_string(rc));
    const std::string j = slurp(out), s = slurp(svg);
    if (runs == 0) {
      first_json = j;
      first_svg = s;
      o.require(j == ref.report, "cli report differs from library");
    } else {
      o.require(j == first_json, "cli json differs on run " + std::to_string(runs));
      o.require(s == first_svg, "cli svg differs on run " + std::to_string(runs));
    }
    ++runs;
  }
  o.require(!first_json.empty() && !first_svg.empty(), "cli produced empty output");
  o.note("3 library + " + std::to_string(runs) + " cli runs compared");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <fovplan-cli> <scratch-dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path dir = argv[2];

  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"1 staggered recurrence", staggered_recurrence},
      {"2 five-metre corridor scenario", corridor_scenario},
      {"3 parallel sight edges", parallel_edges},
      {"4 baseline dominance", baseline_dominance},
      {"5 side view floor coverage", side_view},
      {"6 projection decomposition", decomposition},
      {"7 grid vs exact consistency", oracle_consistency},
      {"8 determinism", [&] { return determinism(cli, dir); }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.ok;
    std::printf("[%s] %s (%.2fs): %s\n", o.ok ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
