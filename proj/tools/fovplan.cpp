// fovplan: plan and evaluate camera placements for a cuboid room.
//
//   fovplan <plan|eval|compare|count|render> --config <path> [--out <path>]
//           [--svg <path>] [--resolution <m>] [--format json|text] [--threads <n>]

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fovplan/fovplan.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Camera placement planning and coverage evaluation", "fovplan"};
  std::string command, config_path, out_path, svg_path, format = "json";
  std::optional<double> resolution;
  unsigned threads = 1;

  app.add_option("command", command, "plan | eval | compare | count | render")
      ->required()
      ->check(CLI::IsMember({"plan", "eval", "compare", "count", "render"}));
  app.add_option("--config", config_path, "JSON configuration file")->required();
  app.add_option("--out", out_path, "report output path (default stdout)");
  app.add_option("--svg", svg_path, "SVG output path");
  app.add_option("--resolution", resolution, "grid cell edge in metres")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", threads, "grid evaluation threads")->check(CLI::Range(1u, 256u));

  CLI11_PARSE(app, argc, argv);

  try {
    const fovplan::PlanConfig cfg = fovplan::parse_config(read_file(config_path));
    fovplan::RunOptions options;
    options.resolution = resolution;
    options.format = format == "text" ? fovplan::Format::text : fovplan::Format::json;
    options.threads = threads;
    options.want_svg = !svg_path.empty();
    const auto cmd = *fovplan::parse_command(command);
    const fovplan::RunOutput result = fovplan::run(cmd, cfg, options);

    if (cmd == fovplan::Command::render) {
      const std::string& target = !svg_path.empty() ? svg_path : out_path;
      if (target.empty())
        std::cout << *result.svg;
      else
        write_file(target, *result.svg);
      return 0;
    }
    if (out_path.empty())
      std::cout << result.report;
    else
      write_file(out_path, result.report);
    if (result.svg && !svg_path.empty()) write_file(svg_path, *result.svg);
  } catch (const fovplan::ConfigError& e) {
    std::cerr << "fovplan: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fovplan: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
