// Command-line front end: one scene file in, one deterministic report out.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bbkit/scene.hpp"

int main(int argc, char** argv) {
  CLI::App app{"bbkit: exact and numerical toolkit for weighted C* actions"};
  std::string command, scene_path, format = "json", out_path;
  std::uint64_t seed = 0;
  int chart = 0;
  double tol = 0.0;

  app.add_option("command", command, "decompose|blowup|transform|indices|flow|verify")
      ->required();
  app.add_option("--scene", scene_path, "scene JSON file")->required();
  auto* chart_opt = app.add_option("--chart", chart, "restrict to one blowup chart");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed for randomized commands");
  auto* tol_opt = app.add_option("--tol", tol, "override the flow convergence tolerance");
  app.add_option("--format", format, "json|table")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--out", out_path, "write the report to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Flag/usage problems are input errors; --help exits cleanly.
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  bbkit::scene::RunFlags flags;
  if (chart_opt->count() > 0) flags.chart = chart;
  if (seed_opt->count() > 0) flags.seed = seed;
  if (tol_opt->count() > 0) flags.tol = tol;
  flags.format = format;

  try {
    bbkit::scene::Report report = bbkit::scene::run(command, scene_path, flags);
    const std::string& text = format == "json" ? report.json_text : report.table_text;
    if (!out_path.empty()) {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "bbkit: cannot write " << out_path << "\n";
        return 1;
      }
      out << text;
    } else {
      std::cout << text;
    }
    return report.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "bbkit: " << e.what() << "\n";
    return 1;
  }
}
