#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbkit/flow_lab.hpp"
#include "bbkit/ideal_engine.hpp"
#include "bbkit/weights_core.hpp"

namespace bbkit::scene {

// One experiment description, loaded from a JSON document. Polynomial strings
// use the ideal_engine grammar; seeds are either explicit complex points or
// the string "random:<count>[:<rng-seed>]".
struct SceneFlow {
  std::vector<PointC> explicit_seeds;
  std::optional<int> random_count;
  std::optional<std::uint64_t> random_seed;
  FlowConfig config;
};

struct Scene {
  int n = 0;
  WeightVector weights;
  std::optional<int> center_dim;
  std::vector<std::string> ideal_text;
  std::vector<Poly> ideal;
  std::optional<SceneFlow> flow;
  std::optional<ConeSpec> cone;
  double verify_trial_scale = 1.0;
};

// Reads and validates a scene file. Throws ParseError / ShapeError /
// DomainError with messages naming the offending field.
Scene load_scene(const std::string& path);

struct RunFlags {
  std::optional<int> chart;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;  // overrides flow tol_converge
  std::string format = "json";
};

struct Report {
  std::string json_text;   // canonical key order, byte-stable
  std::string table_text;  // aligned plain text
  int exit_code = 0;       // 0 ok, 2 verification failure
};

// Dispatches one command (decompose | blowup | transform | indices | flow |
// verify) against a scene file. Input problems throw; the caller maps them to
// exit code 1. Randomized commands reject a missing --seed the same way.
Report run(const std::string& command, const std::string& scene_path, const RunFlags& flags);

}  // namespace bbkit::scene
