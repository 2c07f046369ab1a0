#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

#include "bbkit/scene.hpp"

using namespace bbkit;
using nlohmann::json;

namespace {

std::string scene_path(const char* name) {
  return std::string(BBKIT_SCENE_DIR) + "/" + name;
}

// Scratch scene files for the failure-path tests.
std::string temp_scene(const char* name, const std::string& text) {
  std::string path = std::string("bbkit_test_") + name + ".json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  return path;
}

double dist2(const json& a, const json& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double dre = a[k][0].get<double>() - b[k][0].get<double>();
    double dim = a[k][1].get<double>() - b[k][1].get<double>();
    s += dre * dre + dim * dim;
  }
  return s;
}

}  // namespace

TEST_CASE("scene: loading the quadratic cone") {
  scene::Scene s = scene::load_scene(scene_path("quadratic_cone.json"));
  CHECK(s.n == 3);
  CHECK(s.weights == WeightVector{1, 1, 1});
  REQUIRE(s.center_dim.has_value());
  CHECK(*s.center_dim == 0);
  REQUIRE(s.ideal.size() == 1);
  CHECK(s.ideal[0] == parse_poly("z1^2 + z2^2 - z3^2", 3));
  CHECK_FALSE(s.flow.has_value());
  CHECK(s.verify_trial_scale == 1.0);
}

TEST_CASE("scene: loading failures name the offending field") {
  auto message_of = [](const std::string& path) {
    try {
      scene::load_scene(path);
      return std::string("no error");
    } catch (const std::exception& e) {
      return std::string(e.what());
    }
  };

  std::string bad_poly = temp_scene(
      "bad_poly", R"({"n": 2, "weights": [1, -1], "ideal": ["z3"]})");
  std::string msg = message_of(bad_poly);
  CHECK(msg.find("ideal[0]") != std::string::npos);
  CHECK(msg.find("(at position 1)") != std::string::npos);

  CHECK(message_of(temp_scene("unknown_key", R"({"n": 2, "weights": [1, -1], "bogus": 3})"))
            .find("bogus") != std::string::npos);
  CHECK(message_of(temp_scene("not_json", "certainly not json")).find("scene JSON") !=
        std::string::npos);
  CHECK(message_of(temp_scene("short_weights", R"({"n": 3, "weights": [1, 2]})"))
            .find("weights") != std::string::npos);
  CHECK_THROWS_AS(scene::load_scene(temp_scene("bad_n", R"({"n": 0, "weights": []})")),
                  DomainError);
  CHECK_THROWS_AS(scene::load_scene("bbkit_test_missing_file.json"), DomainError);
  CHECK_THROWS_AS(scene::load_scene(temp_scene(
                      "bad_count", R"({"n": 2, "weights": [1, -1],
                                       "flow": {"seeds": "random:0:5"}})")),
                  DomainError);
  CHECK_THROWS_AS(scene::load_scene(temp_scene(
                      "bad_center", R"({"n": 2, "weights": [1, -1], "center_dim": 2})")),
                  DomainError);
}

TEST_CASE("scene: transform reports the strict transform per chart") {
  scene::RunFlags flags;
  flags.chart = 3;
  scene::Report r = scene::run("transform", scene_path("quadratic_cone.json"), flags);
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.json_text);
  CHECK(doc["command"] == "transform");
  CHECK(doc["equivariant"] == true);
  REQUIRE(doc["charts"].size() == 1);
  const json& rec = doc["charts"][0];
  CHECK(rec["chart"] == 3);
  CHECK(rec["E"] == "V(w3)");
  CHECK(rec["k"] == 2);
  CHECK(parse_poly(rec["g"].get<std::string>(), 3) == parse_poly("w1^2 + w2^2 - 1", 3));
  CHECK(rec["generators"][0]["g_weight"] == 0);
}

TEST_CASE("scene: transform on the Whitney umbrella keeps chart weights") {
  scene::Report r = scene::run("transform", scene_path("whitney_umbrella.json"), {});
  json doc = json::parse(r.json_text);
  CHECK(doc["equivariant"] == true);
  bool saw_chart2 = false;
  for (const json& rec : doc["charts"]) {
    if (rec["chart"] != 2) continue;
    saw_chart2 = true;
    CHECK(rec["k"] == 2);
    CHECK(parse_poly(rec["g"].get<std::string>(), 3) == parse_poly("w1^2 - w2*w3", 3));
    CHECK(rec["generators"][0]["g_weight"] == 2);
  }
  CHECK(saw_chart2);
}

TEST_CASE("scene: reports are byte-stable across runs") {
  scene::Report a = scene::run("flow", scene_path("flow_random.json"), {});
  scene::Report b = scene::run("flow", scene_path("flow_random.json"), {});
  CHECK(a.json_text == b.json_text);
  CHECK(a.exit_code == b.exit_code);

  scene::Report c = scene::run("decompose", scene_path("quadratic_cone.json"), {});
  scene::Report d = scene::run("decompose", scene_path("quadratic_cone.json"), {});
  CHECK(c.json_text == d.json_text);
}

TEST_CASE("scene: flow agrees with the algebraic classification") {
  scene::Report r = scene::run("flow", scene_path("flow_basic.json"), {});
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.json_text);
  CHECK(doc["agreements"]["mismatched"] == 0);
  CHECK(doc["agreements"]["indeterminate"] == 0);
  CHECK(doc["agreements"]["matched"] == 4);

  // Cross-oracle: decompose on the same explicit seeds assigns the same
  // limits that the numerical flow found.
  json dec = json::parse(scene::run("decompose", scene_path("flow_basic.json"), {}).json_text);
  REQUIRE(dec["seeds"].size() == doc["seeds"].size());
  for (std::size_t i = 0; i < doc["seeds"].size(); ++i) {
    const json& frow = doc["seeds"][i];
    const json& drow = dec["seeds"][i];
    if (frow["verdict"] == "Converged") {
      REQUIRE_FALSE(drow["plus_limit"].is_null());
      CHECK(dist2(frow["limit"], drow["plus_limit"]) < 1e-12);
    } else {
      CHECK(drow["plus_limit"].is_null());
    }
  }
}

TEST_CASE("scene: --tol loosens convergence and shortens runs") {
  json tight = json::parse(scene::run("flow", scene_path("flow_basic.json"), {}).json_text);
  scene::RunFlags loose_flags;
  loose_flags.tol = 1e-3;
  json loose =
      json::parse(scene::run("flow", scene_path("flow_basic.json"), loose_flags).json_text);
  CHECK(loose["config"]["tol_converge"] == 1e-3);
  CHECK(loose["seeds"][0]["steps"].get<long long>() <
        tight["seeds"][0]["steps"].get<long long>());
}

TEST_CASE("scene: random seed expansion is explicit about its source") {
  std::string path = temp_scene("rng_scene", R"({"n": 2, "weights": [2, -1],
      "flow": {"seeds": "random:3:111", "config": {"dt": 0.01}}})");
  json fixed = json::parse(scene::run("flow", path, {}).json_text);
  CHECK(fixed["seed_source"] == "random:3:111");

  scene::RunFlags with_seed;
  with_seed.seed = 222;
  json overridden = json::parse(scene::run("flow", path, with_seed).json_text);
  CHECK(overridden["seed_source"] == "random:3:222");
  CHECK(overridden["seed"] == 222);

  std::string bare = temp_scene("rng_bare", R"({"n": 2, "weights": [2, -1],
      "flow": {"seeds": "random:3", "config": {"dt": 0.01}}})");
  CHECK_THROWS_AS(scene::run("flow", bare, {}), DomainError);
  CHECK(json::parse(scene::run("flow", bare, with_seed).json_text)["seed_source"] ==
        "random:3:222");
}

TEST_CASE("scene: blowup summarizes charts and fixed components") {
  scene::Report r = scene::run("blowup", scene_path("quadratic_cone.json"), {});
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.json_text);
  CHECK(doc["trivial"] == false);
  CHECK(doc["J0"].empty());
  CHECK(doc["blowdown_union"].empty());
  CHECK(doc["blowdown_union_equals_J0"] == true);
  CHECK(doc["charts"].size() == 3);
  REQUIRE(doc["components"].size() == 1);
  CHECK(doc["components"][0]["dim"] == 2);
  CHECK(doc["components"][0]["weight"] == 1);
}

TEST_CASE("scene: indices balance tangent and obstruction weights") {
  scene::Report r = scene::run("indices", scene_path("equivariant_model.json"), {});
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.json_text);
  CHECK(doc["obstruction"] == json::array({-2, 2}));
  CHECK(doc["expdim"]["zero"] == 0);
  CHECK(doc["expdim"]["plus"] == 0);
  CHECK(doc["expdim"]["minus"] == 1);
  CHECK(doc["morse_bott"]["index"] == 2);
  CHECK(doc["identity_n_minus_r"] == 1);
}

TEST_CASE("scene: decompose with all-zero weights fixes everything") {
  std::string path = temp_scene("all_zero", R"({"n": 2, "weights": [0, 0]})");
  json doc = json::parse(scene::run("decompose", path, {}).json_text);
  CHECK(doc["sign_decomposition"]["J0"] == json::array({1, 2}));
  CHECK(doc["fixed_locus"]["dim"] == 2);
  REQUIRE(doc["projective"]["fixed_components"].size() == 1);
  CHECK(doc["projective"]["fixed_components"][0]["dim"] == 1);
}

TEST_CASE("scene: flow mismatches surface as exit code 2") {
  // The second coordinate is tiny but exactly nonzero: the algebra denies a
  // plus limit, while the numeric gradient norm still dips below the
  // convergence tolerance inside the horizon.
  std::string path = temp_scene("mismatch", R"({"n": 2, "weights": [1, -1],
      "flow": {"seeds": [[[1.0, 0.0], [1e-30, 0.0]]], "config": {"dt": 0.01}}})");
  scene::Report r = scene::run("flow", path, {});
  CHECK(r.exit_code == 2);
  json doc = json::parse(r.json_text);
  CHECK(doc["agreements"]["mismatched"] == 1);
  CHECK(doc["seeds"][0]["verdict"] == "Converged");
  CHECK(doc["seeds"][0]["algebra"]["limit_exists"] == false);
}

TEST_CASE("scene: run-level input validation") {
  CHECK_THROWS_AS(scene::run("verify", scene_path("quadratic_cone.json"), {}), DomainError);
  CHECK_THROWS_AS(scene::run("frobnicate", scene_path("quadratic_cone.json"), {}), DomainError);
  scene::RunFlags xml;
  xml.format = "xml";
  CHECK_THROWS_AS(scene::run("decompose", scene_path("quadratic_cone.json"), xml), DomainError);
  scene::RunFlags chart9;
  chart9.chart = 9;
  CHECK_THROWS_AS(scene::run("blowup", scene_path("quadratic_cone.json"), chart9), DomainError);
  CHECK_THROWS_AS(scene::run("flow", scene_path("quadratic_cone.json"), {}), DomainError);
  CHECK_THROWS_AS(scene::run("transform", scene_path("flow_random.json"), {}), DomainError);
}

TEST_CASE("scene: table rendering carries the same content") {
  scene::RunFlags flags;
  flags.format = "table";
  scene::Report r = scene::run("flow", scene_path("flow_basic.json"), flags);
  CHECK_FALSE(r.table_text.empty());
  CHECK(r.table_text.find("flow") != std::string::npos);
  CHECK(r.table_text.find("agreement") != std::string::npos);

  scene::Report d = scene::run("decompose", scene_path("quadratic_cone.json"), flags);
  CHECK(d.table_text.find("J0") != std::string::npos);
}
