#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "symiso/experiments.hpp"

using namespace symiso;
using doctest::Approx;

namespace {
ExperimentConfig small() {
  ExperimentConfig cfg;
  cfg.torus = {1, 16, 17};
  cfg.integrator.h = 1.0 / 64;
  return cfg;
}
}  // namespace

TEST_CASE("config survives a JSON round trip") {
  ExperimentConfig cfg = small();
  cfg.seed = 77;
  cfg.eps = 0.05;
  cfg.tol.mean_value = 2e-3;
  cfg.converge_indices = {1, 3};
  const ExperimentConfig back = config_from_json(cfg.to_json());
  CHECK(back.seed == 77);
  CHECK(back.torus.grid_res == 16);
  CHECK(back.integrator.h == Approx(1.0 / 64));
  CHECK(back.tol.mean_value == Approx(2e-3));
  CHECK(back.converge_indices == std::vector<int>{1, 3});
  CHECK(back.to_json() == cfg.to_json());
}

TEST_CASE("bad configs raise ConfigError") {
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"integrater": {"h": 0.01}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"torus": {"grid_res": "many"}})")), ConfigError);
  ExperimentConfig cfg;
  cfg.tol.group = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.format = "xml";
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.converge_q = {1, 2, 3};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  CHECK_THROWS_AS(example_generator("spiral", cfg.torus, 1), ConfigError);
  cfg = {};
  cfg.generator = "/nonexistent/generator.json";
  CHECK_THROWS_AS(config_generator(cfg), ConfigError);
}

TEST_CASE("generators round trip through files") {
  const TorusSpec spec{1, 16, 17};
  const Generator g = example_generator("random", spec, 9);
  const std::string path = (std::filesystem::temp_directory_path() / "symiso_gen_roundtrip.json").string();
  save_generator(g, path);
  const Generator h = load_generator(path);
  std::remove(path.c_str());
  CHECK(h.nodes() == g.nodes());
  const std::vector<double> x{0.3, 0.7};
  for (double t : {0.0, 0.37, 1.0}) {
    CHECK(h.U.at(t).value(x) == Approx(g.U.at(t).value(x)).epsilon(1e-14));
    CHECK(h.H.at(t)[1] == Approx(g.H.at(t)[1]).epsilon(1e-14));
  }
}

TEST_CASE("random curves fix the endpoints and respect monotonicity") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 30; ++k) {
    const ReparamCurve c = random_curve(rng);
    CHECK(c.value(0.0) == Approx(0.0));
    CHECK(c.value(1.0) == Approx(1.0));
    CHECK(c.monotone());
  }
  bool saw_non_monotone = false;
  for (int k = 0; k < 30; ++k) saw_non_monotone |= !random_curve(rng, false).monotone();
  CHECK(saw_non_monotone);
}

TEST_CASE("reports serialize to JSON and CSV") {
  Report r;
  r.command = "demo";
  r.checks.push_back({"a", 0.5, 1.0, true, ""});
  CHECK(r.ok());
  CHECK(r.to_csv().rfind("name,value,bound,pass", 0) == 0);
  r.table = Table{{"i", "v"}, {{1, 0.5}, {2, 0.25}}};
  CHECK(r.to_csv() == "i,v\n1,0.5\n2,0.25\n");
  r.checks.push_back({"b", 2.0, 1.0, false, "too big"});
  CHECK_FALSE(r.ok());
  const json j = r.to_json();
  CHECK(j["ok"] == false);
  CHECK(j["checks"].size() == 2);
  CHECK(j["table"]["columns"][1] == "v");
}

TEST_CASE("flow runs are reproducible and match the closed-form shear") {
  ExperimentConfig cfg = small();
  cfg.example = "shear";
  const Report a = run_flow(cfg), b = run_flow(cfg);
  CHECK(a.ok());
  CHECK(a.to_json() == b.to_json());
  cfg.example = "random";
  cfg.seed = 3;
  const json r1 = run_flow(cfg).to_json();
  cfg.seed = 4;
  CHECK(run_flow(cfg).to_json() != r1);
}

TEST_CASE("flux and loop runners pass their checks") {
  CHECK(run_flux(small()).ok());
  // Loops need the default 33 time nodes to close within the loop tolerance.
  CHECK(run_permutorus(ExperimentConfig{}).ok());
}
