#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "symiso/flux.hpp"
#include "symiso/io.hpp"
#include "symiso/regularization.hpp"

namespace symiso {

/// Malformed or unreadable configuration (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Tolerances {
  double closed_form = 1e-6;
  double group = 1e-5;
  double hodge = 1e-4;
  double delta_mean = 1e-5;
  double composition = 1e-4;
  double endpoint = 1e-4;
  double equalize = 1e-3;
  double mean_value = 1e-3;
  double calibration = 1e-6;
  double loop_area = 1e-4;
  double meridian = 1e-6;
  double converge = 1e-3;
  double reparam = 1e-6;
  double jitter = 0.05;  // relative slack for monotone columns
};

struct ExperimentConfig {
  TorusSpec torus{1, 32, 33};
  IntegratorConfig integrator{IntegratorConfig::Method::ClassicalRK4, 1.0 / 128.0};
  Tolerances tol;
  std::uint64_t seed = 1;
  std::string out;              // empty: stdout
  std::string format = "json";  // json | csv
  int instances = 4;            // random instances per verify suite
  double eps = 1e-2;
  std::string generator;        // path to a generator file; empty selects `example`
  std::string example = "mixed";
  std::vector<int> converge_indices{1, 2, 4, 8, 16, 32, 64};
  double converge_p = 0.002;
  std::vector<double> converge_q{0.004, 0.002};
  double neighborhood_eps = 0.1;
  std::vector<double> neighborhood_h{1.0, 0.0};

  void validate() const;
  json to_json() const;
};

ExperimentConfig config_from_json(const json& j, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path);
Numerics numerics(const ExperimentConfig& cfg);

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string detail;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string command;
  json data = json::object();
  std::vector<Check> checks;
  std::optional<Table> table;

  bool ok() const;
  json to_json() const;
  /// The table if present, otherwise the checks, otherwise the flattened data.
  std::string to_csv() const;
};

/// Named generators: shear, translation, mixed, profile (integrand 1+t), random.
Generator example_generator(const std::string& name, const TorusSpec& spec, std::uint64_t seed);
Generator config_generator(const ExperimentConfig& cfg);

std::mt19937_64 suite_rng(const ExperimentConfig& cfg, std::uint64_t salt);

/// Smooth monotone (and, when allowed, non-monotone) curves for reparameterization sweeps.
ReparamCurve random_curve(std::mt19937_64& rng, bool monotone = true);

/// Invariant suites. Each returns its checks with the worst measured value.
std::vector<Check> suite_closed_form_flows(const ExperimentConfig& cfg);
std::vector<Check> suite_group_axioms(const ExperimentConfig& cfg, int count);
std::vector<Check> suite_hodge(const ExperimentConfig& cfg, int count);
std::vector<Check> suite_delta_mean(const ExperimentConfig& cfg, int count);
std::vector<Check> suite_composition(const ExperimentConfig& cfg, int count);
std::vector<Check> suite_norm_equality(const ExperimentConfig& cfg, int count);
std::vector<Check> suite_inequalities(const ExperimentConfig& cfg, int count);
std::vector<Check> suite_flatten(const ExperimentConfig& cfg, int count);
std::vector<Check> suite_mean_value(const ExperimentConfig& cfg, int count);
std::vector<Check> suite_loops(const ExperimentConfig& cfg, int points);
std::vector<Check> suite_converge(const ExperimentConfig& cfg);
std::vector<Check> suite_norm_ordering(const ExperimentConfig& cfg, int count, int reparam_count);

Report run_verify(const ExperimentConfig& cfg);
Report run_flow(const ExperimentConfig& cfg);
Report run_norms(const ExperimentConfig& cfg);
Report run_regularize(const ExperimentConfig& cfg);
Report run_equalize(const ExperimentConfig& cfg);
Report run_flux(const ExperimentConfig& cfg);
Report run_permutorus(const ExperimentConfig& cfg);
Report run_converge(const ExperimentConfig& cfg);
Report run_neighborhood(const ExperimentConfig& cfg);

/// Columns of the convergence demo, one row per index i.
Table converge_table(const ExperimentConfig& cfg);

}  // namespace symiso
