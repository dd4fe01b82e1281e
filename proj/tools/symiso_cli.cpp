// Command line front end: runs one experiment and writes its report as JSON or CSV.
//
// Exit codes: 0 all checks passed, 1 a check failed or the integrator refused the step,
// 2 bad usage, bad config or unreadable input.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "symiso/experiments.hpp"

using namespace symiso;

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on symplectic isotopies of the flat torus"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path, out, format;
  std::uint64_t seed = 0;
  bool have_seed = false;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option_function<std::uint64_t>("--seed", [&](std::uint64_t s) { seed = s, have_seed = true; },
                                         "RNG seed (overrides the config)");
  app.add_option("--out", out, "Output file (default stdout)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  using Runner = Report (*)(const ExperimentConfig&);
  const std::vector<std::tuple<std::string, std::string, Runner>> commands = {
      {"verify", "Run every invariant suite", run_verify},
      {"flow", "Integrate the configured generator and sample trajectories", run_flow},
      {"norms", "Path lengths, distance to zero and energy upper bounds", run_norms},
      {"regularize", "Compose with a loop until the length integrand is bounded below", run_regularize},
      {"equalize", "Regularize then reparameterize so both lengths agree", run_equalize},
      {"flux", "Flux class, loop pairings and the mean displacement identity", run_flux},
      {"permutorus", "Hamiltonian loop areas and the meridian calibration", run_permutorus},
      {"converge", "Convergence table for a perturbed generator sequence", run_converge},
      {"neighborhood", "Oscillation of the displacement function near the identity", run_neighborhood},
  };
  Runner chosen = nullptr;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&chosen, fn = fn] { chosen = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (have_seed) cfg.seed = seed;
    if (!out.empty()) cfg.out = out;
    if (!format.empty()) cfg.format = format;
    cfg.validate();
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }

  Report report;
  try {
    report = chosen(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const StabilityError& e) {
    std::cerr << "integrator refused the step: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  const std::string text = cfg.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "cannot write " << cfg.out << '\n';
      return 2;
    }
    f << text;
  }
  for (const auto& c : report.checks)
    if (!c.pass) std::cerr << "FAIL " << c.name << " value=" << c.value << " bound=" << c.bound << ' ' << c.detail << '\n';
  return report.ok() ? 0 : 1;
}
