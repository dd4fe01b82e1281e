#include "symiso/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace symiso {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<int> axis_mode(int n, int axis) {
  std::vector<int> k(static_cast<std::size_t>(2 * n), 0);
  k[std::size_t(axis)] = 1;
  return k;
}

HarmonicForm form_xy(int n, double a, double b) {
  HarmonicForm h = HarmonicForm::zero(n);
  h.coeffs[0] = a;
  h.coeffs[std::size_t(n)] = b;
  return h;
}

Generator shear(int n, std::size_t T) {
  return Generator::autonomous(FourierField::sine(n, axis_mode(n, 0), 1.0 / (2.0 * kPi)), T);
}

Check check_below(std::string name, double value, double bound, std::string detail = {}) {
  Check c{std::move(name), value, bound, value < bound, std::move(detail)};
  return c;
}

Check check_at_most(std::string name, double value, double bound, std::string detail = {}) {
  Check c{std::move(name), value, bound, value <= bound, std::move(detail)};
  return c;
}

std::string count_detail(const std::string& what, int n) { return what + "=" + std::to_string(n); }

Generator scaled(const Generator& g, double s) {
  return {FourierHamiltonian::from_function(g.nodes(), [&](double t) { return g.U.at(t) * s; }),
          HarmonicPath::from_function(g.n(), g.nodes(), [&](double t) { return g.H.at(t) * s; })};
}

Generator perturbed(const Generator& g, const FourierField& p, const HarmonicForm& q) {
  return {FourierHamiltonian::from_function(g.nodes(), [&](double t) { return g.U.at(t) + p; }),
          HarmonicPath::from_function(g.n(), g.nodes(), [&](double t) { return g.H.at(t) + q; })};
}

HarmonicPath random_path(int n, std::size_t T, std::mt19937_64& rng) {
  RandomGeneratorOptions opt;
  opt.harmonic_only = true;
  opt.h_amplitude = 1.0;
  return random_generator(n, T, rng, opt).H;
}

double lifted_sup_error(const PointSet& a, const PointSet& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) e = std::max(e, std::abs(a.raw()[i] - b.raw()[i]));
  return e;
}

PointSet shifted(const PointSet& x, const std::vector<double>& v, double sign) {
  PointSet y = x;
  for (int a = 0; a < x.dim(); ++a)
    for (std::size_t i = 0; i < x.size(); ++i) y.at(a, i) += sign * v[std::size_t(a)];
  return y;
}

double node_simpson(const std::vector<double>& v) {
  const auto w = simpson_weights(v.size(), 1.0);
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += w[j] * v[j];
  return s;
}

bool non_increasing(const std::vector<double>& v, double jitter) {
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k] > v[k - 1] * (1.0 + jitter) + 1e-14) return false;
  return true;
}

template <class T>
void read_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

// ---------------------------------------------------------------- config

void ExperimentConfig::validate() const {
  try {
    torus.validate();
    integrator.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  const double tols[] = {tol.closed_form, tol.group,     tol.hodge,  tol.delta_mean, tol.composition,
                         tol.endpoint,    tol.equalize,  tol.mean_value,    tol.calibration, tol.loop_area,
                         tol.meridian,    tol.converge,  tol.reparam, tol.jitter};
  for (double t : tols)
    if (!(t > 0.0)) throw ConfigError("tolerances must be positive");
  if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
  if (instances < 1) throw ConfigError("instances must be at least 1");
  if (!(eps > 0.0) || !(neighborhood_eps > 0.0)) throw ConfigError("eps must be positive");
  if (converge_indices.empty()) throw ConfigError("converge.indices is empty");
  for (int i : converge_indices)
    if (i < 1) throw ConfigError("converge.indices must be positive");
  if (int(converge_q.size()) != torus.dim() && converge_q.size() != 2)
    throw ConfigError("converge.q must have 2 or 2n entries");
  if (int(neighborhood_h.size()) != torus.dim() && neighborhood_h.size() != 2)
    throw ConfigError("neighborhood.h must have 2 or 2n entries");
}

json ExperimentConfig::to_json() const {
  json j;
  j["torus"] = {{"n", torus.n}, {"grid_res", torus.grid_res}, {"time_res", torus.time_res}};
  j["integrator"] = {{"h", integrator.h}, {"grid_refine", integrator.grid_refine}};
  j["tolerances"] = {{"closed_form", tol.closed_form}, {"group", tol.group},         {"hodge", tol.hodge},
                     {"delta_mean", tol.delta_mean},   {"composition", tol.composition},
                     {"endpoint", tol.endpoint},       {"equalize", tol.equalize},   {"mean_value", tol.mean_value},
                     {"calibration", tol.calibration}, {"loop_area", tol.loop_area}, {"meridian", tol.meridian},
                     {"converge", tol.converge},       {"reparam", tol.reparam},     {"jitter", tol.jitter}};
  j["seed"] = seed;
  j["instances"] = instances;
  j["eps"] = eps;
  j["output"] = {{"path", out}, {"format", format}};
  j["generator"] = generator;
  j["example"] = example;
  j["converge"] = {{"indices", converge_indices}, {"p", converge_p}, {"q", converge_q}};
  j["neighborhood"] = {{"eps", neighborhood_eps}, {"h", neighborhood_h}};
  return j;
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig c) {
  static const std::vector<std::string> known = {"torus",  "integrator", "tolerances", "seed",    "instances",
                                                 "eps",    "output",     "generator",  "example", "converge",
                                                 "neighborhood"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key: " + key);
  try {
    if (j.contains("torus")) {
      const auto& t = j["torus"];
      read_if(t, "n", c.torus.n);
      read_if(t, "grid_res", c.torus.grid_res);
      read_if(t, "time_res", c.torus.time_res);
    }
    if (j.contains("integrator")) {
      const auto& t = j["integrator"];
      read_if(t, "h", c.integrator.h);
      read_if(t, "grid_refine", c.integrator.grid_refine);
    }
    if (j.contains("tolerances")) {
      const auto& t = j["tolerances"];
      read_if(t, "closed_form", c.tol.closed_form);
      read_if(t, "group", c.tol.group);
      read_if(t, "hodge", c.tol.hodge);
      read_if(t, "delta_mean", c.tol.delta_mean);
      read_if(t, "composition", c.tol.composition);
      read_if(t, "endpoint", c.tol.endpoint);
      read_if(t, "equalize", c.tol.equalize);
      read_if(t, "mean_value", c.tol.mean_value);
      read_if(t, "calibration", c.tol.calibration);
      read_if(t, "loop_area", c.tol.loop_area);
      read_if(t, "meridian", c.tol.meridian);
      read_if(t, "converge", c.tol.converge);
      read_if(t, "reparam", c.tol.reparam);
      read_if(t, "jitter", c.tol.jitter);
    }
    read_if(j, "seed", c.seed);
    read_if(j, "instances", c.instances);
    read_if(j, "eps", c.eps);
    if (j.contains("output")) {
      read_if(j["output"], "path", c.out);
      read_if(j["output"], "format", c.format);
    }
    read_if(j, "generator", c.generator);
    read_if(j, "example", c.example);
    if (j.contains("converge")) {
      read_if(j["converge"], "indices", c.converge_indices);
      read_if(j["converge"], "p", c.converge_p);
      read_if(j["converge"], "q", c.converge_q);
    }
    if (j.contains("neighborhood")) {
      read_if(j["neighborhood"], "eps", c.neighborhood_eps);
      read_if(j["neighborhood"], "h", c.neighborhood_h);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return config_from_json(j);
}

Numerics numerics(const ExperimentConfig& cfg) {
  Numerics num;
  num.torus = cfg.torus;
  num.integrator = cfg.integrator;
  return num;
}

std::mt19937_64 suite_rng(const ExperimentConfig& cfg, std::uint64_t salt) {
  std::seed_seq seq{std::uint32_t(cfg.seed), std::uint32_t(cfg.seed >> 32), std::uint32_t(salt)};
  return std::mt19937_64(seq);
}

// ---------------------------------------------------------------- report

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json Report::to_json() const {
  json j;
  j["command"] = command;
  j["ok"] = ok();
  json cs = json::array();
  for (const auto& c : checks)
    cs.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = std::move(cs);
  if (table) j["table"] = {{"columns", table->columns}, {"rows", table->rows}};
  j["data"] = data;
  return j;
}

std::string Report::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(17);
  if (table) {
    for (std::size_t c = 0; c < table->columns.size(); ++c) os << (c ? "," : "") << table->columns[c];
    os << '\n';
    for (const auto& row : table->rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
      os << '\n';
    }
    return os.str();
  }
  if (!checks.empty()) {
    os << "name,value,bound,pass,detail\n";
    for (const auto& c : checks) os << c.name << ',' << c.value << ',' << c.bound << ',' << c.pass << ',' << c.detail << '\n';
    return os.str();
  }
  os << "key,value\n";
  const json flat = data.flatten();
  for (const auto& [k, v] : flat.items()) os << k << ',' << v.dump() << '\n';
  return os.str();
}

// ---------------------------------------------------------------- generators

Generator example_generator(const std::string& name, const TorusSpec& spec, std::uint64_t seed) {
  const int n = spec.n;
  const std::size_t T = std::size_t(spec.time_res);
  if (name == "zero") return Generator::zero(n, T);
  if (name == "shear") return shear(n, T);
  if (name == "translation") return Generator::harmonic(form_xy(n, 1.0, 0.0), T);
  if (name == "mixed") return {shear(n, T).U, HarmonicPath::constant(form_xy(n, 0.3, 0.1), T)};
  if (name == "profile")
    return {FourierHamiltonian::zero(n, T),
            HarmonicPath::from_function(n, T, [n](double t) { return form_xy(n, 1.0 + t, 0.0); })};
  if (name == "random") {
    std::mt19937_64 rng(seed);
    return random_generator(n, T, rng);
  }
  throw ConfigError("unknown example generator: " + name);
}

Generator config_generator(const ExperimentConfig& cfg) {
  if (cfg.generator.empty()) return example_generator(cfg.example, cfg.torus, cfg.seed);
  Generator g;
  try {
    g = load_generator(cfg.generator);
  } catch (const json::exception& e) {
    throw ConfigError("generator file is malformed: " + std::string(e.what()));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (g.n() != cfg.torus.n || int(g.nodes()) != cfg.torus.time_res)
    throw ConfigError("generator file does not match torus.n / torus.time_res");
  return g;
}

ReparamCurve random_curve(std::mt19937_64& rng, bool monotone) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int kind = int(uni(rng) * (monotone ? 4 : 5));
  switch (kind) {
    case 0:
      return ReparamCurve::identity();
    case 1:
      return ReparamCurve::boundary_flat(0.01 + 0.06 * uni(rng));
    case 2: {
      const double a = 0.9 * (2.0 * uni(rng) - 1.0);
      const int k = 1 + int(uni(rng) * 3);
      return ReparamCurve::from_function(
          [a, k](double t) { return t + a * std::sin(2 * kPi * k * t) / (2 * kPi * k); },
          [a, k](double t) { return 1.0 + a * std::cos(2 * kPi * k * t); }, "wiggle");
    }
    case 3: {
      const double p = 1.0 + uni(rng);
      return ReparamCurve::from_function([p](double t) { return std::pow(t, p); },
                                         [p](double t) { return p * std::pow(t, p - 1.0); }, "power");
    }
    default: {
      // Non-monotone: rises to a peak then falls back, staying in [0,1].
      const double b = 0.3 + 0.6 * uni(rng);
      return ReparamCurve::from_function([b](double t) { return b * std::sin(kPi * t); },
                                         [b](double t) { return b * kPi * std::cos(kPi * t); }, "arch");
    }
  }
}

// ---------------------------------------------------------------- suites

std::vector<Check> suite_closed_form_flows(const ExperimentConfig& cfg) {
  const TorusSpec& spec = cfg.torus;
  const int n = spec.n;
  const std::size_t T = std::size_t(spec.time_res);
  std::vector<Check> out;

  auto worst = [&](const Generator& g, auto exact) {
    const Isotopy phi = integrate(g, spec, cfg.integrator);
    double e = 0.0;
    for (std::size_t j = 0; j < T; ++j) e = std::max(e, lifted_sup_error(phi.image(j), exact(phi.grid(), phi.node_time(j))));
    return e;
  };
  const double e_tr = worst(Generator::harmonic(form_xy(n, 1.0, 0.0), T), [&](const PointSet& x, double t) {
    PointSet y = x;
    for (std::size_t i = 0; i < x.size(); ++i) y.at(n, i) -= t;
    return y;
  });
  const double e_sh = worst(shear(n, T), [&](const PointSet& x, double t) {
    PointSet y = x;
    for (std::size_t i = 0; i < x.size(); ++i) y.at(n, i) -= t * std::cos(2 * kPi * x.at(0, i));
    return y;
  });
  const double e_id = worst(Generator::zero(n, T), [](const PointSet& x, double) { return x; });
  out.push_back(check_below("flow.translation", e_tr, cfg.tol.closed_form));
  out.push_back(check_below("flow.shear", e_sh, cfg.tol.closed_form));
  out.push_back(check_below("flow.identity", e_id, cfg.tol.closed_form));

  // RK4 integrates the shear exactly (velocity is constant along trajectories),
  // so the order is measured on a non-separable field against a fine-step reference.
  FourierField u = FourierField::sine(n, axis_mode(n, 0), 1.0 / (2 * kPi)) +
                   FourierField::sine(n, axis_mode(n, n), 1.0 / (2 * kPi));
  const Generator g = Generator::autonomous(u, T);
  TorusSpec small = spec;
  small.grid_res = 16;
  auto endpoint = [&](double h) {
    IntegratorConfig c = cfg.integrator;
    c.h = h;
    const Isotopy phi = integrate(g, small, c);
    return phi.image(T - 1);
  };
  const PointSet ref = endpoint(1.0 / 1024.0);
  const double e1 = lifted_sup_error(endpoint(1.0 / 32.0), ref), e2 = lifted_sup_error(endpoint(1.0 / 64.0), ref);
  const double ratio = e1 / e2;
  Check order{"flow.order_ratio", ratio, 16.0, std::abs(ratio - 16.0) < 4.0,
              "err(1/32)=" + std::to_string(e1) + " err(1/64)=" + std::to_string(e2)};
  out.push_back(order);

  // Area preservation on the mixed generator.
  const Generator mixed = example_generator("mixed", spec, cfg.seed);
  const Isotopy phi = integrate(mixed, spec, cfg.integrator);
  double det = 0.0;
  if (n == 1) {
    for (std::size_t j = 0; j < T; ++j) {
      const auto& J = phi.jacobian(j);
      const std::size_t P = phi.grid().size();
      for (std::size_t i = 0; i < P; ++i)
        det = std::max(det, std::abs(J[i] * J[3 * P + i] - J[P + i] * J[2 * P + i] - 1.0));
    }
    out.push_back(check_below("flow.area_preservation", det, 1e-6));
  }
  const PointSet back = phi.apply_inverse(1.0, phi.image(T - 1));
  out.push_back(check_below("flow.round_trip", lifted_sup_error(back, phi.grid()), 1e-6));
  return out;
}

std::vector<Check> suite_group_axioms(const ExperimentConfig& cfg, int count) {
  auto rng = suite_rng(cfg, 2);
  const Numerics num = numerics(cfg);
  const std::size_t T = std::size_t(cfg.torus.time_res);
  double right = 0.0, left = 0.0;
  for (int k = 0; k < count; ++k) {
    const Generator g = random_generator(cfg.torus.n, T, rng);
    const Isotopy phi = integrate(g, cfg.torus, cfg.integrator);
    auto gbar = std::make_shared<const Generator>(inverse(g, phi, num));
    const Isotopy pr = integrate(product(g, phi, *gbar, num), cfg.torus, cfg.integrator);
    right = std::max(right, c0_distance_to_identity(pr.grid(), pr.image(T - 1)));
    const Isotopy pl = integrate(product(*gbar, phi.reversed(gbar), g, num), cfg.torus, cfg.integrator);
    left = std::max(left, c0_distance_to_identity(pl.grid(), pl.image(T - 1)));
  }
  return {check_below("group.g_times_inverse", right, cfg.tol.group, count_detail("instances", count)),
          check_below("group.inverse_times_g", left, cfg.tol.group, count_detail("instances", count))};
}

std::vector<Check> suite_hodge(const ExperimentConfig& cfg, int count) {
  auto rng = suite_rng(cfg, 3);
  const Numerics num = numerics(cfg);
  const std::size_t T = std::size_t(cfg.torus.time_res);
  double worst = 0.0, regen = 0.0;
  for (int k = 0; k < count; ++k) {
    const Generator g = random_generator(cfg.torus.n, T, rng);
    const HodgeParts parts = hodge_decompose(g);
    const Isotopy phi = integrate(g, cfg.torus, cfg.integrator);
    const Isotopy psi = integrate(parts.hamiltonian, cfg.torus, cfg.integrator);
    for (std::size_t j = 0; j < T; ++j) {
      const auto tau = harmonic_translation(g.H, g.node_time(j));
      const double fwd = c0_distance(phi.image(j), shifted(psi.image(j), tau, 1.0));
      const double inv = c0_distance(phi.inverse_image(j), psi.apply_inverse(g.node_time(j), shifted(phi.grid(), tau, -1.0)));
      worst = std::max({worst, fwd, inv});
    }
    const Isotopy rho = integrate(parts.harmonic, cfg.torus, cfg.integrator);
    regen = std::max(regen, D0(product(parts.harmonic, rho, parts.hamiltonian, num), g, cfg.torus));
  }
  return {check_below("hodge.dbar_rho_psi", worst, cfg.tol.hodge, count_detail("instances", count)),
          check_below("hodge.regenerates", regen, cfg.tol.hodge, count_detail("instances", count))};
}

std::vector<Check> suite_delta_mean(const ExperimentConfig& cfg, int count) {
  auto rng = suite_rng(cfg, 4);
  const std::size_t T = std::size_t(cfg.torus.time_res);
  RandomGeneratorOptions ham;
  ham.hamiltonian = true;
  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const Generator g = random_generator(cfg.torus.n, T, rng, ham);
    const HarmonicPath H = random_path(cfg.torus.n, T, rng);
    const Isotopy phi = integrate(g, cfg.torus, cfg.integrator);
    for (std::size_t j = 0; j < T; ++j) worst = std::max(worst, std::abs(delta_mean(H, phi, j)));
  }
  return {check_below("delta.mean_hamiltonian", worst, cfg.tol.delta_mean, count_detail("instances", count))};
}

std::vector<Check> suite_composition(const ExperimentConfig& cfg, int count) {
  auto rng = suite_rng(cfg, 5);
  const Numerics num = numerics(cfg);
  const std::size_t T = std::size_t(cfg.torus.time_res);
  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const HarmonicPath H = random_path(cfg.torus.n, T, rng);
    const Generator g1 = random_generator(cfg.torus.n, T, rng), g2 = random_generator(cfg.torus.n, T, rng);
    const Isotopy p1 = integrate(g1, cfg.torus, cfg.integrator), p2 = integrate(g2, cfg.torus, cfg.integrator);
    for (const GridField& r : delta_composition_residual(H, p1, p2, num)) worst = std::max(worst, r.osc());
  }
  return {check_below("delta.composition_residual", worst, cfg.tol.composition, count_detail("triples", count))};
}

std::vector<Check> suite_norm_equality(const ExperimentConfig& cfg, int count) {
  auto rng = suite_rng(cfg, 6);
  const Numerics num = numerics(cfg);
  const std::size_t T = std::size_t(cfg.torus.time_res);
  double excess = -INFINITY, endpoint = 0.0, dev = 0.0;
  int failures = 0;
  for (int k = 0; k < count; ++k) {
    const Generator g = random_generator(cfg.torus.n, T, rng);
    try {
      const NormEquality r = norm_equality_experiment(g, cfg.eps, num, cfg.tol.endpoint);
      excess = std::max(excess, r.linf_psi - r.l1inf_g);
      endpoint = std::max(endpoint, r.endpoint_distance);
      dev = std::max(dev, r.equalized.max_deviation);
    } catch (const Error&) {
      ++failures;
    }
  }
  Check len = check_below("lengths.linf_psi_minus_l1inf", excess, cfg.eps, count_detail("failures", failures));
  len.pass = len.pass && failures == 0;
  return {len, check_below("lengths.same_endpoint", endpoint, cfg.tol.endpoint),
          check_below("lengths.equalized_integrand", dev, cfg.tol.equalize)};
}

std::vector<Check> suite_inequalities(const ExperimentConfig& cfg, int count) {
  auto rng = suite_rng(cfg, 7);
  const Numerics num = numerics(cfg);
  const std::size_t T = std::size_t(cfg.torus.time_res);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  struct Tally {
    double ratio = 0.0;
    int violations = 0, skipped = 0;
    void add(const BoundReport& b) {
      if (b.skipped) {
        ++skipped;
        return;
      }
      if (!b.holds) ++violations;
      if (b.rhs > 0.0) ratio = std::max(ratio, b.lhs / b.rhs);
      else if (b.lhs > 0.0) ratio = INFINITY;
    }
    Check check(const std::string& name, int count) const {
      return {name, ratio, 1.0, violations == 0,
              "instances=" + std::to_string(count) + " violations=" + std::to_string(violations) +
                  " skipped=" + std::to_string(skipped)};
    }
  };
  Tally mos_int, mos_max, dist, rep_delta, rep_gen;
  for (int k = 0; k < count; ++k) {
    const Generator g = random_generator(cfg.torus.n, T, rng);
    const HarmonicPath H = random_path(cfg.torus.n, T, rng);
    const Isotopy phi = integrate(g, cfg.torus, cfg.integrator);
    const GeodesicBoundReport m = geodesic_bound_check(H, phi);
    mos_int.add(m.integral);
    mos_max.add(m.maximum);

    RandomGeneratorOptions small;
    small.u_amplitude = 0.01 * uni(rng);
    small.h_amplitude = 0.05 * uni(rng);
    const Generator dg = random_generator(cfg.torus.n, T, rng, small);
    const Generator g2(FourierHamiltonian::from_function(T, [&](double t) { return g.U.at(t) + dg.U.at(t); }), g.H + dg.H);
    dist.add(delta_distance_check(H, phi, integrate(g2, cfg.torus, cfg.integrator)));

    const ReparamCurve xi1 = random_curve(rng, true), xi2 = random_curve(rng, false);
    rep_delta.add(reparam_delta_check(g.H, phi, xi1, xi2));
    rep_gen.add(reparam_stability_check(g, phi, xi1, xi2, num).generator_bound);
  }
  return {mos_int.check("bound.geodesic_integral", count), mos_max.check("bound.geodesic_max", count),
          dist.check("bound.delta_distance", count), rep_delta.check("bound.reparam_delta", count),
          rep_gen.check("bound.reparam_generator", count)};
}

std::vector<Check> suite_flatten(const ExperimentConfig& cfg, int count) {
  auto rng = suite_rng(cfg, 8);
  const Numerics num = numerics(cfg);
  const std::size_t T = std::size_t(cfg.torus.time_res);
  double d1 = 0.0, db = 0.0, slice = 0.0;
  int failures = 0;
  for (int k = 0; k < count; ++k) {
    const Generator g = k == 0 ? example_generator("mixed", cfg.torus, cfg.seed) : random_generator(cfg.torus.n, T, rng);
    try {
      const Flattened f = flatten(g, cfg.eps, num);
      d1 = std::max(d1, f.d1);
      db = std::max(db, f.dbar);
      for (int i = 0; i <= 16; ++i)
        for (double t : {f.delta * i / 16.0, 1.0 - f.delta * i / 16.0}) {
          const FourierField u = f.generator.U.at(t);
          for (const cplx& c : u.coefficients()) slice = std::max(slice, std::abs(c));
          slice = std::max(slice, norm_euclidean(f.generator.H.at(t)));
        }
    } catch (const Error&) {
      ++failures;
    }
  }
  Check c1 = check_below("flatten.d1", d1, cfg.eps, count_detail("failures", failures));
  c1.pass = c1.pass && failures == 0;
  return {c1, check_below("flatten.dbar", db, cfg.eps), check_at_most("flatten.boundary_slices", slice, 0.0)};
}

std::vector<Check> suite_mean_value(const ExperimentConfig& cfg, int count) {
  auto rng = suite_rng(cfg, 9);
  const int n = cfg.torus.n;
  const std::size_t T = std::size_t(cfg.torus.time_res);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<Check> out;

  const Isotopy cal = integrate(Generator::harmonic(form_xy(n, 1.0, 0.0), T), cfg.torus, cfg.integrator);
  const MeanValueReport c = mean_value_check({form_xy(n, 0.0, 1.0)}, cal, cfg.tol.mean_value);
  out.push_back(check_below("mean_value.calibration_lhs", std::abs(c.lhs + 1.0), cfg.tol.calibration,
                            "lhs=" + std::to_string(c.lhs)));
  out.push_back(check_below("mean_value.calibration_rhs", std::abs(std::abs(c.rhs) - 1.0), cfg.tol.calibration,
                            "rhs=" + std::to_string(c.rhs)));

  double mag = 0.0;
  int sign_bad = 0;
  for (int k = 0; k < count; ++k) {
    HarmonicForm a = HarmonicForm::zero(n);
    for (double& v : a.coeffs) v = uni(rng);
    const Generator g = random_generator(n, T, rng);
    const Isotopy phi = integrate(g, cfg.torus, cfg.integrator);
    const MeanValueReport r = mean_value_check({a}, phi, cfg.tol.mean_value);
    mag = std::max(mag, std::abs(std::abs(r.lhs) - std::abs(r.rhs)));
    if (!r.sign_ok && std::abs(r.rhs) > cfg.tol.mean_value) ++sign_bad;
  }
  out.push_back(check_below("mean_value.magnitude", mag, cfg.tol.mean_value, count_detail("pairs", count)));
  out.push_back(check_at_most("mean_value.sign_mismatches", sign_bad, 0.0));
  return out;
}

std::vector<Check> suite_loops(const ExperimentConfig& cfg, int points) {
  auto rng = suite_rng(cfg, 10);
  const int n = cfg.torus.n;
  const std::size_t T = std::size_t(cfg.torus.time_res);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Point> pts;
  for (int p = 0; p < points; ++p) {
    std::vector<double> c(static_cast<std::size_t>(2 * n));
    for (double& v : c) v = uni(rng);
    pts.emplace_back(std::move(c));
  }
  // One loop from the traveling-wave fallback (U = 0) and one separable loop.
  const double eps_loop = 0.5;
  std::vector<HamiltonianLoop> loops;
  loops.push_back(find_hamiltonian_loop(FourierHamiltonian::zero(n, T), eps_loop, cfg.torus));
  loops.push_back(find_hamiltonian_loop(
      FourierHamiltonian::from_function(T, [n](double t) { return FourierField::sine(n, axis_mode(n, 0), t / (2 * kPi)); }),
      eps_loop, cfg.torus));
  double area = 0.0, flat = 0.0, defect = 0.0;
  for (const auto& l : loops) {
    const Isotopy phi = integrate(l.generator(T), cfg.torus, cfg.integrator);
    defect = std::max(defect, c0_distance_to_identity(phi.grid(), phi.image(T - 1)));
    for (int i = 0; i < 2 * n; ++i) {
      const CohomologyClass a{HarmonicForm::basis(n, i)};
      for (const Point& x : pts) area = std::max(area, std::abs(hamiltonian_loop_area(a, phi, x)));
      const DeltaFunction d = delta(HarmonicPath::constant(a.rep, T), phi);
      flat = std::max(flat, d[T - 1].osc());
    }
  }
  const Isotopy mer = integrate(meridian_translation(n, T), cfg.torus, cfg.integrator);
  double mer_err = 0.0;
  const CohomologyClass dy{HarmonicForm::basis(n, n)};
  for (const Point& x : pts) mer_err = std::max(mer_err, std::abs(hamiltonian_loop_area(dy, mer, x) - 1.0));
  return {check_below("loops.defect", defect, 1e-6),
          check_below("loops.hamiltonian_area", area, cfg.tol.loop_area, count_detail("points", points)),
          check_below("loops.delta_constant", flat, cfg.tol.loop_area),
          check_below("loops.meridian_area_minus_volume", mer_err, cfg.tol.meridian)};
}

Table converge_table(const ExperimentConfig& cfg) {
  const int n = cfg.torus.n;
  const std::size_t T = std::size_t(cfg.torus.time_res);
  const Numerics num = numerics(cfg);
  std::mt19937_64 rng = suite_rng(cfg, 11);
  const Generator g = random_generator(n, T, rng);
  std::vector<int> k(static_cast<std::size_t>(2 * n), 0);
  k[0] = 1;
  k[std::size_t(n)] = 1;
  const FourierField p = FourierField::cosine(n, k, cfg.converge_p);
  HarmonicForm q = HarmonicForm::zero(n);
  if (int(cfg.converge_q.size()) == 2 * n) q.coeffs = cfg.converge_q;
  else q = form_xy(n, cfg.converge_q[0], cfg.converge_q[1]);

  const Isotopy psi = integrate(g, cfg.torus, cfg.integrator);
  const Generator gh = hodge_decompose(g).hamiltonian;
  Table t;
  t.columns = {"i", "linf_inverse_product", "harmonic_gap", "dbar_harmonic", "hamiltonian_gap", "c0_endpoint"};
  const int res = osc_resolution(cfg.torus);
  for (int i : cfg.converge_indices) {
    const Generator gi = perturbed(g, p * (1.0 / i), q * (1.0 / i));
    const Isotopy phi = integrate(gi, cfg.torus, cfg.integrator);
    auto gi_bar = std::make_shared<const Generator>(inverse(gi, phi, num));
    const Generator prod = product(*gi_bar, phi.reversed(gi_bar), g, num);
    const double hyp = length_linf(prod, cfg.torus);
    const double hgap = maximize_time([&](double s) { return norm_euclidean(gi.H.at(s) - g.H.at(s)); }, T);
    double rho = 0.0;
    for (std::size_t j = 0; j < T; ++j) {
      const auto a = harmonic_translation(gi.H, gi.node_time(j)), b = harmonic_translation(g.H, g.node_time(j));
      double s = 0.0;
      for (std::size_t c = 0; c < a.size(); ++c) s += std::pow(wrap_delta(a[c] - b[c]), 2);
      rho = std::max(rho, std::sqrt(s));
    }
    const Generator gih = hodge_decompose(gi).hamiltonian;
    const double ugap = maximize_time([&](double s) { return osc(gh.U.at(s) - gih.U.at(s), res); }, T);
    const double c0 = c0_distance(phi.image(T - 1), psi.image(T - 1));
    t.rows.push_back({double(i), hyp, hgap, rho, ugap, c0});
  }
  return t;
}

std::vector<Check> suite_converge(const ExperimentConfig& cfg) {
  const Table t = converge_table(cfg);
  std::vector<Check> out;
  for (std::size_t c = 1; c < t.columns.size(); ++c) {
    std::vector<double> col;
    for (const auto& row : t.rows) col.push_back(row[c]);
    Check m{"converge." + t.columns[c] + ".non_increasing", col.back(), 0.0, non_increasing(col, cfg.tol.jitter), ""};
    out.push_back(m);
  }
  out.push_back(check_below("converge.hypothesis_last", t.rows.back()[1], cfg.tol.converge,
                            count_detail("i", int(t.rows.back()[0]))));
  out.push_back(check_below("converge.conclusion_last", t.rows.back()[5], cfg.tol.converge,
                            count_detail("i", int(t.rows.back()[0]))));
  return out;
}

std::vector<Check> suite_norm_ordering(const ExperimentConfig& cfg, int count, int reparam_count) {
  auto rng = suite_rng(cfg, 12);
  const std::size_t T = std::size_t(cfg.torus.time_res);
  int violations = 0;
  double gap = INFINITY;
  for (int k = 0; k < count; ++k) {
    const Generator g = random_generator(cfg.torus.n, T, rng);
    const double a = length_l1inf(g, cfg.torus), b = length_linf(g, cfg.torus);
    if (a > b) ++violations;
    gap = std::min(gap, b - a);
  }
  double inv = 0.0;
  for (int k = 0; k < reparam_count; ++k) {
    const Generator g = random_generator(cfg.torus.n, T, rng);
    const double base = length_l1inf(g, cfg.torus);
    const ReparamCurve xi = random_curve(rng, true);
    inv = std::max(inv, std::abs(length_l1inf(reparameterize(g, xi), cfg.torus) - base));
  }
  return {{"lengths.ordering_violations", double(violations), 0.0, violations == 0,
           "instances=" + std::to_string(count) + " min_gap=" + std::to_string(gap)},
          check_below("lengths.reparam_invariance", inv, cfg.tol.reparam, count_detail("instances", reparam_count))};
}

// ---------------------------------------------------------------- runners

Report run_verify(const ExperimentConfig& cfg) {
  Report r;
  r.command = "verify";
  const int k = cfg.instances;
  auto add = [&](std::vector<Check> cs) {
    for (auto& c : cs) r.checks.push_back(std::move(c));
  };
  add(suite_closed_form_flows(cfg));
  add(suite_group_axioms(cfg, k));
  add(suite_hodge(cfg, k));
  add(suite_delta_mean(cfg, k));
  add(suite_composition(cfg, k));
  add(suite_norm_equality(cfg, k));
  add(suite_inequalities(cfg, k));
  add(suite_flatten(cfg, 1));
  add(suite_mean_value(cfg, k));
  add(suite_loops(cfg, 10));
  add(suite_converge(cfg));
  add(suite_norm_ordering(cfg, 10 * k, k));
  r.data["config"] = cfg.to_json();
  return r;
}

Report run_flow(const ExperimentConfig& cfg) {
  Report r;
  r.command = "flow";
  const Generator g = config_generator(cfg);
  const Isotopy phi = integrate(g, cfg.torus, cfg.integrator);
  auto rng = suite_rng(cfg, 20);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Point> seeds;
  for (int p = 0; p < 4; ++p) {
    std::vector<double> c(static_cast<std::size_t>(cfg.torus.dim()));
    for (double& v : c) v = uni(rng);
    seeds.emplace_back(std::move(c));
  }
  const PointSet x = PointSet::from_points(seeds);
  const std::size_t S = 4 * (g.nodes() - 1);
  std::vector<double> times(S + 1);
  for (std::size_t i = 0; i <= S; ++i) times[i] = double(i) / double(S);
  const auto traj = phi.trajectory(x, times);
  Table t;
  t.columns.push_back("t");
  for (std::size_t p = 0; p < x.size(); ++p)
    for (int a = 0; a < x.dim(); ++a) t.columns.push_back("p" + std::to_string(p) + "_x" + std::to_string(a + 1));
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row{times[i]};
    for (std::size_t p = 0; p < x.size(); ++p)
      for (int a = 0; a < x.dim(); ++a) row.push_back(traj[i].at(a, p));
    t.rows.push_back(std::move(row));
  }
  r.table = std::move(t);
  const PointSet back = phi.apply_inverse(1.0, phi.apply(1.0, x));
  r.checks.push_back(check_below("flow.round_trip", lifted_sup_error(back, x), 1e-6));
  r.data["step"] = phi.step();
  r.data["jacobian_sup"] = phi.jacobian_sup();
  r.data["dbar_to_identity"] = dbar_to_identity(phi);
  return r;
}

Report run_norms(const ExperimentConfig& cfg) {
  Report r;
  r.command = "norms";
  const Numerics num = numerics(cfg);
  const Generator g = config_generator(cfg);
  const double a = length_l1inf(g, cfg.torus), b = length_linf(g, cfg.torus);
  const double d1 = D1(g, Generator::zero(g.n(), g.nodes()), num);
  const EnergyBounds e = energy_upper_bound(g, cfg.eps, num);
  const auto hl = hoferlike_norm_bound(g, cfg.eps, num);
  Table t;
  t.columns = {"l1inf", "linf", "d1_to_zero", "energy_1inf_bound", "energy_inf_bound", "norm_1inf_bound",
               "norm_inf_bound"};
  t.rows.push_back({a, b, d1, e.e_1inf, e.e_inf, hl.first, hl.second});
  r.table = std::move(t);
  r.checks.push_back(check_at_most("lengths.ordering", a, b));
  json cands = json::array();
  for (std::size_t i = 0; i < e.candidates.size(); ++i)
    cands.push_back({{"candidate", e.candidates[i]}, {"l1inf", e.l1inf[i]}, {"linf", e.linf[i]}});
  r.data["candidates"] = std::move(cands);
  r.data["note"] = "energies are upper bounds from constructed paths, not infima";
  return r;
}

Report run_regularize(const ExperimentConfig& cfg) {
  Report r;
  r.command = "regularize";
  const Numerics num = numerics(cfg);
  const Generator g = config_generator(cfg);
  const Regularized reg = regularize(g, cfg.eps, num);
  const int res = osc_resolution(cfg.torus);
  auto min_cost = [&](const Generator& h) {
    double m = INFINITY;
    const std::size_t S = 8 * (h.nodes() - 1);
    for (std::size_t i = 0; i <= S; ++i) m = std::min(m, length_integrand(h, double(i) / double(S), res));
    return m;
  };
  Table t;
  t.columns = {"stage", "l1inf", "linf", "min_cost"};
  t.rows.push_back({0, reg.l1inf_before, length_linf(g, cfg.torus), min_cost(g)});
  t.rows.push_back({1, reg.l1inf_after, length_linf(reg.generator, cfg.torus), min_cost(reg.generator)});
  r.table = std::move(t);
  const std::size_t T = g.nodes();
  const Isotopy a = integrate(g, cfg.torus, cfg.integrator), b = integrate(reg.generator, cfg.torus, cfg.integrator);
  r.checks.push_back(check_below("regularize.same_endpoint", c0_distance(a.image(T - 1), b.image(T - 1)), cfg.tol.endpoint));
  r.checks.push_back({"regularize.certificate", reg.certificate.min_value, reg.certificate.margin, reg.certificate.ok,
                      "worst_t=" + std::to_string(reg.certificate.worst_time)});
  r.data["loop"] = {{"profile", reg.loop.profile == HamiltonianLoop::Profile::Separable ? "separable" : "traveling_wave"},
                    {"delta", reg.loop.delta},
                    {"tau", reg.loop.tau},
                    {"osc_integral", reg.loop.osc_integral()},
                    {"halvings", reg.halvings}};
  return r;
}

Report run_equalize(const ExperimentConfig& cfg) {
  Report r;
  r.command = "equalize";
  const Numerics num = numerics(cfg);
  const Generator g = config_generator(cfg);
  const NormEquality ne = norm_equality_experiment(g, cfg.eps, num, cfg.tol.endpoint);
  Table t;
  t.columns = {"stage", "l1inf", "linf"};
  t.rows.push_back({0, ne.l1inf_g, ne.linf_g});
  t.rows.push_back({1, ne.regular.l1inf_after, length_linf(ne.regular.generator, cfg.torus)});
  t.rows.push_back({2, ne.l1inf_psi, ne.linf_psi});
  r.table = std::move(t);
  r.checks.push_back(check_below("equalize.linf_psi_minus_l1inf", ne.linf_psi - ne.l1inf_g, cfg.eps));
  r.checks.push_back(check_below("equalize.same_endpoint", ne.endpoint_distance, cfg.tol.endpoint));
  r.checks.push_back(check_below("equalize.integrand_deviation", ne.equalized.max_deviation, cfg.tol.equalize));
  r.data["zeta"] = {{"label", ne.equalized.zeta.label()}, {"total", ne.equalized.total}};
  r.data["regularity"] = {{"min_cost", ne.regular.certificate.min_value}, {"margin", ne.regular.certificate.margin}};
  return r;
}

Report run_flux(const ExperimentConfig& cfg) {
  Report r;
  r.command = "flux";
  const Generator g = config_generator(cfg);
  const int n = g.n();
  const CohomologyClass f = flux(g);
  const Isotopy phi = integrate(g, cfg.torus, cfg.integrator);
  json pairings = json::array(), mean_value = json::array();
  for (int i = 0; i < 2 * n; ++i) {
    // Closed straight loop along axis i.
    PointSet loop(2 * n, 65);
    for (std::size_t s = 0; s < 65; ++s) loop.at(i, s) = double(s) / 64.0;
    pairings.push_back({{"loop_axis", i}, {"value", pair_loop(f, loop)}});
    const MeanValueReport e = mean_value_check({HarmonicForm::basis(n, i)}, phi, cfg.tol.mean_value);
    mean_value.push_back({{"alpha", i}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"sign_ok", e.sign_ok}});
    r.checks.push_back(check_below("mean_value.magnitude.alpha" + std::to_string(i), std::abs(std::abs(e.lhs) - std::abs(e.rhs)),
                                   cfg.tol.mean_value));
    r.checks.push_back({"mean_value.sign.alpha" + std::to_string(i), e.lhs, kMeanValueSign * e.rhs,
                        e.sign_ok || std::abs(e.rhs) <= cfg.tol.mean_value, ""});
  }
  r.data["flux"] = f.rep.coeffs;
  r.data["pairings"] = std::move(pairings);
  r.data["mean_value"] = std::move(mean_value);
  r.data["ktilde"] = ktilde(phi).values;
  return r;
}

Report run_permutorus(const ExperimentConfig& cfg) {
  Report r;
  r.command = "permutorus";
  r.checks = suite_loops(cfg, 10);
  const std::size_t T = std::size_t(cfg.torus.time_res);
  const Isotopy mer = integrate(meridian_translation(cfg.torus.n, T), cfg.torus, cfg.integrator);
  std::vector<double> origin(static_cast<std::size_t>(cfg.torus.dim()), 0.0);
  r.data["meridian_area"] = hamiltonian_loop_area({HarmonicForm::basis(cfg.torus.n, cfg.torus.n)}, mer, Point(origin));
  r.data["volume"] = 1.0;
  return r;
}

Report run_converge(const ExperimentConfig& cfg) {
  Report r;
  r.command = "converge";
  r.table = converge_table(cfg);
  r.checks = suite_converge(cfg);
  return r;
}

Report run_neighborhood(const ExperimentConfig& cfg) {
  Report r;
  r.command = "neighborhood";
  const int n = cfg.torus.n;
  const std::size_t T = std::size_t(cfg.torus.time_res);
  HarmonicForm h = HarmonicForm::zero(n);
  if (int(cfg.neighborhood_h.size()) == 2 * n) h.coeffs = cfg.neighborhood_h;
  else h = form_xy(n, cfg.neighborhood_h[0], cfg.neighborhood_h[1]);
  const HarmonicPath H = HarmonicPath::constant(h, T);
  const double eps = cfg.neighborhood_eps;
  const double radius = std::min(TorusSpec::injectivity_radius, eps / (4.0 * H.max_norm() + 1.0));
  auto rng = suite_rng(cfg, 21);
  RandomGeneratorOptions ham;
  ham.hamiltonian = true;
  Table t;
  t.columns = {"instance", "dbar", "integral_osc", "max_osc"};
  double worst_int = 0.0, worst_max = 0.0, worst_d = 0.0;
  for (int k = 0; k <= cfg.instances; ++k) {
    Generator g = k == 0 ? Generator::zero(n, T) : random_generator(n, T, rng, ham);
    Isotopy psi = integrate(g, cfg.torus, cfg.integrator);
    double d = dbar_to_identity(psi);
    while (d >= radius) {
      g = scaled(g, 0.9 * radius / d);
      psi = integrate(g, cfg.torus, cfg.integrator);
      d = dbar_to_identity(psi);
    }
    const DeltaFunction del = delta_normalized(H, psi);
    std::vector<double> o(T);
    for (std::size_t j = 0; j < T; ++j) o[j] = del[j].osc();
    const double in = node_simpson(o), mx = *std::max_element(o.begin(), o.end());
    worst_int = std::max(worst_int, in);
    worst_max = std::max(worst_max, mx);
    worst_d = std::max(worst_d, d);
    t.rows.push_back({double(k), d, in, mx});
  }
  r.table = std::move(t);
  r.checks.push_back(check_below("neighborhood.dbar_below_radius", worst_d, radius));
  r.checks.push_back(check_below("neighborhood.integral_osc", worst_int, eps));
  r.checks.push_back(check_below("neighborhood.max_osc", worst_max, eps));
  r.data["radius"] = radius;
  r.data["eps"] = eps;
  return r;
}

}  // namespace symiso
