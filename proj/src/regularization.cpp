#include "symiso/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace symiso {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<int> first_axis_mode(int n) {
  std::vector<int> k(static_cast<std::size_t>(2 * n), 0);
  k[0] = 1;
  return k;
}

double cost_min_osc(const FourierHamiltonian& U, std::size_t samples, int res) {
  double c = INFINITY;
  for (std::size_t i = 0; i <= samples; ++i) c = std::min(c, osc(U.at(double(i) / double(samples)), res));
  return c;
}

}  // namespace

double HamiltonianLoop::beta(double t) const {
  if (profile == Profile::TravelingWave) return delta;
  return delta * std::sin(kTwoPi * (t - tau));
}

FourierField HamiltonianLoop::rho() const { return FourierField::cosine(n, first_axis_mode(n), 1.0); }

FourierField HamiltonianLoop::field(double t) const {
  if (profile == Profile::TravelingWave) return FourierField::cosine(n, first_axis_mode(n), delta, -kTwoPi * (t + tau));
  return FourierField::cosine(n, first_axis_mode(n), beta(t));
}

Generator HamiltonianLoop::generator(std::size_t nodes) const {
  return {FourierHamiltonian::from_function(nodes, [this](double t) { return field(t); }),
          HarmonicPath::zero(n, nodes)};
}

double HamiltonianLoop::osc_integral() const {
  // osc(cos) = 2; the separable profile averages |sin| to 2/pi.
  return profile == Profile::TravelingWave ? 2.0 * delta : 2.0 * delta * 2.0 / std::numbers::pi;
}

Certificate positivity_certificate(const std::function<double(double)>& cost, std::size_t samples) {
  Certificate c;
  c.min_value = INFINITY;
  double prev = 0.0;
  for (std::size_t i = 0; i <= samples; ++i) {
    const double t = double(i) / double(samples), v = cost(t);
    if (v < c.min_value) c.min_value = v, c.worst_time = t;
    if (i > 0) c.margin = std::max(c.margin, 0.5 * std::abs(v - prev));
    prev = v;
  }
  c.ok = c.min_value > c.margin;
  return c;
}

HamiltonianLoop find_hamiltonian_loop(const FourierHamiltonian& U, double eps, const TorusSpec& spec,
                                 const LoopSearchOptions& opt) {
  if (!(eps > 0.0)) throw Error("find_hamiltonian_loop: eps must be positive");
  const int res = osc_resolution(spec);
  const std::size_t S = std::size_t(opt.samples_per_interval) * (U.nodes() - 1);
  HamiltonianLoop loop;
  loop.n = U.n();
  const double delta_eps = std::numbers::pi * eps / 8.0;

  // If U alone oscillates by c > 0 everywhere, a loop with osc(r_t) <= c/2 cannot cancel it.
  const double c = cost_min_osc(U, S, res);
  const double jump = [&] {
    double j = 0.0, prev = osc(U.at(0.0), res);
    for (std::size_t i = 1; i <= S; ++i) {
      const double v = osc(U.at(double(i) / double(S)), res);
      j = std::max(j, 0.5 * std::abs(v - prev));
      prev = v;
    }
    return j;
  }();
  if (c > jump && c > 0.0) {
    loop.delta = std::min(c / 4.0, delta_eps);
    loop.tau = 0.0;
    return loop;
  }

  auto certify = [&](const HamiltonianLoop& l) {
    return positivity_certificate([&](double t) { return osc(U.at(t) - l.field(t), res); }, S);
  };
  loop.delta = delta_eps;
  std::vector<double> taus;
  for (int k = 0; k < opt.phases; ++k) taus.push_back(double(k) / double(opt.phases));
  // Try quarter phases first: they keep beta away from zero at the endpoints.
  std::stable_sort(taus.begin(), taus.end(), [](double a, double b) {
    auto rank = [](double t) { return std::abs(std::fmod(4.0 * t, 1.0)) < 1e-12 ? 0 : 1; };
    return rank(a) < rank(b);
  });
  std::ostringstream bad;
  for (double tau : taus) {
    loop.tau = tau;
    const Certificate cert = certify(loop);
    if (cert.ok) return loop;
    bad << " tau=" << tau << ":t=" << cert.worst_time;
  }
  // A zero-mean beta always vanishes somewhere; the traveling wave has constant oscillation.
  loop.profile = HamiltonianLoop::Profile::TravelingWave;
  loop.delta = eps / 4.0;  // int osc r = eps/2
  for (double tau : taus) {
    loop.tau = tau;
    const Certificate cert = certify(loop);
    if (cert.ok) return loop;
    bad << " wave tau=" << tau << ":t=" << cert.worst_time;
  }
  throw Error("find_hamiltonian_loop: no admissible loop; osc(U_t - r_t) vanishes near" + bad.str());
}

Generator compose_with_loop(const Generator& g, const HamiltonianLoop& loop, const Numerics& num) {
  const std::size_t T = g.nodes();
  const Generator r = loop.generator(T);
  const Isotopy phi_r = integrate(r, num.torus, num.integrator);
  const int Kp = num.projection_bandwidth();
  std::vector<FourierField> v;
  v.reserve(T);
  FieldSamples fu;
  const PointSet& x = phi_r.grid();
  for (std::size_t j = 0; j < T; ++j) {
    const PointSet& y = phi_r.image(j);
    (g.U.node_field(j) - r.U.node_field(j)).evaluate(y, fu, 0);
    const HarmonicForm h = g.H.node_form(j);
    GridField grid;
    grid.dim = num.torus.dim();
    grid.res = num.torus.grid_res;
    grid.values = fu.value;
    for (int a = 0; a < grid.dim; ++a) {
      const double ca = h.coeffs[std::size_t(a)];
      if (ca == 0.0) continue;
      for (std::size_t i = 0; i < x.size(); ++i) grid.values[i] += ca * (y.at(a, i) - x.at(a, i));
    }
    v.push_back(project(grid, num.torus.n, Kp, num.trim).normalized());
  }
  return {FourierHamiltonian(v), g.H};
}

Regularized regularize(const Generator& g, double eps, const Numerics& num, const LoopSearchOptions& opt) {
  Regularized out;
  out.loop = find_hamiltonian_loop(g.U, eps, num.torus, opt);
  out.l1inf_before = length_l1inf(g, num.torus);
  const int res = osc_resolution(num.torus);
  const std::size_t S = std::size_t(opt.samples_per_interval) * (g.nodes() - 1);
  for (;; ++out.halvings) {
    out.generator = compose_with_loop(g, out.loop, num);
    out.l1inf_after = length_l1inf(out.generator, num.torus);
    if (out.l1inf_after <= out.l1inf_before + eps / 2.0 || out.halvings >= 30) break;
    out.loop.delta /= 2.0;
  }
  const Generator& xi = out.generator;
  out.certificate = positivity_certificate([&](double t) { return length_integrand(xi, t, res); }, S);
  if (!out.certificate.ok) {
    std::ostringstream msg;
    msg << "regularize: regularity certificate failed, min cost " << out.certificate.min_value << " at t="
        << out.certificate.worst_time << " below margin " << out.certificate.margin;
    throw Error(msg.str());
  }
  return out;
}

Equalized equalizing_zeta(const Generator& g, const TorusSpec& spec, const EqualizeOptions& opt) {
  const int res = osc_resolution(spec);
  const int N = opt.samples;
  if (N < 4) throw Error("equalizing_zeta: too few samples");
  auto cost = [&](double t) { return length_integrand(g, t, res); };
  std::vector<double> s(std::size_t(N) + 1), c(s.size());
  double cmin = INFINITY, cmax = 0.0;
  for (int i = 0; i <= N; ++i) {
    s[std::size_t(i)] = double(i) / N;
    c[std::size_t(i)] = cost(s[std::size_t(i)]);
    cmin = std::min(cmin, c[std::size_t(i)]);
    cmax = std::max(cmax, c[std::size_t(i)]);
  }
  if (!(cmin > 0.0)) throw Error("equalizing_zeta: length integrand is not positive; regularize first");
  Equalized out;
  if (cmax - cmin <= 1e-12 * cmax) {
    out.zeta = ReparamCurve::identity();
    out.total = 0.5 * (cmin + cmax);
    return out;
  }
  std::vector<double> F = cumulative_simpson(c, 1.0 / N);
  out.total = F.back();
  std::vector<double> slopes(c.size());
  for (std::size_t i = 0; i < F.size(); ++i) F[i] /= out.total, slopes[i] = c[i] / out.total;
  F.back() = 1.0;
  const MonotoneCubic cdf(s, F, slopes);

  std::vector<double> z(s.size()), dz(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    z[k] = k == 0 ? 0.0 : (k + 1 == s.size() ? 1.0 : cdf.inverse(s[k]));
    dz[k] = out.total / cost(z[k]);
  }
  if (opt.mollify > 0.0) {
    // C2 kernel (1 - r^2)^3 on the derivative, reflected at the ends, then
    // rescaled so the curve still runs from 0 to 1.
    const double h = 1.0 / N;
    const int w = std::max(1, int(std::lround(opt.mollify / h)));
    std::vector<double> sm(dz.size());
    for (int k = 0; k <= N; ++k) {
      double acc = 0.0, wsum = 0.0;
      for (int m = -w; m <= w; ++m) {
        int idx = k + m;
        if (idx < 0) idx = -idx;
        if (idx > N) idx = 2 * N - idx;
        const double r = double(m) / double(w + 1), kw = std::pow(1.0 - r * r, 3);
        acc += kw * dz[std::size_t(idx)];
        wsum += kw;
      }
      sm[std::size_t(k)] = acc / wsum;
    }
    std::vector<double> cum = cumulative_simpson(sm, h);
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = cum[k] / cum.back(), dz[k] = sm[k] / cum.back();
  }
  out.zeta = ReparamCurve::tabulated(z, dz, "equalizing");
  const int M = opt.check_samples;
  for (int i = 0; i <= M; ++i) {
    const double u = double(i) / M;
    const double v = out.zeta.derivative(u) * cost(out.zeta.value(u));
    out.max_deviation = std::max(out.max_deviation, std::abs(v - out.total));
  }
  return out;
}

ReparamCurve boundary_flat_xi(double delta) {
  if (!(delta > 0.0 && delta < 1.0 / 13.0)) throw Error("boundary_flat_xi: need 0 < delta < 1/13");
  return ReparamCurve::boundary_flat(delta);
}

Flattened flatten(const Generator& g, double eps, const Numerics& num, double delta_floor) {
  if (!(eps > 0.0)) throw Error("flatten: eps must be positive");
  Flattened out;
  if (g.U.is_zero() && g.H.is_zero()) {
    out.generator = g;
    out.xi = boundary_flat_xi(0.05);
    out.delta = 0.05;
    return out;
  }
  const Isotopy phi = integrate(g, num.torus, num.integrator);
  const Generator g_inv = inverse(g, phi, num);
  for (double delta = 0.05; delta >= delta_floor; delta /= 2.0) {
    ++out.attempts;
    out.xi = boundary_flat_xi(delta);
    out.delta = delta;
    out.generator = reparameterize(g, out.xi);
    const Isotopy phi_xi = integrate(out.generator, num.torus, num.integrator);
    out.d1 = D1(g, g_inv, out.generator, inverse(out.generator, phi_xi, num), num.torus);
    out.dbar = dbar(phi, phi_xi);
    out.ham_distance = ham_distance(ReparamCurve::identity(), out.xi);
    if (out.d1 < eps && out.dbar < eps) return out;
  }
  std::ostringstream msg;
  msg << "flatten: eps=" << eps << " not reached at delta floor " << delta_floor << " (D1=" << out.d1
      << ", dbar=" << out.dbar << "); try a smaller floor";
  throw Error(msg.str());
}

namespace {

// Simpson over the time nodes of the per-node values.
double node_integral(const std::vector<double>& v) {
  const auto w = simpson_weights(v.size(), 1.0);
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += w[j] * v[j];
  return s;
}

double hnorm_integral(const HarmonicPath& H) {
  return integrate_time([&](double t) { return norm_euclidean(H.at(t)); }, H.nodes(), {0, 1e-12, 12, 1});
}

BoundReport bound(double lhs, double rhs) {
  BoundReport b;
  b.lhs = lhs;
  b.rhs = rhs;
  b.holds = lhs <= rhs;
  return b;
}

}  // namespace

GeodesicBoundReport geodesic_bound_check(const HarmonicPath& H, const Isotopy& phi) {
  const DeltaFunction d = delta(H, phi);
  std::vector<double> o(d.nodes());
  for (std::size_t j = 0; j < d.nodes(); ++j) o[j] = d[j].osc();
  GeodesicBoundReport r;
  r.jacobian = phi.jacobian_sup();
  const double k = 2.0 * phi.spec().diameter() * (1.0 + r.jacobian);
  r.integral = bound(node_integral(o), k * hnorm_integral(H));
  r.maximum = bound(*std::max_element(o.begin(), o.end()), k * H.max_norm());
  return r;
}

BoundReport delta_distance_check(const HarmonicPath& H, const Isotopy& phi, const Isotopy& psi) {
  const double db = dbar(phi, psi);
  BoundReport r;
  r.rhs = 4.0 * H.max_norm() * db;
  if (db > TorusSpec::injectivity_radius / 2.0) {
    r.skipped = true;
    r.holds = true;
    r.note = "dbar exceeds r(g)/2 = 1/4; hypothesis not met";
    return r;
  }
  const DeltaFunction a = delta(H, phi), b = delta(H, psi);
  std::vector<double> o(a.nodes());
  for (std::size_t j = 0; j < a.nodes(); ++j) {
    GridField diff = a[j];
    diff -= b[j];
    o[j] = diff.osc();
  }
  r.lhs = node_integral(o);
  r.holds = r.lhs <= r.rhs;
  return r;
}

BoundReport reparam_delta_check(const HarmonicPath& H, const Isotopy& phi, const ReparamCurve& xi1,
                                const ReparamCurve& xi2, int samples_per_interval) {
  const std::size_t S = std::size_t(samples_per_interval) * (phi.nodes() - 1);
  std::vector<double> times(S + 1);
  for (std::size_t i = 0; i <= S; ++i) times[i] = double(i) / double(S);
  const PointSet& x = phi.grid();
  const std::vector<PointSet> traj = phi.trajectory(x, times);
  const HarmonicPath H1 = H.reparameterized(xi1), H2 = H.reparameterized(xi2);
  std::vector<double> o(S + 1);
  for (std::size_t i = 0; i <= S; ++i) {
    const HarmonicForm dh = H1.at(times[i]) - H2.at(times[i]);
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t p = 0; p < x.size(); ++p) {
      double v = 0.0;
      for (int a = 0; a < x.dim(); ++a) v += dh.coeffs[std::size_t(a)] * (traj[i].at(a, p) - x.at(a, p));
      lo = std::min(lo, v), hi = std::max(hi, v);
    }
    o[i] = hi - lo;
  }
  const double B1 = 4.0 * phi.spec().diameter() * std::max(H.lipschitz(), H.max_norm()) * (1.0 + phi.jacobian_sup());
  return bound(node_integral(o), B1 * ham_distance(xi1, xi2));
}

ReparamStability reparam_stability_check(const Generator& g, const Isotopy& phi, const ReparamCurve& xi1,
                                         const ReparamCurve& xi2, const Numerics& num) {
  ReparamStability r;
  const Generator a = reparameterize(g, xi1), b = reparameterize(g, xi2);
  const Isotopy pa = integrate(a, num.torus, num.integrator), pb = integrate(b, num.torus, num.integrator);
  // A bound check with a wide margin; 1e-8 quadrature keeps D1 to ~8 digits at half the cost.
  QuadratureOptions q;
  q.tol = 1e-8;
  r.d1 = D1(a, inverse(a, pa, num), b, inverse(b, pb, num), num.torus, q);
  r.ham_distance = ham_distance(xi1, xi2);
  r.ratio = r.ham_distance > 0.0 ? r.d1 / r.ham_distance : 0.0;
  r.constant = reparam_constant(g, phi, num.torus);
  r.generator_bound = bound(r.d1, r.constant.C * r.ham_distance);
  r.delta_bound = reparam_delta_check(g.H, phi, xi1, xi2);
  return r;
}

NormEquality norm_equality_experiment(const Generator& g, double eps, const Numerics& num, double endpoint_tol) {
  NormEquality r;
  const TorusSpec& spec = num.torus;
  const int res = osc_resolution(spec);
  r.l1inf_g = length_l1inf(g, spec);
  r.linf_g = length_linf(g, spec);
  const std::size_t S = 8 * (g.nodes() - 1);
  const Certificate own = positivity_certificate([&](double t) { return length_integrand(g, t, res); }, S);
  if (own.ok) {
    // Already regular: no loop is needed.
    r.regular.generator = g;
    r.regular.certificate = own;
    r.regular.loop.delta = 0.0;
    r.regular.l1inf_before = r.regular.l1inf_after = r.l1inf_g;
  } else {
    try {
      r.regular = regularize(g, eps, num);
    } catch (const Error& e) {
      throw Error(std::string("norm_equality_experiment: equalization needs a regular path; ") + e.what());
    }
  }
  r.equalized = equalizing_zeta(r.regular.generator, spec);
  r.psi = reparameterize(r.regular.generator, r.equalized.zeta);
  r.l1inf_psi = length_l1inf(r.psi, spec);
  r.linf_psi = length_linf(r.psi, spec);
  const Isotopy a = integrate(g, spec, num.integrator), b = integrate(r.psi, spec, num.integrator);
  r.endpoint_distance = c0_distance(a.image(a.nodes() - 1), b.image(b.nodes() - 1));
  r.length_ok = r.linf_psi < r.l1inf_g + eps;
  r.endpoint_ok = r.endpoint_distance < endpoint_tol;
  return r;
}

EnergyBounds energy_upper_bound(const Generator& g, double eps, const Numerics& num) {
  EnergyBounds e;
  auto add = [&](const std::string& name, const Generator& c) {
    e.candidates.push_back(name);
    e.l1inf.push_back(length_l1inf(c, num.torus));
    e.linf.push_back(length_linf(c, num.torus));
  };
  add("self", g);
  if (!(g.U.is_zero() && g.H.is_zero())) {
    try {
      add("equalized", norm_equality_experiment(g, eps, num).psi);
    } catch (const Error&) {
      // Candidates only supply upper bounds; skip what cannot be built. Boundary-flat
      // reparameterizations are not tried: they keep l1inf and can only raise linf.
    }
  }
  e.e_1inf = *std::min_element(e.l1inf.begin(), e.l1inf.end());
  e.e_inf = *std::min_element(e.linf.begin(), e.linf.end());
  return e;
}

std::pair<double, double> hoferlike_norm_bound(const Generator& g, double eps, const Numerics& num) {
  const EnergyBounds a = energy_upper_bound(g, eps, num), b = energy_upper_bound(inverse(g, num), eps, num);
  return {0.5 * (a.e_1inf + b.e_1inf), 0.5 * (a.e_inf + b.e_inf)};
}

}  // namespace symiso
