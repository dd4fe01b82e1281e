#include "symiso/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace symiso {

namespace {

void require_compatible(const HarmonicPath& H, const Isotopy& phi) {
  if (H.nodes() != phi.nodes()) throw Error("delta: time grids of H and the isotopy are incompatible");
  if (H.n() != phi.spec().n) throw Error("delta: H and the isotopy live on different tori");
}

// h(p_i - x_i) over a grid map.
std::vector<double> displacement_pairing(const HarmonicForm& h, const PointSet& base, const PointSet& img) {
  std::vector<double> v(base.size(), 0.0);
  for (int a = 0; a < base.dim(); ++a) {
    const double c = h.coeffs[std::size_t(a)];
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < base.size(); ++i) v[i] += c * (img.at(a, i) - base.at(a, i));
  }
  return v;
}

GridField as_grid(const TorusSpec& spec, std::vector<double> v) {
  GridField g;
  g.dim = spec.dim();
  g.res = spec.grid_res;
  g.values = std::move(v);
  return g;
}

void note(ProjectionStats* stats, const ProjectionReport& r) {
  if (!stats) return;
  stats->max_residual = std::max(stats->max_residual, r.max_residual);
  stats->bandwidth = std::max(stats->bandwidth, r.bandwidth);
}

}  // namespace

DeltaFunction DeltaFunction::normalized_copy() const {
  DeltaFunction out = *this;
  for (auto& s : out.slices) s = s.normalized();
  out.normalized = true;
  return out;
}

DeltaFunction delta(const HarmonicPath& H, const Isotopy& phi) {
  require_compatible(H, phi);
  DeltaFunction d;
  d.slices.reserve(phi.nodes());
  for (std::size_t j = 0; j < phi.nodes(); ++j)
    d.slices.push_back(as_grid(phi.spec(), displacement_pairing(H.node_form(j), phi.grid(), phi.image(j))));
  return d;
}

DeltaFunction delta_normalized(const HarmonicPath& H, const Isotopy& phi) {
  return delta(H, phi).normalized_copy();
}

std::vector<double> delta_line_integral(const HarmonicPath& H, const Isotopy& phi, std::size_t node,
                                        const PointSet& points, int samples) {
  require_compatible(H, phi);
  if (samples < 1) throw Error("delta_line_integral: need at least one segment sample");
  const int d = points.dim();
  const std::size_t m = std::size_t(samples) + 1, P = points.size();
  const double t = phi.node_time(node);
  const HarmonicForm h = H.node_form(node);
  // Segment from the origin to the nearest lift of each point.
  PointSet seg(d, P * m);
  std::vector<double> end(static_cast<std::size_t>(d));
  for (std::size_t p = 0; p < P; ++p) {
    for (int a = 0; a < d; ++a) end[std::size_t(a)] = wrap_delta(points.at(a, p));
    for (std::size_t s = 0; s < m; ++s)
      for (int a = 0; a < d; ++a) seg.at(a, p * m + s) = end[std::size_t(a)] * double(s) / double(samples);
  }
  // Only the wrapped images are used, so the lift comes from unwrapping alone.
  const PointSet img = phi.apply(t, seg).wrapped();
  std::vector<double> out(P, 0.0);
  PointSet curve(d, m);
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t s = 0; s < m; ++s)
      for (int a = 0; a < d; ++a) curve.at(a, s) = img.at(a, p * m + s);
    const PointSet u = unwrap_curve(curve);
    double v = 0.0;
    for (int a = 0; a < d; ++a) {
      const double push = u.at(a, m - 1) - u.at(a, 0);
      const double base = seg.at(a, p * m + m - 1) - seg.at(a, p * m);
      v += h.coeffs[std::size_t(a)] * (push - base);
    }
    out[p] = v;
  }
  return out;
}

double delta_mean(const HarmonicPath& H, const Isotopy& phi, std::size_t node) {
  require_compatible(H, phi);
  const auto v = displacement_pairing(H.node_form(node), phi.grid(), phi.image(node));
  double s = 0.0;
  for (double x : v) s += x;
  return s / double(v.size());
}

Generator product(const Generator& g1, const Generator& g2, const Numerics& num, ProjectionStats* stats) {
  if (g2.U.is_zero() && g2.H.is_zero()) return g1;
  Isotopy phi1 = integrate(g1, num.torus, num.integrator);
  return product(g1, phi1, g2, num, stats);
}

Generator product(const Generator& g1, const Isotopy& phi1, const Generator& g2, const Numerics& num,
                  ProjectionStats* stats) {
  if (g1.nodes() != g2.nodes() || g1.nodes() != phi1.nodes())
    throw Error("product: generators have incompatible time grids");
  if (g1.n() != g2.n()) throw Error("product: generators live on different tori");
  const int Kp = num.projection_bandwidth();
  const PointSet& x = phi1.grid();
  std::vector<FourierField> u;
  std::vector<HarmonicForm> h;
  u.reserve(g1.nodes());
  FieldSamples fs;
  for (std::size_t j = 0; j < g1.nodes(); ++j) {
    const FourierField V = g2.U.node_field(j);
    const HarmonicForm K = g2.H.node_form(j);
    FourierField W = g1.U.node_field(j);
    const bool trivial = V.bandwidth() == 0 && std::all_of(K.coeffs.begin(), K.coeffs.end(),
                                                          [](double c) { return c == 0.0; });
    if (!trivial) {
      const PointSet& y = phi1.inverse_image(j);
      V.evaluate(y, fs, 0);
      std::vector<double> vals = displacement_pairing(K, x, y);
      for (std::size_t i = 0; i < vals.size(); ++i) vals[i] += fs.value[i];
      ProjectionReport rep;
      W += project(as_grid(num.torus, std::move(vals)), num.torus.n, Kp, num.trim, &rep);
      note(stats, rep);
    }
    u.push_back(W.normalized());
    h.push_back(g1.H.node_form(j) + K);
  }
  return {FourierHamiltonian(u), HarmonicPath(h)};
}

Generator inverse(const Generator& g, const Numerics& num, ProjectionStats* stats) {
  if (g.U.is_zero() && g.H.is_zero()) return Generator::zero(g.n(), g.nodes());
  Isotopy phi = integrate(g, num.torus, num.integrator);
  return inverse(g, phi, num, stats);
}

Generator inverse(const Generator& g, const Isotopy& phi, const Numerics& num, ProjectionStats* stats) {
  if (g.nodes() != phi.nodes()) throw Error("inverse: generator and isotopy time grids differ");
  const int Kp = num.projection_bandwidth();
  std::vector<FourierField> u;
  std::vector<HarmonicForm> h;
  FieldSamples fs;
  for (std::size_t j = 0; j < g.nodes(); ++j) {
    const FourierField U = g.U.node_field(j);
    const HarmonicForm H = g.H.node_form(j);
    const PointSet& y = phi.image(j);
    U.evaluate(y, fs, 0);
    std::vector<double> vals = displacement_pairing(H, phi.grid(), y);
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = -(vals[i] + fs.value[i]);
    ProjectionReport rep;
    u.push_back(project(as_grid(num.torus, std::move(vals)), num.torus.n, Kp, num.trim, &rep).normalized());
    note(stats, rep);
    h.push_back(-1.0 * H);
  }
  return {FourierHamiltonian(u), HarmonicPath(h)};
}

Generator reparameterize(const Generator& g, const ReparamCurve& xi) {
  if (std::abs(xi.value(0.0)) > 1e-12) throw Error("reparameterize: xi(0) must be 0");
  for (double v : xi.samples())
    if (v < -1e-12 || v > 1.0 + 1e-12) throw Error("reparameterize: xi leaves [0,1]");
  if (xi.is_identity()) return g;
  return {g.U.reparameterized(xi), g.H.reparameterized(xi)};
}

std::vector<double> harmonic_translation(const HarmonicPath& H, double t) {
  const HarmonicForm F = H.integral(t);
  const int n = H.n();
  std::vector<double> v(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    v[std::size_t(i)] = F.coeffs[std::size_t(n + i)];
    v[std::size_t(n + i)] = -F.coeffs[std::size_t(i)];
  }
  return v;
}

HodgeParts hodge_decompose(const Generator& g) {
  const std::size_t T = g.nodes();
  Generator harm(FourierHamiltonian::zero(g.n(), T), g.H);
  if (g.H.is_zero()) return {harm, g};
  std::vector<FourierField> u;
  u.reserve(T);
  for (std::size_t j = 0; j < T; ++j)
    u.push_back(g.U.node_field(j).translated(harmonic_translation(g.H, g.node_time(j))));
  return {harm, Generator(FourierHamiltonian(u), HarmonicPath::zero(g.n(), T))};
}

std::vector<GridField> delta_composition_residual(const HarmonicPath& H, const Isotopy& phi1,
                                                  const Isotopy& phi2, const Numerics& num) {
  require_compatible(H, phi1);
  require_compatible(H, phi2);
  const Generator g12 = product(phi1.generator(), phi1, phi2.generator(), num);
  const Isotopy phi12 = integrate(g12, num.torus, num.integrator);
  const DeltaFunction d12 = delta(H, phi12);
  const DeltaFunction d2 = delta(H, phi2);
  std::vector<GridField> out;
  for (std::size_t j = 0; j < phi1.nodes(); ++j) {
    const HarmonicForm h = H.node_form(j);
    const PointSet& y = phi2.image(j);
    const PointSet z = phi1.apply(phi1.node_time(j), y);
    const std::vector<double> d1 = displacement_pairing(h, y, z);
    GridField r = d12[j];
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] -= d2[j].values[i] + d1[i];
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace symiso
