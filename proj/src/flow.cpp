#include "symiso/flow.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace symiso {

void IntegratorConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error("integrator.h must be a positive number");
  if (grid_refine < 1) throw Error("integrator.grid_refine must be >= 1");
}

VelocityField::VelocityField(const Generator& g, double t) : u_(g.U.at(t)), h_(g.H.at(t)) {}

VelocityField::VelocityField(FourierField u, HarmonicForm h) : u_(std::move(u)), h_(std::move(h)) {
  if (u_.n() != h_.n()) throw Error("VelocityField: dimension mismatch");
}

void VelocityField::evaluate(const PointSet& x, PointSet& z) const {
  const int n = u_.n();
  const std::size_t N = x.size();
  if (z.dim() != x.dim() || z.size() != N) z = PointSet(x.dim(), N);
  if (u_.bandwidth() == 0) {
    for (int i = 0; i < n; ++i) {
      std::fill(z.axis(i).begin(), z.axis(i).end(), h_.coeffs[std::size_t(n + i)]);
      std::fill(z.axis(n + i).begin(), z.axis(n + i).end(), -h_.coeffs[std::size_t(i)]);
    }
    return;
  }
  u_.evaluate(x, scratch_, 1);
  for (int i = 0; i < n; ++i) {
    const double hx = h_.coeffs[std::size_t(i)], hy = h_.coeffs[std::size_t(n + i)];
    const double* gx = scratch_.grad.data() + std::size_t(i) * N;
    const double* gy = scratch_.grad.data() + std::size_t(n + i) * N;
    double* zx = z.axis(i).data();
    double* zy = z.axis(n + i).data();
    for (std::size_t p = 0; p < N; ++p) {
      zx[p] = gy[p] + hy;
      zy[p] = -gx[p] - hx;
    }
  }
}

void VelocityField::evaluate(const PointSet& x, PointSet& z, std::vector<double>& dz) const {
  const int n = u_.n(), d = 2 * n;
  const std::size_t N = x.size();
  evaluate(x, z);
  dz.assign(std::size_t(d * d) * N, 0.0);
  if (u_.bandwidth() == 0) return;
  u_.evaluate(x, scratch_, 2);
  // Row x_i of DZ is row y_i of the Hessian; row y_i is minus row x_i.
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < d; ++b)
      for (std::size_t p = 0; p < N; ++p) {
        dz[(std::size_t(i) * d + std::size_t(b)) * N + p] = scratch_.hess_at(n + i, b, p);
        dz[(std::size_t(n + i) * d + std::size_t(b)) * N + p] = -scratch_.hess_at(i, b, p);
      }
}

std::vector<double> VelocityField::at(std::span<const double> x) const {
  PointSet p(int(x.size()), 1), z;
  p.set(0, x);
  evaluate(p, z);
  return z.lifted(0);
}

VelocityField velocity_field(const Generator& g, double t) {
  if (t < 0.0 || t > 1.0) throw Error("velocity_field: t must lie in [0,1]");
  return VelocityField(g, t);
}

double velocity_lipschitz_bound(const Generator& g) {
  const std::size_t T = g.nodes();
  const int sub = g.U.warped() ? 8 : 2;
  double L = 0.0;
  for (std::size_t i = 0; i <= (T - 1) * std::size_t(sub); ++i)
    L = std::max(L, g.U.at(double(i) / double((T - 1) * std::size_t(sub))).hessian_bound());
  return L;
}

namespace {

// Velocity fields keyed by time; RK4 revisits t + dt/2 and t + dt.
class FieldCache {
 public:
  explicit FieldCache(const Generator& g) : g_(g) {}
  const VelocityField& at(double t) {
    for (auto& e : slots_)
      if (e.first == t) return *e.second;
    auto& slot = slots_[next_];
    next_ = (next_ + 1) % slots_.size();
    slot.first = t;
    slot.second = std::make_unique<VelocityField>(g_, std::clamp(t, 0.0, 1.0));
    return *slot.second;
  }

 private:
  const Generator& g_;
  std::array<std::pair<double, std::unique_ptr<VelocityField>>, 3> slots_{
      {{NAN, nullptr}, {NAN, nullptr}, {NAN, nullptr}}};
  std::size_t next_ = 0;
};

struct Workspace {
  PointSet k1, k2, k3, k4, tmp;
  std::vector<double> j1, j2, j3, j4, jt, dz;
};

void axpy(const PointSet& x, double a, const PointSet& k, PointSet& out) {
  if (out.dim() != x.dim() || out.size() != x.size()) out = PointSet(x.dim(), x.size());
  const auto& xr = x.raw();
  const auto& kr = k.raw();
  auto& o = out.raw();
  for (std::size_t i = 0; i < xr.size(); ++i) o[i] = xr[i] + a * kr[i];
}

void rk4_step(FieldCache& fc, PointSet& x, double t, double dt, Workspace& w) {
  fc.at(t).evaluate(x, w.k1);
  axpy(x, 0.5 * dt, w.k1, w.tmp);
  fc.at(t + 0.5 * dt).evaluate(w.tmp, w.k2);
  axpy(x, 0.5 * dt, w.k2, w.tmp);
  fc.at(t + 0.5 * dt).evaluate(w.tmp, w.k3);
  axpy(x, dt, w.k3, w.tmp);
  fc.at(t + dt).evaluate(w.tmp, w.k4);
  auto& xr = x.raw();
  const auto &a = w.k1.raw(), &b = w.k2.raw(), &c = w.k3.raw(), &d = w.k4.raw();
  const double s = dt / 6.0;
  for (std::size_t i = 0; i < xr.size(); ++i) xr[i] += s * (a[i] + 2 * b[i] + 2 * c[i] + d[i]);
}

// dst = DZ * M for dim*dim blocks over N points.
void mat_mul(const std::vector<double>& dz, const std::vector<double>& m, std::vector<double>& dst, int d,
             std::size_t N) {
  dst.assign(std::size_t(d * d) * N, 0.0);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        const double* A = dz.data() + (std::size_t(a) * d + std::size_t(c)) * N;
        const double* B = m.data() + (std::size_t(c) * d + std::size_t(b)) * N;
        double* D = dst.data() + (std::size_t(a) * d + std::size_t(b)) * N;
        for (std::size_t p = 0; p < N; ++p) D[p] += A[p] * B[p];
      }
}

void vaxpy(const std::vector<double>& x, double a, const std::vector<double>& k, std::vector<double>& out) {
  out.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * k[i];
}

// RK4 on the flow and its variational equation M' = DZ M.
void rk4_step_jac(FieldCache& fc, PointSet& x, std::vector<double>& M, double t, double dt, Workspace& w) {
  const int d = x.dim();
  const std::size_t N = x.size();
  fc.at(t).evaluate(x, w.k1, w.dz);
  mat_mul(w.dz, M, w.j1, d, N);
  axpy(x, 0.5 * dt, w.k1, w.tmp);
  vaxpy(M, 0.5 * dt, w.j1, w.jt);
  fc.at(t + 0.5 * dt).evaluate(w.tmp, w.k2, w.dz);
  mat_mul(w.dz, w.jt, w.j2, d, N);
  axpy(x, 0.5 * dt, w.k2, w.tmp);
  vaxpy(M, 0.5 * dt, w.j2, w.jt);
  fc.at(t + 0.5 * dt).evaluate(w.tmp, w.k3, w.dz);
  mat_mul(w.dz, w.jt, w.j3, d, N);
  axpy(x, dt, w.k3, w.tmp);
  vaxpy(M, dt, w.j3, w.jt);
  fc.at(t + dt).evaluate(w.tmp, w.k4, w.dz);
  mat_mul(w.dz, w.jt, w.j4, d, N);
  const double s = dt / 6.0;
  auto& xr = x.raw();
  for (std::size_t i = 0; i < xr.size(); ++i)
    xr[i] += s * (w.k1.raw()[i] + 2 * w.k2.raw()[i] + 2 * w.k3.raw()[i] + w.k4.raw()[i]);
  for (std::size_t i = 0; i < M.size(); ++i) M[i] += s * (w.j1[i] + 2 * w.j2[i] + 2 * w.j3[i] + w.j4[i]);
}

// Integrates from t0 to t1 (either direction) with equal steps no longer than h.
void advance(const Generator& g, PointSet& x, double t0, double t1, double h) {
  const double span = t1 - t0;
  if (span == 0.0 || x.size() == 0) return;
  const int steps = std::max(1, int(std::ceil(std::abs(span) / h - 1e-9)));
  const double dt = span / steps;
  FieldCache fc(g);
  Workspace w;
  for (int s = 0; s < steps; ++s) rk4_step(fc, x, t0 + s * dt, dt, w);
}

double operator_norm(const double* m, int d, std::size_t N, std::size_t p) {
  if (d == 2) {
    const double a = m[p], b = m[N + p], c = m[2 * N + p], e = m[3 * N + p];
    const double S = a * a + b * b + c * c + e * e, det = a * e - b * c;
    return std::sqrt(0.5 * (S + std::sqrt(std::max(0.0, S * S - 4 * det * det))));
  }
  Eigen::MatrixXd A(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) A(r, c) = m[(std::size_t(r) * d + std::size_t(c)) * N + p];
  return Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues()(0);
}

}  // namespace

struct Isotopy::State {
  std::shared_ptr<const Generator> gen;
  TorusSpec spec;
  IntegratorConfig cfg;
  int steps_per_interval = 1;
  double dt = 0.0;
  PointSet grid;
  std::vector<PointSet> images;

  std::mutex mu;
  std::vector<std::unique_ptr<PointSet>> inverse;
  std::vector<std::vector<double>> jac;
  double jac_sup = -1.0;

  void ensure_jacobians() {
    std::lock_guard<std::mutex> lock(mu);
    if (jac_sup >= 0.0) return;
    const int d = grid.dim();
    const std::size_t N = grid.size();
    std::vector<double> M(std::size_t(d * d) * N, 0.0);
    for (int a = 0; a < d; ++a) std::fill_n(M.begin() + std::ptrdiff_t((std::size_t(a) * d + a) * N), N, 1.0);
    PointSet x = grid;
    FieldCache fc(*gen);
    Workspace w;
    jac.assign(images.size(), {});
    jac[0] = M;
    double sup = 1.0;
    for (std::size_t j = 0; j + 1 < images.size(); ++j) {
      const double t0 = double(j) / double(images.size() - 1);
      for (int s = 0; s < steps_per_interval; ++s) rk4_step_jac(fc, x, M, t0 + s * dt, dt, w);
      jac[j + 1] = M;
      for (std::size_t p = 0; p < N; ++p) sup = std::max(sup, operator_norm(M.data(), d, N, p));
    }
    jac_sup = sup;
  }

  const PointSet& inverse_image(std::size_t j) {
    std::lock_guard<std::mutex> lock(mu);
    if (!inverse[j]) {
      auto p = std::make_unique<PointSet>(grid);
      advance(*gen, *p, double(j) / double(images.size() - 1), 0.0, dt);
      inverse[j] = std::move(p);
    }
    return *inverse[j];
  }
};

Isotopy::Isotopy(std::shared_ptr<const Generator> g, const TorusSpec& spec, const IntegratorConfig& cfg) {
  spec.validate();
  cfg.validate();
  if (!g) throw Error("integrate: null generator");
  if (g->n() != spec.n) throw Error("integrate: generator and torus dimensions differ");
  const double L = velocity_lipschitz_bound(*g);
  const double safe = L > 0 ? std::min(IntegratorConfig::kMaxStep, 1.0 / L) : IntegratorConfig::kMaxStep;
  if (cfg.h > IntegratorConfig::kMaxStep || cfg.h * L > 2.5) {
    std::ostringstream os;
    os << "integrator step h=" << cfg.h << " is unstable for this generator (Lipschitz bound " << L
       << ", admissible h <= " << IntegratorConfig::kMaxStep << "); suggested h=" << safe;
    throw StabilityError(os.str(), safe);
  }
  auto st = std::make_shared<State>();
  st->gen = g;
  st->spec = spec;
  st->cfg = cfg;
  const std::size_t T = g->nodes();
  const double interval = 1.0 / double(T - 1);
  st->steps_per_interval = std::max(1, int(std::ceil(interval / cfg.h - 1e-9)));
  st->dt = interval / st->steps_per_interval;
  st->grid = grid_points(spec.dim(), spec.grid_res);
  st->images.reserve(T);
  st->images.push_back(st->grid);
  PointSet x = st->grid;
  FieldCache fc(*g);
  Workspace w;
  for (std::size_t j = 0; j + 1 < T; ++j) {
    const double t0 = double(j) * interval;
    for (int s = 0; s < st->steps_per_interval; ++s) rk4_step(fc, x, t0 + s * st->dt, st->dt, w);
    st->images.push_back(x);
  }
  st->inverse.resize(T);
  state_ = std::move(st);
  gen_ = g;
}

const Generator& Isotopy::generator() const {
  if (!gen_) throw Error("Isotopy: no generator attached to this view");
  return *gen_;
}
const TorusSpec& Isotopy::spec() const { return state_->spec; }
const IntegratorConfig& Isotopy::config() const { return state_->cfg; }
std::size_t Isotopy::nodes() const { return state_->images.size(); }
double Isotopy::node_time(std::size_t j) const { return double(j) / double(nodes() - 1); }
double Isotopy::step() const { return state_->dt; }
const PointSet& Isotopy::grid() const { return state_->grid; }

const PointSet& Isotopy::image(std::size_t j) const {
  if (j >= nodes()) throw Error("Isotopy: node index out of range");
  return reversed_ ? state_->inverse_image(j) : state_->images[j];
}

const PointSet& Isotopy::inverse_image(std::size_t j) const {
  if (j >= nodes()) throw Error("Isotopy: node index out of range");
  return reversed_ ? state_->images[j] : state_->inverse_image(j);
}

PointSet Isotopy::apply(double t, const PointSet& pts) const {
  PointSet x = pts;
  if (reversed_)
    advance(*state_->gen, x, t, 0.0, state_->dt);
  else
    advance(*state_->gen, x, 0.0, t, state_->dt);
  return x;
}

PointSet Isotopy::apply_inverse(double t, const PointSet& pts) const {
  PointSet x = pts;
  if (reversed_)
    advance(*state_->gen, x, 0.0, t, state_->dt);
  else
    advance(*state_->gen, x, t, 0.0, state_->dt);
  return x;
}

std::vector<PointSet> Isotopy::trajectory(const PointSet& pts, std::span<const double> times) const {
  std::vector<PointSet> out;
  if (reversed_) {
    for (double t : times) out.push_back(apply(t, pts));
    return out;
  }
  const double dt = state_->dt;
  const int total = int(std::lround(1.0 / dt));
  FieldCache fc(*state_->gen);
  Workspace w;
  PointSet x = pts, f0, f1, next;
  std::size_t q = 0;
  for (int s = 0; s <= total && q < times.size(); ++s) {
    const double t0 = s * dt;
    while (q < times.size() && times[q] <= t0 + 1e-14) {
      out.push_back(x);
      ++q;
    }
    if (s == total || q >= times.size()) break;
    next = x;
    rk4_step(fc, next, t0, dt, w);
    fc.at(t0).evaluate(x, f0);
    fc.at(t0 + dt).evaluate(next, f1);
    while (q < times.size() && times[q] < t0 + dt - 1e-14) {
      // Cubic Hermite through (x, f0) and (next, f1).
      const double u = (times[q] - t0) / dt, u2 = u * u, u3 = u2 * u;
      const double h00 = 2 * u3 - 3 * u2 + 1, h10 = (u3 - 2 * u2 + u) * dt;
      const double h01 = -2 * u3 + 3 * u2, h11 = (u3 - u2) * dt;
      PointSet y(x.dim(), x.size());
      for (std::size_t i = 0; i < y.raw().size(); ++i)
        y.raw()[i] = h00 * x.raw()[i] + h10 * f0.raw()[i] + h01 * next.raw()[i] + h11 * f1.raw()[i];
      out.push_back(std::move(y));
      ++q;
    }
    x = std::move(next);
  }
  while (q < times.size()) {
    out.push_back(x);
    ++q;
  }
  return out;
}

const std::vector<double>& Isotopy::jacobian(std::size_t j) const {
  if (reversed_) throw Error("Isotopy: Jacobians are tracked on forward isotopies only");
  state_->ensure_jacobians();
  return state_->jac.at(j);
}

double Isotopy::jacobian_sup() const {
  if (reversed_) return integrate(gen_, state_->spec, state_->cfg).jacobian_sup();
  state_->ensure_jacobians();
  return state_->jac_sup;
}

Isotopy Isotopy::reversed(std::shared_ptr<const Generator> inverse_generator) const {
  Isotopy out;
  out.state_ = state_;
  out.gen_ = reversed_ ? state_->gen : std::move(inverse_generator);
  out.reversed_ = !reversed_;
  return out;
}

Isotopy integrate(std::shared_ptr<const Generator> g, const TorusSpec& spec, const IntegratorConfig& cfg) {
  return Isotopy(std::move(g), spec, cfg);
}

Isotopy integrate(const Generator& g, const TorusSpec& spec, const IntegratorConfig& cfg) {
  return Isotopy(std::make_shared<const Generator>(g), spec, cfg);
}

double c0_distance(const PointSet& f, const PointSet& h) {
  if (f.dim() != h.dim() || f.size() != h.size()) throw Error("c0_distance: maps on different grids");
  double sup = 0.0;
  const int d = f.dim();
  for (std::size_t i = 0; i < f.size(); ++i) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) {
      const double v = wrap_delta(f.at(a, i) - h.at(a, i));
      s += v * v;
    }
    sup = std::max(sup, s);
  }
  return std::sqrt(sup);
}

double c0_distance_to_identity(const PointSet& base, const PointSet& f) { return c0_distance(base, f); }

double d0(const PointSet& f, const PointSet& f_inv, const PointSet& h, const PointSet& h_inv) {
  return std::max(c0_distance(f, h), c0_distance(f_inv, h_inv));
}

namespace {

PointSet refined_grid(const Isotopy& a) {
  return grid_points(a.spec().dim(), a.spec().grid_res * a.config().grid_refine);
}

}  // namespace

double dbar(const Isotopy& a, const Isotopy& b) {
  if (a.nodes() != b.nodes()) throw Error("dbar: isotopies have different time grids");
  const int refine = std::max(a.config().grid_refine, b.config().grid_refine);
  double m = 0.0;
  if (refine == 1 && a.grid().size() == b.grid().size()) {
    for (std::size_t j = 0; j < a.nodes(); ++j)
      m = std::max(m, d0(a.image(j), a.inverse_image(j), b.image(j), b.inverse_image(j)));
    return m;
  }
  const PointSet g = grid_points(a.spec().dim(), a.spec().grid_res * refine);
  for (std::size_t j = 0; j < a.nodes(); ++j) {
    const double t = a.node_time(j);
    m = std::max(m, d0(a.apply(t, g), a.apply_inverse(t, g), b.apply(t, g), b.apply_inverse(t, g)));
  }
  return m;
}

double dbar_to_identity(const Isotopy& a) {
  double m = 0.0;
  if (a.config().grid_refine == 1) {
    for (std::size_t j = 0; j < a.nodes(); ++j)
      m = std::max({m, c0_distance(a.grid(), a.image(j)), c0_distance(a.grid(), a.inverse_image(j))});
    return m;
  }
  const PointSet g = refined_grid(a);
  for (std::size_t j = 0; j < a.nodes(); ++j) {
    const double t = a.node_time(j);
    m = std::max({m, c0_distance(g, a.apply(t, g)), c0_distance(g, a.apply_inverse(t, g))});
  }
  return m;
}

}  // namespace symiso
