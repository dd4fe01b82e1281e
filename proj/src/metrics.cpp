#include "symiso/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace symiso {

namespace {

struct Panel {
  double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); }

double adapt(const std::function<double(double)>& f, const Panel& p, double tol, int depth, int min_depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = f(0.5 * (p.a + m)), rm = f(0.5 * (m + p.b));
  const double left = simpson(p.a, m, p.fa, lm, p.fm), right = simpson(m, p.b, p.fm, rm, p.fb);
  const double err = left + right - p.whole;
  if (depth <= 0 || (min_depth <= 0 && std::abs(err) <= 15.0 * tol)) return left + right + err / 15.0;
  return adapt(f, {p.a, m, p.fa, lm, p.fm, left}, tol / 2, depth - 1, min_depth - 1) +
         adapt(f, {m, p.b, p.fm, rm, p.fb, right}, tol / 2, depth - 1, min_depth - 1);
}

int resolve_osc_res(const TorusSpec& spec, const QuadratureOptions& opt) {
  return opt.osc_res > 0 ? opt.osc_res : osc_resolution(spec);
}

}  // namespace

double integrate_time(const std::function<double(double)>& f, std::size_t nodes, const QuadratureOptions& opt) {
  if (nodes < 2) throw Error("integrate_time: need at least two time nodes");
  const std::size_t P = nodes - 1;
  std::vector<double> fv(2 * P + 1);
  for (std::size_t i = 0; i <= 2 * P; ++i) fv[i] = f(double(i) / double(2 * P));
  double total = 0.0;
  for (std::size_t j = 0; j < P; ++j) {
    const double a = double(j) / double(P), b = double(j + 1) / double(P);
    Panel p{a, b, fv[2 * j], fv[2 * j + 1], fv[2 * j + 2], simpson(a, b, fv[2 * j], fv[2 * j + 1], fv[2 * j + 2])};
    total += adapt(f, p, opt.tol / double(P), opt.max_depth, opt.min_depth);
  }
  return total;
}

double maximize_time(const std::function<double(double)>& f, std::size_t nodes, double* argmax) {
  const std::size_t S = 4 * (std::max<std::size_t>(nodes, 2) - 1);
  double best = -INFINITY, tb = 0.0;
  std::vector<double> fv(S + 1);
  for (std::size_t i = 0; i <= S; ++i) {
    fv[i] = f(double(i) / double(S));
    if (fv[i] > best) best = fv[i], tb = double(i) / double(S);
  }
  // Golden-section search on the bracket around the best sample.
  const double hs = 1.0 / double(S);
  double lo = std::max(0.0, tb - hs), hi = std::min(1.0, tb + hs);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 40 && hi - lo > 1e-10; ++it) {
    if (fc > fd) {
      hi = d, d = c, fd = fc;
      c = hi - gr * (hi - lo), fc = f(c);
    } else {
      lo = c, c = d, fc = fd;
      d = lo + gr * (hi - lo), fd = f(d);
    }
  }
  if (fc > best) best = fc, tb = c;
  if (fd > best) best = fd, tb = d;
  if (argmax) *argmax = tb;
  return best;
}

double length_integrand(const Generator& g, double t, int osc_res) {
  return osc(g.U.at(t), osc_res) + norm_euclidean(g.H.at(t));
}

double length_l1inf(const Generator& g, const TorusSpec& spec, const QuadratureOptions& opt) {
  const int res = resolve_osc_res(spec, opt);
  return integrate_time([&](double t) { return length_integrand(g, t, res); }, g.nodes(), opt);
}

double length_linf(const Generator& g, const TorusSpec& spec, const QuadratureOptions& opt) {
  const int res = resolve_osc_res(spec, opt);
  return maximize_time([&](double t) { return length_integrand(g, t, res); }, g.nodes());
}

double D0(const Generator& a, const Generator& b, const TorusSpec& spec, const QuadratureOptions& opt) {
  if (a.n() != b.n()) throw Error("D0: generators live on different tori");
  const int res = resolve_osc_res(spec, opt);
  auto f = [&](double t) { return osc(a.U.at(t) - b.U.at(t), res) + norm_euclidean(a.H.at(t) - b.H.at(t)); };
  return integrate_time(f, std::max(a.nodes(), b.nodes()), opt);
}

double D1(const Generator& a, const Generator& a_inv, const Generator& b, const Generator& b_inv,
          const TorusSpec& spec, const QuadratureOptions& opt) {
  return 0.5 * (D0(a, b, spec, opt) + D0(a_inv, b_inv, spec, opt));
}

double D1(const Generator& a, const Generator& b, const Numerics& num, const QuadratureOptions& opt) {
  return D1(a, inverse(a, num), b, inverse(b, num), num.torus, opt);
}

namespace {

double ham_from_samples(const std::vector<double>& v, const std::vector<double>& dv) {
  double c0 = 0.0;
  for (double x : v) c0 = std::max(c0, std::abs(x));
  std::vector<double> ad(dv.size());
  for (std::size_t i = 0; i < dv.size(); ++i) ad[i] = std::abs(dv[i]);
  const auto w = simpson_weights(ad.size(), 1.0);
  double tv = 0.0;
  for (std::size_t i = 0; i < ad.size(); ++i) tv += w[i] * ad[i];
  return c0 + tv;
}

}  // namespace

double ham_norm(const ReparamCurve& xi) { return ham_from_samples(xi.samples(), xi.derivative_samples()); }

double ham_distance(const ReparamCurve& a, const ReparamCurve& b) {
  std::vector<double> v(a.samples().size()), dv(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = a.samples()[i] - b.samples()[i];
    dv[i] = a.derivative_samples()[i] - b.derivative_samples()[i];
  }
  return ham_from_samples(v, dv);
}

double velocity_sup_bound(const Generator& g) {
  const std::size_t S = 4 * (g.nodes() - 1);
  double best = 0.0;
  for (std::size_t i = 0; i <= S; ++i) {
    const double t = double(i) / double(S);
    best = std::max(best, g.U.at(t).gradient_bound() + norm_sup(g.H.at(t)));
  }
  return best;
}

ReparamConstant reparam_constant(const Generator& g, const Isotopy& phi, const TorusSpec& spec) {
  ReparamConstant r;
  const int res = osc_resolution(spec);
  const std::size_t S = 4 * (g.nodes() - 1);
  for (std::size_t i = 0; i <= S; ++i) {
    const double t = double(i) / double(S);
    const FourierField u = g.U.at(t);
    const double h = norm_euclidean(g.H.at(t));
    r.max_h = std::max(r.max_h, h);
    r.max_cost = std::max(r.max_cost, h + osc(u, res));
    r.sup_gradient = std::max(r.sup_gradient, u.gradient_bound());
    r.k0 = std::max(r.k0, g.U.time_derivative(t).sup_bound());
  }
  r.c0 = g.H.lipschitz();
  r.sup_velocity = velocity_sup_bound(g);
  r.jacobian = phi.jacobian_sup();
  r.B1 = 4.0 * spec.diameter() * std::max(r.c0, r.max_h) * (1.0 + r.jacobian);
  r.B2 = 2.0 * r.max_h * r.sup_velocity;
  r.k1 = 2.0 * r.sup_gradient * r.sup_velocity;
  r.C = r.B1 + r.B2 + r.k1 + 4.0 * std::max(r.k0 + r.c0, r.max_cost);
  return r;
}

}  // namespace symiso
