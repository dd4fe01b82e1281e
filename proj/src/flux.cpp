#include "symiso/flux.hpp"

#include <cmath>

#include "symiso/line_integral.hpp"

namespace symiso {

CohomologyClass flux(const Generator& g) { return {g.H.integral(1.0)}; }

double pair_loop(const CohomologyClass& c, const PointSet& loop, double closed_tol) {
  if (!is_closed_curve(loop, closed_tol)) throw Error("pair_loop: curve is not closed");
  return line_integral(c.rep, loop);
}

double poincare_pair(const CohomologyClass& a, const CohomologyClass& b) {
  const int n = a.rep.n();
  if (b.rep.n() != n) throw Error("poincare_pair: classes live on different tori");
  double s = 0.0;
  for (int j = 0; j < n; ++j)
    s += a.rep[std::size_t(j)] * b.rep[std::size_t(n + j)] - a.rep[std::size_t(n + j)] * b.rep[std::size_t(j)];
  return s / n;
}

MeanValueReport mean_value_check(const CohomologyClass& alpha, const Isotopy& phi, double tol) {
  const std::size_t last = phi.nodes() - 1;
  MeanValueReport r;
  r.lhs = delta_mean(HarmonicPath::constant(alpha.rep, phi.nodes()), phi, last);
  const int n = phi.spec().n;
  r.rhs = n * poincare_pair(flux(phi.generator()), alpha);
  r.magnitude_ok = std::abs(std::abs(r.lhs) - std::abs(r.rhs)) < tol;
  r.sign_ok = std::abs(r.lhs - kMeanValueSign * r.rhs) < tol;
  return r;
}

std::vector<double> delta_one(const CohomologyClass& alpha, const Isotopy& phi, const PointSet& pts) {
  const PointSet img = phi.apply(1.0, pts);
  std::vector<double> v(pts.size(), 0.0);
  for (int a = 0; a < pts.dim(); ++a)
    for (std::size_t i = 0; i < pts.size(); ++i) v[i] += alpha.rep[std::size_t(a)] * (img.at(a, i) - pts.at(a, i));
  return v;
}

Point find_zero_of_delta(const CohomologyClass& alpha, const Isotopy& phi, double tol) {
  if (!phi.generator().is_hamiltonian(1e-14)) throw Error("find_zero_of_delta: the isotopy is not Hamiltonian");
  const std::size_t last = phi.nodes() - 1;
  const PointSet& x = phi.grid();
  const PointSet& y = phi.image(last);
  const int d = x.dim(), res = phi.spec().grid_res;
  std::vector<double> v(x.size(), 0.0);
  for (int a = 0; a < d; ++a)
    for (std::size_t i = 0; i < x.size(); ++i) v[i] += alpha.rep[std::size_t(a)] * (y.at(a, i) - x.at(a, i));
  std::size_t best = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) < std::abs(v[best])) best = i;
  if (std::abs(v[best]) < tol) return x.point(best);

  // Strides of the row-major grid, axis 0 slowest.
  std::vector<std::size_t> stride(std::size_t(d), 1);
  for (int a = d - 2; a >= 0; --a) stride[std::size_t(a)] = stride[std::size_t(a) + 1] * std::size_t(res);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (int a = 0; a < d; ++a) {
      const std::size_t coord = (i / stride[std::size_t(a)]) % std::size_t(res);
      const std::size_t j = coord + 1 < std::size_t(res) ? i + stride[std::size_t(a)]
                                                         : i + stride[std::size_t(a)] - std::size_t(res) * stride[std::size_t(a)];
      if ((v[i] < 0.0) == (v[j] < 0.0)) continue;
      // Bisect along the edge from grid point i in direction a.
      std::vector<double> p = x.lifted(i);
      double lo = 0.0, hi = 1.0 / res, flo = v[i];
      PointSet q(d, 1);
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        for (int b = 0; b < d; ++b) q.at(b, 0) = p[std::size_t(b)] + (b == a ? mid : 0.0);
        const double fm = delta_one(alpha, phi, q)[0];
        if (std::abs(fm) < tol) return q.point(0);
        if ((fm < 0.0) == (flo < 0.0)) lo = mid, flo = fm;
        else hi = mid;
      }
    }
  }
  throw Error("find_zero_of_delta: no sign change and no grid value below tolerance");
}

double hamiltonian_loop_area(const CohomologyClass& alpha, const Isotopy& loop, const Point& x, double loop_tol) {
  const std::size_t last = loop.nodes() - 1;
  const double defect = c0_distance_to_identity(loop.grid(), loop.image(last));
  if (defect > loop_tol) throw Error("hamiltonian_loop_area: time-1 map is not the identity");
  return delta_one(alpha, loop, PointSet::from_points({x}))[0];
}

HomologyVector ktilde(const Isotopy& phi) {
  const int n = phi.spec().n, d = 2 * n;
  HomologyVector k;
  k.values.resize(std::size_t(d));
  const std::size_t last = phi.nodes() - 1;
  for (int i = 0; i < d; ++i)
    k.values[std::size_t(i)] = delta_mean(HarmonicPath::constant(HarmonicForm::basis(n, i), phi.nodes()), phi, last) / n;
  return k;
}

Generator meridian_translation(int n, std::size_t nodes) {
  return Generator::harmonic(-1.0 * HarmonicForm::basis(n, 0), nodes);
}

}  // namespace symiso
