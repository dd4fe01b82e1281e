#include "symiso/line_integral.hpp"

#include <cmath>

namespace symiso {

PointSet unwrap_curve(const PointSet& curve) {
  if (curve.size() < 2) throw Error("line_integral: a curve needs at least two samples");
  PointSet out = curve;
  for (int a = 0; a < curve.dim(); ++a)
    for (std::size_t i = 1; i < curve.size(); ++i)
      out.at(a, i) = out.at(a, i - 1) + wrap_delta(curve.at(a, i) - curve.at(a, i - 1));
  return out;
}

bool is_closed_curve(const PointSet& curve, double tol) {
  if (curve.size() < 2) return false;
  double s = 0.0;
  for (int a = 0; a < curve.dim(); ++a) {
    const double d = wrap_delta(curve.at(a, curve.size() - 1) - curve.at(a, 0));
    s += d * d;
  }
  return std::sqrt(s) <= tol;
}

double line_integral(const HarmonicForm& alpha, const PointSet& curve) {
  if (alpha.dim() != curve.dim()) throw Error("line_integral: dimension mismatch");
  PointSet u = unwrap_curve(curve);
  const std::size_t last = u.size() - 1;
  double s = 0.0;
  for (int a = 0; a < u.dim(); ++a) s += alpha.coeffs[std::size_t(a)] * (u.at(a, last) - u.at(a, 0));
  return s;
}

double line_integral(const ClosedForm& alpha, const PointSet& curve, int panels) {
  double total = line_integral(alpha.harmonic, curve);
  if (alpha.exact.is_zero()) return total;
  if (panels < 1) throw Error("line_integral: panels must be positive");
  PointSet u = unwrap_curve(curve);
  const int d = u.dim();
  const std::size_t segs = u.size() - 1;
  // Simpson nodes along every segment, evaluated in one batch.
  const std::size_t per = std::size_t(2 * panels + 1);
  PointSet q(d, segs * per);
  for (std::size_t s = 0; s < segs; ++s)
    for (std::size_t m = 0; m < per; ++m) {
      const double w = double(m) / double(per - 1);
      for (int a = 0; a < d; ++a) q.at(a, s * per + m) = (1 - w) * u.at(a, s) + w * u.at(a, s + 1);
    }
  FieldSamples fs;
  alpha.exact.evaluate(q, fs, 1);
  for (std::size_t s = 0; s < segs; ++s) {
    double seg = 0.0;
    for (std::size_t m = 0; m < per; ++m) {
      double slope = 0.0;
      for (int a = 0; a < d; ++a) slope += fs.grad_at(a, s * per + m) * (u.at(a, s + 1) - u.at(a, s));
      const double w = (m == 0 || m + 1 == per) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
      seg += w * slope;
    }
    total += seg / (3.0 * double(per - 1));
  }
  return total;
}

}  // namespace symiso
