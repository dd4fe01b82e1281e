#include "symiso/reparam_curve.hpp"

#include <algorithm>
#include <cmath>

#include "symiso/torus.hpp"

namespace symiso {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slopes)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(slopes)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw Error("MonotoneCubic: need matching samples, at least two");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw Error("MonotoneCubic: abscissae must increase strictly");
  std::vector<double> sec(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) sec[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  if (m_.empty()) {
    m_.assign(n, 0.0);
    m_[0] = sec[0];
    m_[n - 1] = sec[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i)
      m_[i] = sec[i - 1] * sec[i] <= 0 ? 0.0 : 0.5 * (sec[i - 1] + sec[i]);
  } else if (m_.size() != n) {
    throw Error("MonotoneCubic: slope count mismatch");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (sec[i] == 0.0) {
      m_[i] = m_[i + 1] = 0.0;
      continue;
    }
    const double a = m_[i] / sec[i], b = m_[i + 1] / sec[i];
    if (a < 0) m_[i] = 0;
    if (b < 0) m_[i + 1] = 0;
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      m_[i] = tau * a * sec[i];
      m_[i + 1] = tau * b * sec[i];
    }
  }
}

std::size_t MonotoneCubic::interval(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : std::size_t(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double MonotoneCubic::value(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i], u = (x - x_[i]) / h, u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y_[i] + (u3 - 2 * u2 + u) * h * m_[i] + (-2 * u3 + 3 * u2) * y_[i + 1] +
         (u3 - u2) * h * m_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i], u = (x - x_[i]) / h, u2 = u * u;
  return (6 * u2 - 6 * u) / h * y_[i] + (3 * u2 - 4 * u + 1) * m_[i] + (-6 * u2 + 6 * u) / h * y_[i + 1] +
         (3 * u2 - 2 * u) * m_[i + 1];
}

double MonotoneCubic::inverse(double y) const {
  auto it = std::upper_bound(y_.begin(), y_.end(), y);
  std::size_t i = it == y_.begin() ? 0 : std::size_t(it - y_.begin()) - 1;
  i = std::min(i, y_.size() - 2);
  double lo = x_[i], hi = x_[i + 1];
  double x = lo + (hi - lo) * std::clamp((y - y_[i]) / (y_[i + 1] - y_[i]), 0.0, 1.0);
  for (int it2 = 0; it2 < 60; ++it2) {
    const double f = value(x) - y;
    if (f > 0)
      hi = x;
    else
      lo = x;
    const double d = derivative(x);
    double nx = d > 0 ? x - f / d : 0.5 * (lo + hi);
    if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
    if (std::abs(nx - x) < 1e-16) return nx;
    x = nx;
  }
  return x;
}

namespace {

double smoothstep(double u) { return u * u * u * (10 - 15 * u + 6 * u * u); }
double smoothstep_integral(double u) { return u * u * u * u * (2.5 - 3 * u + u * u); }

}  // namespace

ReparamCurve::ReparamCurve() {
  f_ = [](double t) { return t; };
  fd_ = [](double) { return 1.0; };
  fill_samples();
}

ReparamCurve ReparamCurve::identity() { return ReparamCurve(); }

ReparamCurve ReparamCurve::boundary_flat(double delta) {
  if (!(delta > 0.0 && delta < 0.25)) throw Error("boundary_flat: delta must lie in (0, 1/4)");
  ReparamCurve c;
  c.kind_ = Kind::BoundaryFlat;
  c.delta_ = delta;
  c.label_ = "boundary-flat";
  const double d = delta, a = 1.0 / (1.0 - 3.0 * d);
  c.fd_ = [d, a](double t) {
    if (t <= d || t >= 1 - d) return 0.0;
    if (t < 2 * d) return a * smoothstep((t - d) / d);
    if (t > 1 - 2 * d) return a * smoothstep((1 - d - t) / d);
    return a;
  };
  c.f_ = [d, a](double t) {
    if (t <= d) return 0.0;
    if (t >= 1 - d) return 1.0;
    if (t < 2 * d) return a * d * smoothstep_integral((t - d) / d);
    const double ramp = a * d * 0.5;
    if (t <= 1 - 2 * d) return ramp + a * (t - 2 * d);
    return 1.0 - a * d * smoothstep_integral((1 - d - t) / d);
  };
  c.fill_samples();
  return c;
}

ReparamCurve ReparamCurve::from_function(std::function<double(double)> xi,
                                         std::function<double(double)> xi_dot, std::string label) {
  ReparamCurve c;
  c.kind_ = Kind::Function;
  c.label_ = std::move(label);
  c.f_ = std::move(xi);
  c.fd_ = std::move(xi_dot);
  c.fill_samples();
  return c;
}

ReparamCurve ReparamCurve::tabulated(std::vector<double> values, std::vector<double> derivatives,
                                     std::string label) {
  const std::size_t n = values.size();
  if (n < 2 || derivatives.size() != n) throw Error("tabulated curve: bad sample arrays");
  auto v = std::make_shared<std::vector<double>>(std::move(values));
  auto m = std::make_shared<std::vector<double>>(std::move(derivatives));
  const double h = 1.0 / double(n - 1);
  auto loc = [n, h](double t, std::size_t& j, double& u) {
    t = std::clamp(t, 0.0, 1.0);
    j = std::min<std::size_t>(std::size_t(t / h), n - 2);
    u = (t - double(j) * h) / h;
  };
  ReparamCurve c;
  c.kind_ = Kind::Tabulated;
  c.label_ = std::move(label);
  c.f_ = [v, m, h, loc](double t) {
    std::size_t j;
    double u;
    loc(t, j, u);
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * (*v)[j] + (u3 - 2 * u2 + u) * h * (*m)[j] +
           (-2 * u3 + 3 * u2) * (*v)[j + 1] + (u3 - u2) * h * (*m)[j + 1];
  };
  c.fd_ = [v, m, h, loc](double t) {
    std::size_t j;
    double u;
    loc(t, j, u);
    const double u2 = u * u;
    return (6 * u2 - 6 * u) / h * (*v)[j] + (3 * u2 - 4 * u + 1) * (*m)[j] +
           (-6 * u2 + 6 * u) / h * (*v)[j + 1] + (3 * u2 - 2 * u) * (*m)[j + 1];
  };
  c.fill_samples();
  return c;
}

ReparamCurve ReparamCurve::compose(const ReparamCurve& outer, const ReparamCurve& inner) {
  if (outer.is_identity()) return inner;
  if (inner.is_identity()) return outer;
  auto o = std::make_shared<ReparamCurve>(outer);
  auto i = std::make_shared<ReparamCurve>(inner);
  ReparamCurve c;
  c.kind_ = Kind::Composite;
  c.label_ = outer.label_ + " o " + inner.label_;
  c.f_ = [o, i](double t) { return o->value(i->value(t)); };
  c.fd_ = [o, i](double t) { return o->derivative(i->value(t)) * i->derivative(t); };
  c.fill_samples();
  return c;
}

double ReparamCurve::value(double t) const { return kind_ == Kind::Identity ? t : f_(t); }
double ReparamCurve::derivative(double t) const { return kind_ == Kind::Identity ? 1.0 : fd_(t); }

bool ReparamCurve::monotone() const {
  for (double d : dsamples_)
    if (d < -1e-12) return false;
  return true;
}

void ReparamCurve::fill_samples() {
  samples_.resize(kSamples + 1);
  dsamples_.resize(kSamples + 1);
  for (int i = 0; i <= kSamples; ++i) {
    const double t = double(i) / kSamples;
    samples_[std::size_t(i)] = value(t);
    dsamples_[std::size_t(i)] = derivative(t);
  }
}

}  // namespace symiso
