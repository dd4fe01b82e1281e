#include "symiso/harmonic.hpp"

#include <algorithm>
#include <cmath>

namespace symiso {

namespace {

// Dense sampling used for max norms and Lipschitz estimates of paths.
constexpr int kDense = 512;

}  // namespace

HarmonicForm HarmonicForm::basis(int n, int i) {
  HarmonicForm h = zero(n);
  h.coeffs.at(std::size_t(i)) = 1.0;
  return h;
}

double HarmonicForm::apply(std::span<const double> v) const {
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * v[i];
  return s;
}

HarmonicForm& HarmonicForm::operator+=(const HarmonicForm& o) {
  if (o.coeffs.size() != coeffs.size()) throw Error("HarmonicForm: dimension mismatch");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

HarmonicForm& HarmonicForm::operator-=(const HarmonicForm& o) { return *this += -1.0 * o; }

HarmonicForm& HarmonicForm::operator*=(double s) {
  for (double& v : coeffs) v *= s;
  return *this;
}

double norm_euclidean(const HarmonicForm& h) {
  double s = 0.0;
  for (double v : h.coeffs) s += std::abs(v);
  return s;
}

double norm_sup(const HarmonicForm& h) {
  double s = 0.0;
  for (double v : h.coeffs) s += v * v;
  return std::sqrt(s);
}

HarmonicPath::HarmonicPath(const std::vector<HarmonicForm>& nodes) {
  if (nodes.empty()) throw Error("HarmonicPath: no nodes");
  n_ = nodes.front().n();
  std::vector<std::vector<double>> v;
  v.reserve(nodes.size());
  for (const auto& h : nodes) {
    if (h.n() != n_) throw Error("HarmonicPath: mixed dimensions");
    v.push_back(h.coeffs);
  }
  series_ = NodeSeries(std::move(v));
}

HarmonicPath HarmonicPath::constant(const HarmonicForm& h, std::size_t nodes) {
  return HarmonicPath(std::vector<HarmonicForm>(nodes, h));
}

HarmonicPath HarmonicPath::zero(int n, std::size_t nodes) { return constant(HarmonicForm::zero(n), nodes); }

HarmonicPath HarmonicPath::from_function(int n, std::size_t nodes,
                                         const std::function<HarmonicForm(double)>& f) {
  std::vector<HarmonicForm> v;
  for (std::size_t j = 0; j < nodes; ++j) {
    HarmonicForm h = f(double(j) / double(nodes - 1));
    if (h.n() != n) throw Error("HarmonicPath: function returned wrong dimension");
    v.push_back(std::move(h));
  }
  return HarmonicPath(v);
}

HarmonicForm HarmonicPath::at(double t) const {
  HarmonicForm h = HarmonicForm::zero(n_);
  if (warp_) {
    const double s = warp_->derivative(t);
    if (s == 0.0) return h;
    series_.evaluate(warp_->value(t), h.coeffs);
    return h *= s;
  }
  series_.evaluate(t, h.coeffs);
  return h;
}

HarmonicPath HarmonicPath::reparameterized(const ReparamCurve& xi) const {
  HarmonicPath out = *this;
  out.warp_ = std::make_shared<const ReparamCurve>(warp_ ? ReparamCurve::compose(*warp_, xi) : xi);
  return out;
}

HarmonicPath HarmonicPath::resampled() const {
  if (!warp_) return *this;
  std::vector<HarmonicForm> v;
  for (std::size_t j = 0; j < nodes(); ++j) v.push_back(node_form(j));
  return HarmonicPath(v);
}

HarmonicPath HarmonicPath::operator-() const {
  std::vector<HarmonicForm> v;
  for (std::size_t j = 0; j < nodes(); ++j) v.push_back(-1.0 * node_form(j));
  return HarmonicPath(v);
}

HarmonicPath operator+(const HarmonicPath& a, const HarmonicPath& b) {
  if (a.nodes() != b.nodes() || a.n() != b.n()) throw Error("HarmonicPath: incompatible time grids");
  std::vector<HarmonicForm> v;
  for (std::size_t j = 0; j < a.nodes(); ++j) v.push_back(a.node_form(j) + b.node_form(j));
  return HarmonicPath(v);
}

HarmonicPath operator-(const HarmonicPath& a, const HarmonicPath& b) { return a + (-b); }

bool HarmonicPath::is_zero(double tol) const {
  for (std::size_t j = 0; j < series_.nodes(); ++j)
    for (double v : series_.node(j))
      if (std::abs(v) > tol) return false;
  return true;
}

double HarmonicPath::max_norm() const {
  double m = 0.0;
  for (int i = 0; i <= kDense; ++i) m = std::max(m, norm_euclidean(at(double(i) / kDense)));
  for (std::size_t j = 0; j < nodes(); ++j) m = std::max(m, norm_euclidean(node_form(j)));
  return m;
}

double HarmonicPath::lipschitz() const {
  double L = 0.0;
  HarmonicForm prev = at(0.0);
  for (int i = 1; i <= kDense; ++i) {
    HarmonicForm cur = at(double(i) / kDense);
    L = std::max(L, norm_euclidean(cur - prev) * kDense);
    prev = std::move(cur);
  }
  return L;
}

HarmonicForm HarmonicPath::integral(double t) const {
  HarmonicForm acc = HarmonicForm::zero(n_);
  if (t <= 0.0) return acc;
  // Substitution turns a warped integral into an unwarped one over [0, xi(t)].
  const double upper = warp_ ? warp_->value(t) : t;
  const double dt = 1.0 / double(nodes() - 1);
  HarmonicForm a = HarmonicForm::zero(n_), m = a, b = a;
  for (std::size_t k = 0; double(k) * dt < upper - 1e-15; ++k) {
    const double lo = double(k) * dt, hi = std::min(lo + dt, upper);
    // Simpson is exact on each cubic Hermite piece.
    series_.evaluate(lo, a.coeffs);
    series_.evaluate(0.5 * (lo + hi), m.coeffs);
    series_.evaluate(hi, b.coeffs);
    acc += ((hi - lo) / 6.0) * (a + 4.0 * m + b);
  }
  return acc;
}

}  // namespace symiso
