#include "symiso/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

namespace symiso {

FourierHamiltonian::FourierHamiltonian(const std::vector<FourierField>& nodes) {
  if (nodes.empty()) throw Error("FourierHamiltonian: no nodes");
  n_ = nodes.front().n();
  K_ = 0;
  for (const auto& f : nodes) {
    if (f.n() != n_) throw Error("FourierHamiltonian: mixed dimensions");
    K_ = std::max(K_, f.bandwidth());
  }
  std::vector<std::vector<double>> flat;
  flat.reserve(nodes.size());
  for (const auto& f : nodes) {
    FourierField g = f.normalized().resized(K_);
    const auto& c = g.coefficients();
    std::vector<double> v(2 * c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      v[2 * i] = c[i].real();
      v[2 * i + 1] = c[i].imag();
    }
    flat.push_back(std::move(v));
  }
  series_ = NodeSeries(std::move(flat));
}

FourierHamiltonian FourierHamiltonian::zero(int n, std::size_t nodes) {
  return FourierHamiltonian(std::vector<FourierField>(nodes, FourierField(n, 0)));
}

FourierHamiltonian FourierHamiltonian::constant(const FourierField& f, std::size_t nodes) {
  return FourierHamiltonian(std::vector<FourierField>(nodes, f));
}

FourierHamiltonian FourierHamiltonian::from_function(std::size_t nodes,
                                                     const std::function<FourierField(double)>& f) {
  std::vector<FourierField> v;
  v.reserve(nodes);
  for (std::size_t j = 0; j < nodes; ++j) v.push_back(f(double(j) / double(nodes - 1)));
  return FourierHamiltonian(v);
}

FourierField FourierHamiltonian::unpack(std::span<const double> flat) const {
  FourierField f(n_, K_);
  auto& c = f.coefficients_mut();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = cplx(flat[2 * i], flat[2 * i + 1]);
  return f;
}

FourierField FourierHamiltonian::at(double t) const {
  std::vector<double> buf(series_.width());
  double scale = 1.0;
  if (warp_) {
    scale = warp_->derivative(t);
    if (scale == 0.0) return FourierField(n_, 0);
    t = warp_->value(t);
  }
  series_.evaluate(t, buf);
  FourierField f = unpack(buf);
  if (scale != 1.0) f *= scale;
  return f;
}

FourierField FourierHamiltonian::time_derivative(double t) const {
  std::vector<double> buf(series_.width());
  if (!warp_) {
    series_.derivative(t, buf);
    return unpack(buf);
  }
  const double s = warp_->value(t), sd = warp_->derivative(t);
  const double e = 1e-6;
  const double sdd = (warp_->derivative(std::min(1.0, t + e)) - warp_->derivative(std::max(0.0, t - e))) /
                     (std::min(1.0, t + e) - std::max(0.0, t - e));
  series_.derivative(s, buf);
  FourierField d = unpack(buf) * (sd * sd);
  series_.evaluate(s, buf);
  d += unpack(buf) * sdd;
  return d;
}

FourierHamiltonian FourierHamiltonian::reparameterized(const ReparamCurve& xi) const {
  FourierHamiltonian out = *this;
  out.warp_ = std::make_shared<const ReparamCurve>(warp_ ? ReparamCurve::compose(*warp_, xi) : xi);
  return out;
}

FourierHamiltonian FourierHamiltonian::resampled() const {
  if (!warp_) return *this;
  std::vector<FourierField> v;
  for (std::size_t j = 0; j < nodes(); ++j) v.push_back(node_field(j));
  return FourierHamiltonian(v);
}

FourierHamiltonian FourierHamiltonian::operator-() const {
  std::vector<FourierField> v;
  for (std::size_t j = 0; j < nodes(); ++j) v.push_back(-node_field(j));
  return FourierHamiltonian(v);
}

bool FourierHamiltonian::is_zero(double tol) const {
  for (std::size_t j = 0; j < series_.nodes(); ++j)
    for (double v : series_.node(j))
      if (std::abs(v) > tol) return false;
  return true;
}

}  // namespace symiso
