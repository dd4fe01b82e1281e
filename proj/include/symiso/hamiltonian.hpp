#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "symiso/fourier.hpp"
#include "symiso/reparam_curve.hpp"
#include "symiso/time_series.hpp"

namespace symiso {

/// Normalized time-dependent Hamiltonian: one FourierField per uniform time
/// node, cubic Hermite in t, optionally read through a reparameterization as
/// xi'(t) U_{xi(t)}.
class FourierHamiltonian {
 public:
  FourierHamiltonian() = default;
  /// Slices are normalized and padded to a common bandwidth.
  explicit FourierHamiltonian(const std::vector<FourierField>& nodes);
  static FourierHamiltonian zero(int n, std::size_t nodes);
  static FourierHamiltonian constant(const FourierField& f, std::size_t nodes);
  static FourierHamiltonian from_function(std::size_t nodes, const std::function<FourierField(double)>& f);

  int n() const { return n_; }
  int bandwidth() const { return K_; }
  std::size_t nodes() const { return series_.nodes(); }
  double node_time(std::size_t j) const { return series_.node_time(j); }

  FourierField at(double t) const;
  FourierField node_field(std::size_t j) const { return at(node_time(j)); }
  /// d/dt U_t (warp included).
  FourierField time_derivative(double t) const;

  bool warped() const { return bool(warp_); }
  const ReparamCurve* warp() const { return warp_.get(); }
  FourierHamiltonian reparameterized(const ReparamCurve& xi) const;
  FourierHamiltonian resampled() const;
  FourierHamiltonian operator-() const;

  bool is_zero(double tol = 0.0) const;

 private:
  FourierField unpack(std::span<const double> flat) const;

  int n_ = 1;
  int K_ = 0;
  NodeSeries series_;
  std::shared_ptr<const ReparamCurve> warp_;
};

}  // namespace symiso
