#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "symiso/reparam_curve.hpp"
#include "symiso/time_series.hpp"
#include "symiso/torus.hpp"

namespace symiso {

/// Constant-coefficient 1-form sum a_i dx_i + b_i dy_i; coeffs = (a_1..a_n, b_1..b_n).
struct HarmonicForm {
  std::vector<double> coeffs;

  HarmonicForm() = default;
  explicit HarmonicForm(std::vector<double> c) : coeffs(std::move(c)) {}
  static HarmonicForm zero(int n) { return HarmonicForm(std::vector<double>(std::size_t(2 * n), 0.0)); }
  /// Basis form dx_i (i < n) or dy_{i-n}.
  static HarmonicForm basis(int n, int i);

  int dim() const { return int(coeffs.size()); }
  int n() const { return dim() / 2; }
  double operator[](std::size_t i) const { return coeffs[i]; }
  /// alpha(v) for a tangent vector v.
  double apply(std::span<const double> v) const;

  HarmonicForm& operator+=(const HarmonicForm& o);
  HarmonicForm& operator-=(const HarmonicForm& o);
  HarmonicForm& operator*=(double s);
  friend HarmonicForm operator+(HarmonicForm a, const HarmonicForm& b) { return a += b; }
  friend HarmonicForm operator-(HarmonicForm a, const HarmonicForm& b) { return a -= b; }
  friend HarmonicForm operator*(HarmonicForm a, double s) { return a *= s; }
  friend HarmonicForm operator*(double s, HarmonicForm a) { return a *= s; }
};

/// |H| = sum |lambda_i|
double norm_euclidean(const HarmonicForm& h);
/// sup_x |H_x| in the flat metric, the l2 norm of the coefficients.
double norm_sup(const HarmonicForm& h);

/// Time-dependent harmonic form sampled on uniform nodes with Hermite
/// interpolation, optionally read through a reparameterization t -> xi(t)
/// as xi'(t) H_{xi(t)}.
class HarmonicPath {
 public:
  HarmonicPath() = default;
  explicit HarmonicPath(const std::vector<HarmonicForm>& nodes);
  static HarmonicPath constant(const HarmonicForm& h, std::size_t nodes);
  static HarmonicPath zero(int n, std::size_t nodes);
  static HarmonicPath from_function(int n, std::size_t nodes, const std::function<HarmonicForm(double)>& f);

  int n() const { return n_; }
  std::size_t nodes() const { return series_.nodes(); }
  double node_time(std::size_t j) const { return series_.node_time(j); }

  HarmonicForm at(double t) const;
  HarmonicForm node_form(std::size_t j) const { return at(node_time(j)); }
  bool warped() const { return bool(warp_); }
  const ReparamCurve* warp() const { return warp_.get(); }

  HarmonicPath reparameterized(const ReparamCurve& xi) const;
  /// Node-wise resampling, dropping any warp.
  HarmonicPath resampled() const;
  HarmonicPath operator-() const;
  friend HarmonicPath operator+(const HarmonicPath& a, const HarmonicPath& b);
  friend HarmonicPath operator-(const HarmonicPath& a, const HarmonicPath& b);

  bool is_zero(double tol = 0.0) const;
  /// max_t |H_t| and a Lipschitz constant in t, both from dense sampling.
  double max_norm() const;
  double lipschitz() const;
  /// int_0^t H_s ds
  HarmonicForm integral(double t) const;

 private:
  int n_ = 1;
  NodeSeries series_;
  std::shared_ptr<const ReparamCurve> warp_;
};

}  // namespace symiso
