#pragma once

#include <complex>
#include <span>
#include <vector>

#include "symiso/torus.hpp"

namespace symiso {

using cplx = std::complex<double>;

/// Values (and optionally first/second derivatives) of a scalar field at a batch of points.
/// grad is stored axis-major (dim x count), hess as dim*dim blocks of count.
struct FieldSamples {
  std::size_t count = 0;
  int dim = 0;
  std::vector<double> value;
  std::vector<double> grad;
  std::vector<double> hess;

  double grad_at(int axis, std::size_t i) const { return grad[std::size_t(axis) * count + i]; }
  double hess_at(int a, int b, std::size_t i) const {
    return hess[(std::size_t(a) * std::size_t(dim) + std::size_t(b)) * count + i];
  }
};

/// Real scalar field on T^{2n} given by Fourier coefficients c_k, |k_j| <= K.
/// Coefficients are stored densely (2K+1)^{2n}, axis 0 slowest, and are kept
/// conjugate-symmetric so the field is real.
class FourierField {
 public:
  FourierField() : FourierField(1, 0) {}
  FourierField(int n, int bandwidth);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  int bandwidth() const { return K_; }
  int width() const { return 2 * K_ + 1; }

  std::size_t index(std::span<const int> k) const;
  cplx coeff(std::span<const int> k) const;
  /// Sets c_k and its conjugate partner c_{-k}.
  void set_mode(std::span<const int> k, cplx c);
  void add_mode(std::span<const int> k, cplx c);

  const std::vector<cplx>& coefficients() const { return c_; }
  /// Direct access; callers must keep conjugate symmetry (see symmetrize()).
  std::vector<cplx>& coefficients_mut() { return c_; }
  void symmetrize();

  double mean() const { return c_[c_.size() / 2].real(); }
  bool is_zero(double tol = 0.0) const;

  static FourierField constant(int n, double c);
  /// amp * cos(2 pi k.x + phase)
  static FourierField cosine(int n, std::vector<int> k, double amp, double phase = 0.0);
  /// amp * sin(2 pi k.x + phase)
  static FourierField sine(int n, std::vector<int> k, double amp, double phase = 0.0);

  FourierField resized(int bandwidth) const;
  /// x -> f(x + v)
  FourierField translated(std::span<const double> v) const;
  /// Drops coefficients with |c_k| <= tol and shrinks the bandwidth accordingly.
  FourierField trimmed(double tol) const;
  FourierField normalized() const;

  FourierField& operator+=(const FourierField& o);
  FourierField& operator-=(const FourierField& o);
  FourierField& operator*=(double s);
  friend FourierField operator+(FourierField a, const FourierField& b) { return a += b; }
  friend FourierField operator-(FourierField a, const FourierField& b) { return a -= b; }
  friend FourierField operator*(FourierField a, double s) { return a *= s; }
  friend FourierField operator*(double s, FourierField a) { return a *= s; }
  FourierField operator-() const { return *this * -1.0; }

  /// Bounds on sup|f|, sup|grad f| and sup|Hess f| from coefficient magnitudes.
  double sup_bound() const;
  double gradient_bound() const;
  double hessian_bound() const;

  double value(std::span<const double> x) const;
  /// order 0: values, 1: + gradients, 2: + Hessians.
  void evaluate(const PointSet& pts, FieldSamples& out, int order) const;

 private:
  int n_;
  int K_;
  std::vector<cplx> c_;
};

/// Field sampled on the uniform grid res^{dim}, same layout as grid_points().
struct GridField {
  int dim = 2;
  int res = 0;
  std::vector<double> values;

  double mean() const;
  double osc() const;
  GridField normalized() const;
  GridField& operator-=(const GridField& o);
};

/// Samples f on the uniform grid res^{dim} by separable synthesis.
GridField synthesize(const FourierField& f, int res);

struct ProjectionReport {
  double max_residual = 0.0;  // max over the grid of |f - P f|
  int bandwidth = 0;          // bandwidth after trimming
};

/// Discrete Fourier projection of grid samples onto |k_j| <= K (K < res/2),
/// trimmed at trim_tol. The residual is measured on the sample grid.
FourierField project(const GridField& f, int n, int K, double trim_tol,
                     ProjectionReport* report = nullptr);

double volume_integral(const FourierField& f);
double volume_integral(const GridField& f);

/// max - min. Fourier fields are searched on a res^{dim} grid and the best
/// candidates polished by Newton steps on the exact Fourier expression.
double osc(const FourierField& f, int res);
double osc(const GridField& f);

FourierField normalize(const FourierField& f);
GridField normalize(const GridField& f);

/// Samples per axis used for osc on a given spatial grid: 4x refinement,
/// capped so the total sample count stays near 2^20 in higher dimension.
int osc_resolution(const TorusSpec& spec);

}  // namespace symiso
