#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace symiso {

/// Piecewise cubic Hermite interpolant through increasing abscissae. When no
/// slopes are supplied they are chosen by the Fritsch-Carlson rule; supplied
/// slopes are limited the same way so monotone data stays monotone.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slopes = {});

  double value(double x) const;
  double derivative(double x) const;
  /// Solves value(x) = y for monotone increasing data.
  double inverse(double y) const;

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }

 private:
  std::size_t interval(double x) const;
  std::vector<double> x_, y_, m_;
};

/// A C^1 map xi: [0,1] -> R used to reparameterize generators, t -> phi_{xi(t)}.
class ReparamCurve {
 public:
  enum class Kind { Identity, BoundaryFlat, Function, Tabulated, Composite };

  static constexpr int kSamples = 2048;  // fine grid for norms and range checks

  ReparamCurve();  // identity
  static ReparamCurve identity();
  /// C^3 curve with xi' = 0 on [0,d] and [1-d,1], xi' constant on [2d,1-2d],
  /// quintic smoothstep ramps in between, and xi(1) = 1.
  static ReparamCurve boundary_flat(double delta);
  static ReparamCurve from_function(std::function<double(double)> xi,
                                    std::function<double(double)> xi_dot, std::string label);
  /// Hermite interpolation of values and derivatives on a uniform grid of [0,1].
  static ReparamCurve tabulated(std::vector<double> values, std::vector<double> derivatives,
                                std::string label);
  /// outer o inner
  static ReparamCurve compose(const ReparamCurve& outer, const ReparamCurve& inner);

  double value(double t) const;
  double derivative(double t) const;

  Kind kind() const { return kind_; }
  double delta() const { return delta_; }
  const std::string& label() const { return label_; }
  bool is_identity() const { return kind_ == Kind::Identity; }
  bool monotone() const;

  const std::vector<double>& samples() const { return samples_; }
  const std::vector<double>& derivative_samples() const { return dsamples_; }

 private:
  void fill_samples();

  Kind kind_ = Kind::Identity;
  double delta_ = 0.0;
  std::string label_ = "identity";
  std::function<double(double)> f_, fd_;
  std::vector<double> samples_, dsamples_;
};

}  // namespace symiso
