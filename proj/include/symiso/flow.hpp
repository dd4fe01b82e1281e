#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "symiso/generator.hpp"

namespace symiso {

struct IntegratorConfig {
  enum class Method { ClassicalRK4 };
  enum class DenseOutput { Hermite };

  Method method = Method::ClassicalRK4;
  double h = 1.0 / 256.0;  // requested step; the effective step divides each node interval
  DenseOutput dense = DenseOutput::Hermite;
  int grid_refine = 1;     // C0 metrics grid = quadrature grid refined by this factor

  static constexpr double kMaxStep = 0.05;
  /// Malformed values (non-positive step, refine < 1) raise Error.
  void validate() const;
};

/// The requested step is too coarse for the field; carries a usable step.
class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, double suggested) : Error(what), suggested_h(suggested) {}
  double suggested_h;
};

/// Z_t frozen at one time. With beta = dU_t + H_t: Z_{x_i} = beta_{y_i}, Z_{y_i} = -beta_{x_i}.
class VelocityField {
 public:
  VelocityField(const Generator& g, double t);
  VelocityField(FourierField u, HarmonicForm h);

  /// z must have the same shape as x.
  void evaluate(const PointSet& x, PointSet& z) const;
  /// Also returns DZ as dim*dim blocks of x.size().
  void evaluate(const PointSet& x, PointSet& z, std::vector<double>& dz) const;
  std::vector<double> at(std::span<const double> x) const;

  const FourierField& hamiltonian() const { return u_; }
  const HarmonicForm& harmonic() const { return h_; }

 private:
  FourierField u_;
  HarmonicForm h_;
  mutable FieldSamples scratch_;
};

VelocityField velocity_field(const Generator& g, double t);

/// Upper bound on the spatial Lipschitz constant of Z_t over [0,1].
double velocity_lipschitz_bound(const Generator& g);

/// Realized flow of a generator: grid trajectories cached at every time node,
/// lazily computed inverse images and Jacobians. All cached positions are
/// lifts to R^{2n}, so p - x is the displacement along the trajectory.
class Isotopy {
 public:
  Isotopy(std::shared_ptr<const Generator> g, const TorusSpec& spec, const IntegratorConfig& cfg);

  const Generator& generator() const;
  std::shared_ptr<const Generator> generator_ptr() const { return gen_; }
  const TorusSpec& spec() const;
  const IntegratorConfig& config() const;
  std::size_t nodes() const;
  double node_time(std::size_t j) const;
  /// Effective RK4 step.
  double step() const;

  /// Quadrature grid (points in [0,1)^{2n}).
  const PointSet& grid() const;
  /// Lifted phi_{t_j}(grid).
  const PointSet& image(std::size_t j) const;
  /// Lifted phi_{t_j}^{-1}(grid) by backward integration from t_j to 0.
  const PointSet& inverse_image(std::size_t j) const;

  PointSet apply(double t, const PointSet& pts) const;
  PointSet apply_inverse(double t, const PointSet& pts) const;
  /// Positions at each of the increasing output times, from one forward pass
  /// with Hermite dense output between steps.
  std::vector<PointSet> trajectory(const PointSet& pts, std::span<const double> times) const;

  /// D phi_{t_j} on the grid, dim*dim blocks (row-major entries) of grid().size().
  const std::vector<double>& jacobian(std::size_t j) const;
  /// sup over nodes and grid points of the operator norm of D phi_t.
  double jacobian_sup() const;

  /// View of the inverse isotopy t -> phi_t^{-1}, sharing the caches; its
  /// generator must be supplied (e.g. inverse(g)).
  Isotopy reversed(std::shared_ptr<const Generator> inverse_generator) const;
  bool is_reversed() const { return reversed_; }

  struct State;

 private:
  Isotopy() = default;
  std::shared_ptr<State> state_;
  std::shared_ptr<const Generator> gen_;
  bool reversed_ = false;
};

Isotopy integrate(const Generator& g, const TorusSpec& spec, const IntegratorConfig& cfg);
Isotopy integrate(std::shared_ptr<const Generator> g, const TorusSpec& spec, const IntegratorConfig& cfg);

/// sup over common samples of the torus distance between two maps on a grid.
double c0_distance(const PointSet& f, const PointSet& h);
/// sup over samples of the distance between a map and the identity on `base`.
double c0_distance_to_identity(const PointSet& base, const PointSet& f);
/// max of the C0 distances of the maps and of their inverses.
double d0(const PointSet& f, const PointSet& f_inv, const PointSet& h, const PointSet& h_inv);
/// max over time nodes of d0(phi_t, psi_t).
double dbar(const Isotopy& a, const Isotopy& b);
double dbar_to_identity(const Isotopy& a);

}  // namespace symiso
