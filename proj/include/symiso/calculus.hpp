#pragma once

#include <vector>

#include "symiso/flow.hpp"
#include "symiso/line_integral.hpp"

namespace symiso {

/// Shared numerical settings for operations that realize flows and
/// re-project composed fields onto a Fourier basis.
struct Numerics {
  TorusSpec torus;
  IntegratorConfig integrator;
  int bandwidth = 0;       // projection bandwidth; 0 selects grid_res/2 - 1
  double trim = 1e-13;     // coefficients at or below this magnitude are dropped

  int projection_bandwidth() const { return bandwidth > 0 ? bandwidth : torus.grid_res / 2 - 1; }
};

/// Delta_t(H, Phi)(x) = int_0^t H_t(Z_s(phi_s x)) ds on the quadrature grid at every time node.
struct DeltaFunction {
  std::vector<GridField> slices;
  bool normalized = false;

  std::size_t nodes() const { return slices.size(); }
  const GridField& operator[](std::size_t j) const { return slices[j]; }
  DeltaFunction normalized_copy() const;
};

/// Worst projection residual seen while building a composed generator.
struct ProjectionStats {
  double max_residual = 0.0;
  int bandwidth = 0;
};

/// With H frozen at t the integrand is linear in the velocity, so the time
/// quadrature along each trajectory reduces to H_t applied to the lifted
/// RK4 displacement phi_t(x) - x.
DeltaFunction delta(const HarmonicPath& H, const Isotopy& phi);
DeltaFunction delta_normalized(const HarmonicPath& H, const Isotopy& phi);

/// Independent route: u_t(x) = int_gamma (phi_t^* H_t - H_t) along the minimal
/// segment from the origin to x, computed by flowing `samples`+1 points of the
/// segment and unwrapping their image. Agrees with delta() up to a constant.
std::vector<double> delta_line_integral(const HarmonicPath& H, const Isotopy& phi, std::size_t node,
                                        const PointSet& points, int samples = 16);

double delta_mean(const HarmonicPath& H, const Isotopy& phi, std::size_t node);

/// (U + V o phi1^{-1} + ~Delta(K, phi1^{-1}), H + K), U-slot renormalized.
Generator product(const Generator& g1, const Generator& g2, const Numerics& num,
                  ProjectionStats* stats = nullptr);
/// Same, reusing a realized flow of g1 (only its inverse images are read).
Generator product(const Generator& g1, const Isotopy& phi1, const Generator& g2, const Numerics& num,
                  ProjectionStats* stats = nullptr);

/// (-U o phi - ~Delta(H, phi), -H).
Generator inverse(const Generator& g, const Numerics& num, ProjectionStats* stats = nullptr);
Generator inverse(const Generator& g, const Isotopy& phi, const Numerics& num,
                  ProjectionStats* stats = nullptr);

/// (xi' U_xi, xi' H_xi), exact in t (the curve is carried along, not resampled).
Generator reparameterize(const Generator& g, const ReparamCurve& xi);

struct HodgeParts {
  Generator harmonic;     // (0, H), flow rho_t
  Generator hamiltonian;  // (U o rho, 0), flow psi_t
};
/// phi_g = rho o psi. rho_t is the translation by J int_0^t H, so U o rho is an
/// exact phase shift of every Fourier coefficient.
HodgeParts hodge_decompose(const Generator& g);
/// The translation vector of the harmonic flow at time t.
std::vector<double> harmonic_translation(const HarmonicPath& H, double t);

/// R_t = Delta_t(H, Phi1 o Phi2) - Delta_t(H, Phi2) - Delta_t(H, Phi1) o phi2_t, where
/// Phi1 o Phi2 is realized as the flow of product(g1, g2).
std::vector<GridField> delta_composition_residual(const HarmonicPath& H, const Isotopy& phi1,
                                                  const Isotopy& phi2, const Numerics& num);

}  // namespace symiso
