#pragma once

#include <functional>

#include "symiso/calculus.hpp"

namespace symiso {

/// Time quadrature for lengths and generator distances: adaptive Simpson
/// seeded on the time-node intervals.
struct QuadratureOptions {
  int osc_res = 0;           // 0 selects osc_resolution(spec)
  double tol = 1e-10;        // absolute tolerance over [0,1]
  int max_depth = 12;
  int min_depth = 1;
};

double integrate_time(const std::function<double(double)>& f, std::size_t nodes,
                      const QuadratureOptions& opt = {});
/// max over [0,1]: grid scan at 4 samples per node interval plus golden-section polish.
double maximize_time(const std::function<double(double)>& f, std::size_t nodes, double* argmax = nullptr);

/// osc(U_t) + |H_t|
double length_integrand(const Generator& g, double t, int osc_res);
double length_l1inf(const Generator& g, const TorusSpec& spec, const QuadratureOptions& opt = {});
double length_linf(const Generator& g, const TorusSpec& spec, const QuadratureOptions& opt = {});

/// int_0^1 osc(U_t - V_t) + |H_t - K_t| dt
double D0(const Generator& a, const Generator& b, const TorusSpec& spec, const QuadratureOptions& opt = {});
/// (D0(a, b) + D0(inverse a, inverse b)) / 2
double D1(const Generator& a, const Generator& b, const Numerics& num, const QuadratureOptions& opt = {});
double D1(const Generator& a, const Generator& a_inv, const Generator& b, const Generator& b_inv,
          const TorusSpec& spec, const QuadratureOptions& opt = {});

/// ||xi||_{C0} + int |xi'|
double ham_norm(const ReparamCurve& xi);
/// ||xi1 - xi2||_ham
double ham_distance(const ReparamCurve& a, const ReparamCurve& b);

/// Pieces of the reparameterization Lipschitz bound
/// D1(g^xi1, g^xi2) <= C ||xi1 - xi2||_ham with
/// C = B1 + B2 + k1 + 4 max{k0 + c0, max_t(|H_t| + osc U_t)}.
struct ReparamConstant {
  double B1 = 0, B2 = 0, k1 = 0, k0 = 0, c0 = 0;
  double max_h = 0;         // max_t |H_t|
  double max_cost = 0;      // max_t (|H_t| + osc U_t)
  double sup_velocity = 0;  // upper bound on |Z|
  double sup_gradient = 0;  // upper bound on |grad U|
  double jacobian = 0;      // sup |D phi_t|
  double C = 0;
};
ReparamConstant reparam_constant(const Generator& g, const Isotopy& phi, const TorusSpec& spec);

/// Upper bound on sup_{t,x} |Z_t(x)| from coefficient bounds on dense time samples.
double velocity_sup_bound(const Generator& g);

}  // namespace symiso
