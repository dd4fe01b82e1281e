#pragma once

#include <string>
#include <vector>

#include "symiso/metrics.hpp"

namespace symiso {

/// Hamiltonian loop r_t with time-1 map the identity.
/// Separable: r_t = beta(t) rho(x), beta = delta sin(2 pi (t - tau)), rho = cos(2 pi x_1).
/// TravelingWave: r_t = delta cos(2 pi (x_1 - t - tau)); osc(r_t) = 2 delta for every t.
struct HamiltonianLoop {
  enum class Profile { Separable, TravelingWave };

  Profile profile = Profile::Separable;
  int n = 1;
  double delta = 0.0;
  double tau = 0.0;

  double beta(double t) const;
  FourierField rho() const;
  FourierField field(double t) const;
  Generator generator(std::size_t nodes) const;
  /// int_0^1 osc(r_t) dt, in closed form.
  double osc_integral() const;
};

/// Positivity of a sampled cost on [0,1]: min over samples must exceed half the
/// largest jump between neighbours (a Lipschitz margin for the gaps).
struct Certificate {
  double min_value = 0.0;
  double margin = 0.0;
  double worst_time = 0.0;
  bool ok = false;
};
Certificate positivity_certificate(const std::function<double(double)>& cost, std::size_t samples);

struct LoopSearchOptions {
  int samples_per_interval = 8;
  int phases = 16;  // tau in {k/phases}
};

/// Finds (delta, tau) with osc(U_t - r_t) > 0 for all t and int osc(r_t) dt = eps/2.
HamiltonianLoop find_hamiltonian_loop(const FourierHamiltonian& U, double eps, const TorusSpec& spec,
                                 const LoopSearchOptions& opt = {});

struct Regularized {
  Generator generator;
  HamiltonianLoop loop;
  Certificate certificate;  // of t -> osc(V_t) + |K_t|
  double l1inf_before = 0.0;
  double l1inf_after = 0.0;
  int halvings = 0;
};

/// (V, K) = (-r o phi_r + U o phi_r + ~Delta(H, phi_r), H), the product of the
/// inverse loop with g. The loop amplitude is halved until the length grows by
/// at most eps/2.
Regularized regularize(const Generator& g, double eps, const Numerics& num, const LoopSearchOptions& opt = {});
/// Same composition for a fixed loop, without any search or certificate.
Generator compose_with_loop(const Generator& g, const HamiltonianLoop& loop, const Numerics& num);

struct EqualizeOptions {
  int samples = 512;
  double mollify = 0.0;  // kernel half-width in u; 0 keeps the interpolated inverse
  int check_samples = 1024;
};

struct Equalized {
  ReparamCurve zeta;
  double total = 0.0;          // int_0^1 c
  double max_deviation = 0.0;  // max_s |zeta'(s) c(zeta(s)) - total|
};

/// zeta = inverse of s -> int_0^s c / int_0^1 c for the length integrand c of g.
Equalized equalizing_zeta(const Generator& g, const TorusSpec& spec, const EqualizeOptions& opt = {});

ReparamCurve boundary_flat_xi(double delta);

struct Flattened {
  Generator generator;
  ReparamCurve xi;
  double delta = 0.0;
  double d1 = 0.0;
  double dbar = 0.0;
  double ham_distance = 0.0;
  int attempts = 0;
};
/// g^xi with xi boundary flat, delta halved from 0.05 until D1 < eps and dbar < eps.
Flattened flatten(const Generator& g, double eps, const Numerics& num, double delta_floor = 1e-4);

struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool skipped = false;
  std::string note;
};

/// int osc Delta_t dt <= 2 diam (1 + sup|D phi|) int |H_t| dt and the max-in-t version.
struct GeodesicBoundReport {
  BoundReport integral, maximum;
  double jacobian = 0.0;
};
GeodesicBoundReport geodesic_bound_check(const HarmonicPath& H, const Isotopy& phi);

/// int osc(Delta(H, Phi) - Delta(H, Psi)) dt <= 4 max|H_t| dbar(Phi, Psi), when dbar <= 1/4.
BoundReport delta_distance_check(const HarmonicPath& H, const Isotopy& phi, const Isotopy& psi);

/// int osc(Delta(H^xi1, Phi) - Delta(H^xi2, Phi)) dt <= B1 ||xi1 - xi2||_ham.
BoundReport reparam_delta_check(const HarmonicPath& H, const Isotopy& phi, const ReparamCurve& xi1,
                                const ReparamCurve& xi2, int samples_per_interval = 8);

struct ReparamStability {
  double d1 = 0.0;
  double ham_distance = 0.0;
  double ratio = 0.0;  // d1 / ham_distance
  ReparamConstant constant;
  BoundReport generator_bound;  // D1 <= C ||xi1 - xi2||_ham
  BoundReport delta_bound;      // B1 bound on the Delta difference
};
ReparamStability reparam_stability_check(const Generator& g, const Isotopy& phi, const ReparamCurve& xi1,
                                         const ReparamCurve& xi2, const Numerics& num);

/// The regularize-then-equalize path Psi with the same time-1 map as g and
/// l_inf(Psi) < l_1inf(g) + eps.
struct NormEquality {
  Regularized regular;
  Equalized equalized;
  Generator psi;
  double l1inf_g = 0, linf_g = 0, l1inf_psi = 0, linf_psi = 0;
  double endpoint_distance = 0.0;
  bool length_ok = false;
  bool endpoint_ok = false;
};
NormEquality norm_equality_experiment(const Generator& g, double eps, const Numerics& num,
                                      double endpoint_tol = 1e-4);

/// Upper bounds on the energies: the smaller lengths of g and of its equalized
/// regularization. Not the infima.
struct EnergyBounds {
  double e_1inf = 0.0;  // bound on the (1,inf) energy
  double e_inf = 0.0;   // bound on the inf energy
  std::vector<std::string> candidates;
  std::vector<double> l1inf, linf;
};
EnergyBounds energy_upper_bound(const Generator& g, double eps, const Numerics& num);
/// (bound(g) + bound(inverse g)) / 2 for both energies.
std::pair<double, double> hoferlike_norm_bound(const Generator& g, double eps, const Numerics& num);

}  // namespace symiso
