#pragma once

#include <vector>

#include "symiso/calculus.hpp"

namespace symiso {

/// A class in H^1(T^{2n}, R), held by its harmonic (constant) representative.
struct CohomologyClass {
  HarmonicForm rep;
};

/// Values of K~(Phi) on the basis classes [dx_1..dx_n, dy_1..dy_n].
struct HomologyVector {
  std::vector<double> values;
};

/// int_0^1 H_t dt: exact parts of the generator do not contribute.
CohomologyClass flux(const Generator& g);

/// Integral of the representative along a closed curve; throws on open curves.
double pair_loop(const CohomologyClass& c, const PointSet& loop, double closed_tol = 1e-9);

/// <a, b wedge omega^{n-1}> with omega^n normalized to unit volume:
/// (1/n) sum_j (a_{x_j} b_{y_j} - a_{y_j} b_{x_j}); for n = 1 this is a_1 b_2 - a_2 b_1.
double poincare_pair(const CohomologyClass& a, const CohomologyClass& b);

/// The mean-value identity int Delta_1(alpha, Phi) = -n <Flux(Phi), alpha>:
/// the sign is fixed by the translation calibration case (LHS = -1, RHS = +1).
struct MeanValueReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool magnitude_ok = false;
  bool sign_ok = false;
};
constexpr double kMeanValueSign = -1.0;
MeanValueReport mean_value_check(const CohomologyClass& alpha, const Isotopy& phi, double tol = 1e-4);

/// Delta_1(alpha, Phi) at arbitrary points (flows the points to t = 1).
std::vector<double> delta_one(const CohomologyClass& alpha, const Isotopy& phi, const PointSet& pts);

/// A zero of Delta_1(alpha, Phi) for Hamiltonian Phi: sign changes along grid
/// edges are refined by bisection.
Point find_zero_of_delta(const CohomologyClass& alpha, const Isotopy& phi, double tol = 1e-8);

/// Delta_1(alpha, Phi)(x) for a loop Phi (time-1 map = id within loop_tol).
double hamiltonian_loop_area(const CohomologyClass& alpha, const Isotopy& loop, const Point& x,
                             double loop_tol = 1e-5);

/// Component i = (1/n) int Delta_1(e_i, Phi).
HomologyVector ktilde(const Isotopy& phi);

/// Loop of translations t -> (x, y + t) on T^2 (or along y_1), generated by (0, -dx_1).
Generator meridian_translation(int n, std::size_t nodes);

}  // namespace symiso
