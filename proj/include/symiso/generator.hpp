#pragma once

#include <random>

#include "symiso/hamiltonian.hpp"
#include "symiso/harmonic.hpp"

namespace symiso {

/// The pair (U, H): a normalized Hamiltonian and a harmonic path on the same
/// time nodes. Its isotopy solves i(Z_t) omega = dU_t + H_t.
struct Generator {
  FourierHamiltonian U;
  HarmonicPath H;

  Generator() : Generator(FourierHamiltonian::zero(1, 8), HarmonicPath::zero(1, 8)) {}
  Generator(FourierHamiltonian u, HarmonicPath h);

  int n() const { return U.n(); }
  std::size_t nodes() const { return U.nodes(); }
  double node_time(std::size_t j) const { return U.node_time(j); }
  bool is_hamiltonian(double tol = 0.0) const { return H.is_zero(tol); }

  static Generator zero(int n, std::size_t nodes);
  static Generator harmonic(const HarmonicForm& h, std::size_t nodes);
  static Generator autonomous(const FourierField& u, std::size_t nodes);
};

struct RandomGeneratorOptions {
  int bandwidth = 2;
  double u_amplitude = 0.005; // scale of Fourier coefficients; keeps time-1 Jacobians near 2
  double h_amplitude = 0.3;   // scale of harmonic coefficients
  bool hamiltonian = false;   // force H = 0
  bool harmonic_only = false; // force U = 0
};

/// Smooth random generator: low modes with coefficients decaying like 1/(1+|k|^2)
/// and a single time harmonic on every coefficient.
Generator random_generator(int n, std::size_t nodes, std::mt19937_64& rng,
                           const RandomGeneratorOptions& opt = {});

}  // namespace symiso
