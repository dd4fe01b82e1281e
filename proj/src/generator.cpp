#include "symiso/generator.hpp"

#include <cmath>
#include <numbers>

namespace symiso {

Generator::Generator(FourierHamiltonian u, HarmonicPath h) : U(std::move(u)), H(std::move(h)) {
  if (U.n() != H.n()) throw Error("Generator: U and H live on different tori");
  if (U.nodes() != H.nodes()) throw Error("Generator: time grids of U and H are incompatible");
}

Generator Generator::zero(int n, std::size_t nodes) {
  return {FourierHamiltonian::zero(n, nodes), HarmonicPath::zero(n, nodes)};
}

Generator Generator::harmonic(const HarmonicForm& h, std::size_t nodes) {
  return {FourierHamiltonian::zero(h.n(), nodes), HarmonicPath::constant(h, nodes)};
}

Generator Generator::autonomous(const FourierField& u, std::size_t nodes) {
  return {FourierHamiltonian::constant(u, nodes), HarmonicPath::zero(u.n(), nodes)};
}

Generator random_generator(int n, std::size_t nodes, std::mt19937_64& rng, const RandomGeneratorOptions& opt) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const int d = 2 * n, K = opt.bandwidth;

  struct Mode {
    std::vector<int> k;
    cplx a, b;
    double theta;
  };
  std::vector<Mode> modes;
  if (!opt.harmonic_only) {
    FourierField probe(n, K);
    std::vector<int> k(static_cast<std::size_t>(d));
    const std::size_t L = probe.coefficients().size();
    for (std::size_t p = L / 2 + 1; p < L; ++p) {
      std::size_t rem = p;
      double kk = 0;
      for (int a = d - 1; a >= 0; --a) {
        k[std::size_t(a)] = int(rem % std::size_t(2 * K + 1)) - K;
        rem /= std::size_t(2 * K + 1);
        kk += double(k[std::size_t(a)]) * k[std::size_t(a)];
      }
      const double s = opt.u_amplitude / (1.0 + kk);
      cplx a(uni(rng) * s, uni(rng) * s), b(uni(rng) * s * 0.5, uni(rng) * s * 0.5);
      modes.push_back({k, a, b, phase(rng)});
    }
  }
  std::vector<double> h0(static_cast<std::size_t>(d)), h1(static_cast<std::size_t>(d));
  double hphase = phase(rng);
  if (!opt.hamiltonian)
    for (int a = 0; a < d; ++a) {
      h0[std::size_t(a)] = uni(rng) * opt.h_amplitude;
      h1[std::size_t(a)] = uni(rng) * opt.h_amplitude / 3.0;
    }

  auto ufun = [&](double t) {
    FourierField f(n, K);
    for (const Mode& m : modes) f.set_mode(m.k, m.a + m.b * std::cos(2 * std::numbers::pi * t + m.theta));
    return f;
  };
  auto hfun = [&](double t) {
    HarmonicForm h = HarmonicForm::zero(n);
    for (int a = 0; a < d; ++a)
      h.coeffs[std::size_t(a)] = h0[std::size_t(a)] + h1[std::size_t(a)] * std::sin(2 * std::numbers::pi * t + hphase);
    return h;
  };
  return {FourierHamiltonian::from_function(nodes, ufun), HarmonicPath::from_function(n, nodes, hfun)};
}

}  // namespace symiso
