#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "symiso/regularization.hpp"

using namespace symiso;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

Numerics numerics() {
  Numerics num;
  num.torus = {1, 32, 33};
  num.integrator.h = 1.0 / 128;
  return num;
}

Generator profile() {
  return Generator(FourierHamiltonian::zero(1, 33),
                   HarmonicPath::from_function(1, 33, [](double t) { return HarmonicForm({1 + t, 0.0}); }));
}
}  // namespace

TEST_CASE("loops close up and have closed-form oscillation integrals") {
  const Numerics num = numerics();
  HamiltonianLoop sep;
  sep.delta = 0.1;
  sep.tau = 0.3;
  CHECK(sep.osc_integral() == Approx(0.4 / kPi));
  HamiltonianLoop wave = sep;
  wave.profile = HamiltonianLoop::Profile::TravelingWave;
  CHECK(wave.osc_integral() == Approx(0.2));
  for (const HamiltonianLoop& l : {sep, wave}) {
    CHECK(integrate_time([&](double t) { return osc(l.field(t), 16); }, 33, {}) == Approx(l.osc_integral()).epsilon(1e-8));
    const Isotopy phi = integrate(l.generator(33), num.torus, num.integrator);
    CHECK(c0_distance_to_identity(phi.grid(), phi.image(32)) < 1e-6);
  }
}

TEST_CASE("loop search falls back to a traveling wave when U vanishes") {
  const TorusSpec spec{1, 32, 33};
  const double eps = 0.2;
  const HamiltonianLoop l = find_hamiltonian_loop(FourierHamiltonian::zero(1, 33), eps, spec);
  CHECK(l.profile == HamiltonianLoop::Profile::TravelingWave);
  CHECK(l.delta == Approx(eps / 4));
  CHECK(l.osc_integral() == Approx(eps / 2));
}

TEST_CASE("positivity certificate demands a Lipschitz margin") {
  CHECK(positivity_certificate([](double t) { return 1 + t; }, 64).ok);
  CHECK_FALSE(positivity_certificate([](double t) { return std::abs(t - 0.5); }, 64).ok);
  CHECK_FALSE(positivity_certificate([](double t) { return t; }, 64).ok);
}

TEST_CASE("regularization keeps the endpoint and bounds the cost away from zero") {
  const Numerics num = numerics();
  const double eps = 0.2;
  // The zero generator has cost identically zero.
  const Generator g = Generator::autonomous(FourierField::constant(1, 0.0), 33);
  std::mt19937_64 rng(3);
  RandomGeneratorOptions ham;
  ham.hamiltonian = true;
  for (const Generator& gen : {g, random_generator(1, 33, rng, ham)}) {
    const Regularized r = regularize(gen, eps, num);
    CHECK(r.certificate.ok);
    CHECK(r.certificate.min_value > 0.0);
    CHECK(r.l1inf_after <= r.l1inf_before + eps / 2 + 1e-9);
    const Isotopy a = integrate(gen, num.torus, num.integrator), b = integrate(r.generator, num.torus, num.integrator);
    CHECK(c0_distance(a.image(32), b.image(32)) < 1e-5);
  }
}

TEST_CASE("equalizing reparameterization flattens the cost") {
  const TorusSpec spec{1, 32, 33};
  const Equalized e = equalizing_zeta(profile(), spec);
  CHECK(e.total == Approx(1.5).epsilon(1e-10));
  CHECK(e.max_deviation < 1e-6);
  for (double s : {0.1, 0.4, 0.9}) CHECK(e.zeta.value(s) == Approx(-1 + std::sqrt(1 + 3 * s)).epsilon(1e-6));

  const Generator flat = Generator::harmonic(HarmonicForm({0.5, 0.0}), 33);
  const Equalized c = equalizing_zeta(flat, spec);
  for (double s : {0.2, 0.7}) CHECK(c.zeta.value(s) == Approx(s).epsilon(1e-9));
  CHECK(length_linf(reparameterize(profile(), e.zeta), spec) == Approx(1.5).epsilon(1e-5));
}

TEST_CASE("boundary-flat reparameterization vanishes at the ends") {
  const Numerics num = numerics();
  CHECK_THROWS_AS(boundary_flat_xi(0.1), Error);
  CHECK_THROWS_AS(boundary_flat_xi(0.0), Error);
  const Generator mixed(Generator::autonomous(FourierField::sine(1, {1, 0}, 1 / (2 * kPi)), 33).U,
                        HarmonicPath::constant(HarmonicForm({0.3, 0.1}), 33));
  const Flattened f = flatten(mixed, 0.05, num);
  CHECK(f.d1 < 0.05);
  CHECK(f.dbar < 0.05);
  for (double t : {0.0, f.delta / 2, 1 - f.delta / 2, 1.0}) {
    CHECK(f.generator.U.at(t).sup_bound() < 1e-14);
    CHECK(norm_euclidean(f.generator.H.at(t)) < 1e-14);
  }
}

TEST_CASE("displacement bounds hold on random flows") {
  const Numerics num = numerics();
  std::mt19937_64 rng(17);
  for (int k = 0; k < 3; ++k) {
    const Generator g = random_generator(1, 33, rng);
    const Isotopy phi = integrate(g, num.torus, num.integrator);
    const GeodesicBoundReport r = geodesic_bound_check(random_generator(1, 33, rng).H, phi);
    CHECK(r.integral.holds);
    CHECK(r.maximum.holds);
    CHECK(r.integral.lhs <= r.integral.rhs);
  }
}

TEST_CASE("the equalized regularization realizes the length") {
  const Numerics num = numerics();
  const double eps = 0.1;
  const NormEquality e = norm_equality_experiment(profile(), eps, num);
  CHECK(e.l1inf_g == Approx(1.5).epsilon(1e-9));
  CHECK(e.linf_g == Approx(2.0).epsilon(1e-9));
  CHECK(e.length_ok);
  CHECK(e.endpoint_ok);
  CHECK(e.linf_psi < e.l1inf_g + eps);
  CHECK(e.l1inf_psi == Approx(e.linf_psi).epsilon(1e-3));
}
