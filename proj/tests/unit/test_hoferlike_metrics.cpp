#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "symiso/metrics.hpp"

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

Generator shear(std::size_t T) { return Generator::autonomous(FourierField::sine(1, {1, 0}, 1 / (2 * kPi)), T); }

ReparamCurve square() {
  return ReparamCurve::from_function([](double t) { return t * t; }, [](double t) { return 2 * t; }, "square");
}
}  // namespace

TEST_CASE("time quadrature and maximization") {
  CHECK(integrate_time([](double t) { return std::sin(kPi * t) * std::sin(kPi * t); }, 33) == Approx(0.5).epsilon(1e-10));
  CHECK(integrate_time([](double t) { return std::abs(t - 0.3); }, 17) == Approx(0.29).epsilon(1e-8));
  double arg = 0.0;
  CHECK(maximize_time([](double t) { return std::sin(kPi * t); }, 17, &arg) == Approx(1.0).epsilon(1e-12));
  CHECK(arg == Approx(0.5).epsilon(1e-5));
  CHECK(maximize_time([](double t) { return -t; }, 9) == Approx(0.0));
}

TEST_CASE("lengths of closed-form generators") {
  const TorusSpec spec{1, 32, 33};
  const Generator s = shear(33);
  CHECK(length_l1inf(s, spec) == Approx(1 / kPi).epsilon(1e-10));
  CHECK(length_linf(s, spec) == Approx(1 / kPi).epsilon(1e-10));

  const Generator mixed(s.U, HarmonicPath::constant(HarmonicForm({0.3, 0.1}), 33));
  CHECK(length_l1inf(mixed, spec) == Approx(1 / kPi + 0.4).epsilon(1e-10));

  const Generator profile(FourierHamiltonian::zero(1, 33),
                          HarmonicPath::from_function(1, 33, [](double t) { return HarmonicForm({1 + t, 0.0}); }));
  CHECK(length_l1inf(profile, spec) == Approx(1.5).epsilon(1e-10));
  CHECK(length_linf(profile, spec) == Approx(2.0).epsilon(1e-10));
  CHECK(length_l1inf(Generator::zero(1, 33), spec) == 0.0);
}

TEST_CASE("l1inf is invariant under monotone reparameterization and never exceeds linf") {
  const Numerics num = numerics();
  std::mt19937_64 rng(21);
  for (int k = 0; k < 4; ++k) {
    const Generator g = random_generator(1, 33, rng);
    const double a = length_l1inf(g, num.torus), b = length_linf(g, num.torus);
    CHECK(a <= b + 1e-12);
    QuadratureOptions fine;
    fine.tol = 1e-9;
    CHECK(length_l1inf(reparameterize(g, square()), num.torus, fine) == Approx(a).epsilon(1e-6));
    CHECK(length_l1inf(reparameterize(g, ReparamCurve::boundary_flat(0.1)), num.torus, fine) == Approx(a).epsilon(1e-6));
  }
}

TEST_CASE("inverse lengths agree for Hamiltonian generators only") {
  const Numerics num = numerics();
  std::mt19937_64 rng(5);
  RandomGeneratorOptions ham;
  ham.hamiltonian = true;
  const Generator h = random_generator(1, 33, rng, ham);
  CHECK(length_l1inf(inverse(h, num), num.torus) == Approx(length_l1inf(h, num.torus)).epsilon(1e-6));

  // With a harmonic part the inverse generator picks up the displacement term, so its length differs.
  const FourierHamiltonian U = FourierHamiltonian::from_function(33, [](double t) {
    return FourierField::sine(1, {0, 1}, (1 + 4 * t * t) / (2 * kPi)) + FourierField::sine(1, {1, 0}, 0.05);
  });
  const Generator g(U, HarmonicPath::from_function(1, 33, [](double t) { return HarmonicForm({2 * t, 0.5}); }));
  const double fwd = length_l1inf(g, num.torus), bwd = length_l1inf(inverse(g, num), num.torus);
  CHECK(std::abs(fwd - bwd) > 1e-4);
}

TEST_CASE("generator distances are pseudometrics") {
  const Numerics num = numerics();
  std::mt19937_64 rng(31);
  std::vector<Generator> g, gi;
  for (int k = 0; k < 3; ++k) {
    g.push_back(random_generator(1, 33, rng));
    gi.push_back(inverse(g.back(), num));
  }
  CHECK(D0(g[0], g[0], num.torus) == 0.0);
  CHECK(D0(g[0], g[1], num.torus) == Approx(D0(g[1], g[0], num.torus)).epsilon(1e-12));
  const TorusSpec& s = num.torus;
  const double d01 = D1(g[0], gi[0], g[1], gi[1], s), d12 = D1(g[1], gi[1], g[2], gi[2], s);
  const double d02 = D1(g[0], gi[0], g[2], gi[2], s);
  CHECK(D1(g[1], gi[1], g[0], gi[0], s) == Approx(d01).epsilon(1e-12));
  CHECK(d02 <= d01 + d12 + 1e-8);
  CHECK(D0(g[0], g[2], s) <= D0(g[0], g[1], s) + D0(g[1], g[2], s) + 1e-8);
  // Shifting only the harmonic part by a constant c costs |c| per unit time.
  const Generator shifted(g[0].U, g[0].H + HarmonicPath::constant(HarmonicForm({0.25, -0.5}), 33));
  CHECK(D0(g[0], shifted, s) == Approx(0.75).epsilon(1e-9));
}

TEST_CASE("norm distance between reparameterizations") {
  const ReparamCurve id = ReparamCurve::identity();
  // max |t - t^2| = 1/4 and int |1 - 2t| = 1/2.
  CHECK(ham_distance(id, square()) == Approx(0.75).epsilon(1e-6));
  CHECK(ham_distance(id, id) == 0.0);
  CHECK(ham_norm(id) == Approx(2.0).epsilon(1e-9));
}

TEST_CASE("reparameterization constant assembles its pieces") {
  const Numerics num = numerics();
  std::mt19937_64 rng(41);
  const Generator g = random_generator(1, 33, rng);
  const Isotopy phi = integrate(g, num.torus, num.integrator);
  const ReparamConstant c = reparam_constant(g, phi, num.torus);
  CHECK(c.C == Approx(c.B1 + c.B2 + c.k1 + 4 * std::max(c.k0 + c.c0, c.max_cost)));
  CHECK(c.jacobian >= 1.0);
  CHECK(c.sup_velocity >= c.max_h);
  CHECK(velocity_sup_bound(shear(33)) >= 1.0);
}
