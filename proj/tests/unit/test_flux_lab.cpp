#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "symiso/flux.hpp"

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

CohomologyClass cls(std::vector<double> c) { return {HarmonicForm(std::move(c))}; }
}  // namespace

TEST_CASE("flux sees only the harmonic part") {
  const CohomologyClass f = flux(Generator::harmonic(HarmonicForm({0.3, -0.7}), 33));
  CHECK(f.rep[0] == Approx(0.3));
  CHECK(f.rep[1] == Approx(-0.7));
  const Generator g(shear(33).U, HarmonicPath::from_function(1, 33, [](double t) { return HarmonicForm({2 * t, 0.0}); }));
  CHECK(flux(g).rep[0] == Approx(1.0).epsilon(1e-12));
  CHECK(norm_euclidean(flux(shear(33)).rep) == 0.0);
}

TEST_CASE("pairing with loops and the intersection pairing") {
  PointSet loop(2, 65);
  for (std::size_t i = 0; i < 65; ++i) loop.at(0, i) = 0.2, loop.at(1, i) = wrap_unit(i / 64.0);
  CHECK(pair_loop(cls({0.4, 0.9}), loop) == Approx(0.9));
  PointSet open(2, 2);
  open.at(0, 1) = 0.3;
  CHECK_THROWS_AS(pair_loop(cls({1.0, 0.0}), open), Error);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 20; ++k) {
    const CohomologyClass a = cls({u(rng), u(rng), u(rng), u(rng)}), b = cls({u(rng), u(rng), u(rng), u(rng)});
    CHECK(poincare_pair(a, b) == Approx(-poincare_pair(b, a)));
    CHECK(poincare_pair(a, a) == Approx(0.0));
  }
  // n = 2: (a_x1 b_y1 - a_y1 b_x1 + a_x2 b_y2 - a_y2 b_x2) / 2 with coefficients ordered x1 x2 y1 y2.
  CHECK(poincare_pair(cls({1, 0, 0, 0}), cls({0, 0, 1, 0})) == Approx(0.5));
  CHECK(poincare_pair(cls({1, 0}), cls({0, 1})) == Approx(1.0));
}

TEST_CASE("mean-value identity on the translation calibration case") {
  const Numerics num = numerics();
  const Isotopy phi = integrate(Generator::harmonic(HarmonicForm({1.0, 0.0}), 33), num.torus, num.integrator);
  const MeanValueReport r = mean_value_check(cls({0.0, 1.0}), phi);
  CHECK(r.lhs == Approx(-1.0).epsilon(1e-9));
  CHECK(std::abs(r.rhs) == Approx(1.0).epsilon(1e-12));
  CHECK(r.magnitude_ok);
  CHECK(r.sign_ok);

  const HomologyVector k = ktilde(phi);
  CHECK(k.values[0] == Approx(0.0));
  CHECK(k.values[1] == Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("mean-value identity on random generators") {
  const Numerics num = numerics();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 3; ++k) {
    const Isotopy phi = integrate(random_generator(1, 33, rng), num.torus, num.integrator);
    const MeanValueReport r = mean_value_check(cls({u(rng), u(rng)}), phi, 1e-3);
    CHECK(r.magnitude_ok);
    CHECK(r.sign_ok);
    CHECK(r.lhs == Approx(kMeanValueSign * r.rhs).epsilon(1e-3));
  }
}

TEST_CASE("Hamiltonian time-1 maps have a zero of the displacement") {
  const Numerics num = numerics();
  const Isotopy phi = integrate(shear(33), num.torus, num.integrator);
  const CohomologyClass dy = cls({0.0, 1.0});
  // delta_1 = -cos(2 pi x): zeros on x = 1/4 and x = 3/4.
  const Point z = find_zero_of_delta(dy, phi);
  PointSet p(2, 1);
  p.at(0, 0) = z[0], p.at(1, 0) = z[1];
  CHECK(std::abs(delta_one(dy, phi, p)[0]) < 1e-7);
  CHECK(std::abs(std::cos(2 * kPi * z[0])) < 1e-7);

  const Isotopy tr = integrate(Generator::harmonic(HarmonicForm({1.0, 0.0}), 33), num.torus, num.integrator);
  CHECK_THROWS_AS(find_zero_of_delta(dy, tr), Error);
}

TEST_CASE("loop areas separate Hamiltonian loops from the meridian") {
  const Numerics num = numerics();
  const Isotopy m = integrate(meridian_translation(1, 33), num.torus, num.integrator);
  CHECK(hamiltonian_loop_area(cls({0.0, 1.0}), m, Point({0.3, 0.6})) == Approx(1.0).epsilon(1e-9));
  CHECK(hamiltonian_loop_area(cls({1.0, 0.0}), m, Point({0.3, 0.6})) == Approx(0.0));

  // A loop: the shear flow run forward then back.
  const Generator back_and_forth(
      FourierHamiltonian::from_function(33, [](double t) {
        return FourierField::sine(1, {1, 0}, std::sin(2 * kPi * t) / (2 * kPi));
      }),
      HarmonicPath::zero(1, 33));
  const Isotopy loop = integrate(back_and_forth, num.torus, num.integrator);
  CHECK(std::abs(hamiltonian_loop_area(cls({0.2, 1.0}), loop, Point({0.1, 0.8}))) < 1e-8);

  const Isotopy not_loop = integrate(shear(33), num.torus, num.integrator);
  CHECK_THROWS_AS(hamiltonian_loop_area(cls({0.0, 1.0}), not_loop, Point({0.1, 0.1})), Error);
}
