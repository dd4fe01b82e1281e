#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "symiso/calculus.hpp"
#include "symiso/metrics.hpp"

using namespace symiso;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

Numerics coarse() {
  Numerics num;
  num.torus = {1, 32, 33};
  num.integrator.h = 1.0 / 128;
  return num;
}

Generator shear(std::size_t T) { return Generator::autonomous(FourierField::sine(1, {1, 0}, 1 / (2 * kPi)), T); }
}  // namespace

TEST_CASE("delta of a translation is the constant -b t") {
  const Numerics num = coarse();
  const Isotopy phi = integrate(Generator::harmonic(HarmonicForm({1.0, 0.0}), 33), num.torus, num.integrator);
  const HarmonicPath H = HarmonicPath::constant(HarmonicForm({0.4, 0.9}), 33);
  const DeltaFunction d = delta(H, phi);
  for (std::size_t j = 0; j < 33; ++j) {
    CHECK(d[j].osc() < 1e-14);
    CHECK(delta_mean(H, phi, j) == Approx(-0.9 * phi.node_time(j)));
  }
  CHECK(delta_normalized(H, phi)[32].mean() == Approx(0.0));
}

TEST_CASE("delta mean vanishes for Hamiltonian flows") {
  const Numerics num = coarse();
  std::mt19937_64 rng(2);
  RandomGeneratorOptions ham;
  ham.hamiltonian = true;
  const Isotopy phi = integrate(random_generator(1, 33, rng, ham), num.torus, num.integrator);
  const HarmonicPath H = HarmonicPath::constant(HarmonicForm({0.3, -1.2}), 33);
  for (std::size_t j = 0; j < 33; ++j) CHECK(std::abs(delta_mean(H, phi, j)) < 1e-8);
}

TEST_CASE("line-integral route agrees with the displacement route") {
  const Numerics num = coarse();
  std::mt19937_64 rng(6);
  const Generator g = random_generator(1, 33, rng);
  const Isotopy phi = integrate(g, num.torus, num.integrator);
  const HarmonicPath H = HarmonicPath::constant(HarmonicForm({0.7, 0.2}), 33);
  const PointSet pts = grid_points(2, 4);
  const DeltaFunction d = delta(H, phi);
  const std::vector<double> li = delta_line_integral(H, phi, 24, pts, 32);
  // delta at the 4-grid: every 8th point of the 32-grid along each axis.
  std::vector<double> dd;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) dd.push_back(d[24].values[std::size_t(a * 8 * 32 + b * 8)]);
  const double shift = dd[0] - li[0];
  for (std::size_t i = 0; i < dd.size(); ++i) CHECK(dd[i] - li[i] == Approx(shift).epsilon(1e-7));
}

TEST_CASE("harmonic generators invert and multiply in closed form") {
  const Numerics num = coarse();
  const HarmonicForm a({0.4, -0.1}), b({0.2, 0.3});
  const Generator ga = Generator::harmonic(a, 33), gb = Generator::harmonic(b, 33);
  const Generator inv = inverse(ga, num);
  const Generator prod = product(ga, gb, num);
  for (std::size_t j = 0; j < 33; j += 8) {
    CHECK(inv.U.node_field(j).sup_bound() < 1e-12);
    CHECK(inv.H.node_form(j).coeffs[0] == Approx(-0.4));
    CHECK(prod.U.node_field(j).sup_bound() < 1e-12);
    CHECK(prod.H.node_form(j).coeffs[1] == Approx(0.2));
  }
}

TEST_CASE("a generator times its inverse is the identity") {
  const Numerics num = coarse();
  std::mt19937_64 rng(12);
  for (int k = 0; k < 3; ++k) {
    const Generator g = random_generator(1, 33, rng);
    const Isotopy phi = integrate(g, num.torus, num.integrator);
    ProjectionStats st;
    const Generator gi = inverse(g, phi, num, &st);
    CHECK(st.max_residual < 1e-6);
    const Isotopy p = integrate(product(g, phi, gi, num), num.torus, num.integrator);
    CHECK(c0_distance_to_identity(p.grid(), p.image(32)) < 1e-5);
    // The inverse generator generates the inverse maps.
    const Isotopy q = integrate(gi, num.torus, num.integrator);
    CHECK(c0_distance(q.image(32), phi.inverse_image(32)) < 1e-5);
  }
}

TEST_CASE("product of Hamiltonian generators composes the flows") {
  const Numerics num = coarse();
  std::mt19937_64 rng(14);
  const Generator g1 = random_generator(1, 33, rng), g2 = random_generator(1, 33, rng);
  const Isotopy p1 = integrate(g1, num.torus, num.integrator), p2 = integrate(g2, num.torus, num.integrator);
  const Isotopy p12 = integrate(product(g1, p1, g2, num), num.torus, num.integrator);
  for (std::size_t j : {16u, 32u}) {
    const PointSet composed = p1.apply(p1.node_time(j), p2.image(j));
    CHECK(c0_distance(p12.image(j), composed) < 1e-5);
  }
  for (const GridField& r : delta_composition_residual(HarmonicPath::constant(HarmonicForm({0.5, 1.0}), 33), p1, p2, num))
    CHECK(r.osc() < 1e-5);
}

TEST_CASE("Hodge parts: harmonic translation and Hamiltonian remainder") {
  const Numerics num = coarse();
  const HarmonicPath H = HarmonicPath::from_function(1, 33, [](double t) { return HarmonicForm({1.0, 2.0 * t}); });
  const auto tau = harmonic_translation(H, 0.5);
  CHECK(tau[0] == Approx(0.25));  // int_0^0.5 2t dt
  CHECK(tau[1] == Approx(-0.5));
  const Generator g(shear(33).U, H);
  const HodgeParts parts = hodge_decompose(g);
  CHECK(parts.harmonic.U.is_zero());
  CHECK(parts.hamiltonian.is_hamiltonian());
  // U o rho: the shear profile translated by tau(t).
  const double t = 0.75;
  const auto tt = harmonic_translation(H, t);
  const std::vector<double> x{0.2, 0.6};
  const double expect = std::sin(2 * kPi * (0.2 + tt[0])) / (2 * kPi);
  CHECK(parts.hamiltonian.U.at(t).value(x) == Approx(expect).epsilon(1e-8));

  const Isotopy phi = integrate(g, num.torus, num.integrator);
  const Isotopy psi = integrate(parts.hamiltonian, num.torus, num.integrator);
  for (std::size_t j = 0; j < 33; j += 8) {
    PointSet rp = psi.image(j);
    const auto v = harmonic_translation(H, phi.node_time(j));
    for (int a = 0; a < 2; ++a)
      for (std::size_t i = 0; i < rp.size(); ++i) rp.at(a, i) += v[std::size_t(a)];
    CHECK(c0_distance(phi.image(j), rp) < 2e-5);  // the remainder is interpolated between time nodes
  }
}

TEST_CASE("reparameterization rescales the generator exactly") {
  const Generator g = shear(33);
  const ReparamCurve xi = ReparamCurve::from_function([](double t) { return t * t; },
                                                      [](double t) { return 2 * t; }, "square");
  const Generator r = reparameterize(g, xi);
  const std::vector<double> x{0.1, 0.3};
  CHECK(r.U.at(0.5).value(x) == Approx(1.0 * g.U.at(0.25).value(x)));
  CHECK(reparameterize(g, ReparamCurve::identity()).U.warped() == false);
  const ReparamCurve shifted = ReparamCurve::from_function([](double t) { return 0.1 + 0.9 * t; },
                                                           [](double) { return 0.9; }, "shifted");
  CHECK_THROWS_AS(reparameterize(g, shifted), Error);
  const ReparamCurve escape = ReparamCurve::from_function([](double t) { return 1.5 * t; },
                                                          [](double) { return 1.5; }, "escape");
  CHECK_THROWS_AS(reparameterize(g, escape), Error);

  // The reparameterized flow visits the original maps at xi(t).
  const Numerics num = coarse();
  const Isotopy a = integrate(g, num.torus, num.integrator), b = integrate(r, num.torus, num.integrator);
  CHECK(c0_distance(b.image(16), a.image(8)) < 1e-8);
}
