#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "symiso/flow.hpp"

using namespace symiso;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

const TorusSpec kSpec{1, 16, 17};

IntegratorConfig step(double h) {
  IntegratorConfig c;
  c.h = h;
  return c;
}

Generator shear(std::size_t T) { return Generator::autonomous(FourierField::sine(1, {1, 0}, 1 / (2 * kPi)), T); }

double sup_diff(const PointSet& a, const PointSet& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) e = std::max(e, std::abs(a.raw()[i] - b.raw()[i]));
  return e;
}
}  // namespace

TEST_CASE("velocity field follows the sign convention") {
  // beta = dU + H with U = sin(2 pi x)/(2 pi): beta_x = cos(2 pi x), Z = (beta_y, -beta_x).
  VelocityField z(FourierField::sine(1, {1, 0}, 1 / (2 * kPi)), HarmonicForm({0.3, 0.7}));
  const auto v = z.at(std::vector<double>{0.1, 0.4});
  CHECK(v[0] == Approx(0.7));
  CHECK(v[1] == Approx(-(std::cos(2 * kPi * 0.1) + 0.3)));
}

TEST_CASE("translation flow is exact") {
  const Isotopy phi = integrate(Generator::harmonic(HarmonicForm({1.0, 0.25}), 17), kSpec, step(1.0 / 64));
  for (std::size_t j = 0; j < phi.nodes(); ++j) {
    const double t = phi.node_time(j);
    PointSet e = phi.grid();
    for (std::size_t i = 0; i < e.size(); ++i) e.at(0, i) += 0.25 * t, e.at(1, i) -= t;
    CHECK(sup_diff(phi.image(j), e) < 1e-13);
  }
  CHECK(dbar_to_identity(phi) == Approx(std::hypot(0.25 * 0.5, 0.5)).epsilon(1e-3));
}

TEST_CASE("shear flow and its Jacobian match the closed form") {
  const Isotopy phi = integrate(shear(17), kSpec, step(1.0 / 64));
  const std::size_t P = phi.grid().size();
  for (std::size_t j : {4u, 16u}) {
    const double t = phi.node_time(j);
    const auto& J = phi.jacobian(j);
    for (std::size_t i = 0; i < P; ++i) {
      const double x = phi.grid().at(0, i);
      CHECK(phi.image(j).at(1, i) == Approx(phi.grid().at(1, i) - t * std::cos(2 * kPi * x)).epsilon(1e-12));
      CHECK(J[2 * P + i] == Approx(2 * kPi * t * std::sin(2 * kPi * x)).epsilon(1e-10));
      CHECK(J[i] == Approx(1.0));
    }
  }
}

TEST_CASE("identity flow stays put") {
  const Isotopy phi = integrate(Generator::zero(1, 17), kSpec, step(1.0 / 64));
  CHECK(dbar_to_identity(phi) == 0.0);
  CHECK(phi.jacobian_sup() == Approx(1.0));
}

TEST_CASE("random flows preserve area and invert consistently") {
  std::mt19937_64 rng(4);
  const Generator g = random_generator(1, 17, rng);
  const Isotopy phi = integrate(g, kSpec, step(1.0 / 128));
  const std::size_t P = phi.grid().size();
  double det = 0.0;
  for (std::size_t j = 0; j < phi.nodes(); ++j) {
    const auto& J = phi.jacobian(j);
    for (std::size_t i = 0; i < P; ++i) det = std::max(det, std::abs(J[i] * J[3 * P + i] - J[P + i] * J[2 * P + i] - 1));
  }
  CHECK(det < 1e-8);
  for (std::size_t j : {5u, 16u}) {
    const PointSet back = phi.apply(phi.node_time(j), phi.inverse_image(j));
    CHECK(sup_diff(back, phi.grid()) < 1e-9);
  }
  // Dense output agrees with the cached node images.
  std::vector<double> times{0.0, 0.5, 1.0};
  const auto traj = phi.trajectory(phi.grid(), times);
  CHECK(sup_diff(traj[1], phi.image(8)) < 1e-12);
  CHECK(sup_diff(traj[2], phi.image(16)) < 1e-12);
}

TEST_CASE("reversed isotopy swaps images and inverse images") {
  std::mt19937_64 rng(8);
  const Generator g = random_generator(1, 17, rng);
  const Isotopy phi = integrate(g, kSpec, step(1.0 / 64));
  const Isotopy rev = phi.reversed(std::make_shared<const Generator>(g));
  CHECK(sup_diff(rev.image(9), phi.inverse_image(9)) == 0.0);
  CHECK(sup_diff(rev.inverse_image(9), phi.image(9)) == 0.0);
}

TEST_CASE("coarse steps raise StabilityError with a usable suggestion") {
  CHECK_THROWS_AS(integrate(shear(17), kSpec, step(0.5)), StabilityError);
  const Generator wild = Generator::autonomous(FourierField::sine(1, {6, 6}, 2.0), 17);
  try {
    integrate(wild, kSpec, step(0.04));
    FAIL("expected StabilityError");
  } catch (const StabilityError& e) {
    CHECK(e.suggested_h < 0.04);
    CHECK_NOTHROW(integrate(wild, kSpec, step(e.suggested_h)));
  }
  IntegratorConfig bad;
  bad.h = -1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("fourth-order convergence on a non-separable field") {
  const Generator g = Generator::autonomous(
      FourierField::sine(1, {1, 0}, 1 / (2 * kPi)) + FourierField::sine(1, {0, 1}, 1 / (2 * kPi)), 17);
  auto end = [&](double h) { return integrate(g, kSpec, step(h)).image(16); };
  const PointSet ref = end(1.0 / 1024);
  const double ratio = sup_diff(end(1.0 / 32), ref) / sup_diff(end(1.0 / 64), ref);
  CHECK(ratio == Approx(16.0).epsilon(0.25));
}

TEST_CASE("C0 distances use the shortest representative") {
  PointSet a(2, 1), b(2, 1);
  a.at(0, 0) = 0.99, a.at(1, 0) = 0.5;
  b.at(0, 0) = 2.01, b.at(1, 0) = 0.5;
  CHECK(c0_distance(a, b) == Approx(0.02));
  CHECK(d0(a, a, b, b) == Approx(0.02));
}
