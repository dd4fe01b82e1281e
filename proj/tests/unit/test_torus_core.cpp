#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "symiso/fourier.hpp"
#include "symiso/harmonic.hpp"
#include "symiso/line_integral.hpp"
#include "symiso/reparam_curve.hpp"
#include "symiso/time_series.hpp"

using namespace symiso;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

FourierField random_field(std::mt19937_64& rng, int n, int K) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FourierField f(n, K);
  auto& c = f.coefficients_mut();
  for (auto& v : c) v = cplx(u(rng), u(rng)) / double(1 + c.size() / 8);
  f.symmetrize();
  return f;
}
}  // namespace

TEST_CASE("wrapping and torus distance") {
  CHECK(wrap_unit(1.25) == Approx(0.25));
  CHECK(wrap_unit(-0.25) == Approx(0.75));
  CHECK(wrap_delta(0.9) == Approx(-0.1));
  CHECK(torus_distance(Point({0.95, 0.5}), Point({0.05, 0.5})) == Approx(0.1));
  CHECK(torus_distance(Point({0.0, 0.0}), Point({0.5, 0.5})) == Approx(std::sqrt(0.5)));
}

TEST_CASE("grid layout has axis 0 slowest") {
  const PointSet g = grid_points(2, 4);
  REQUIRE(g.size() == 16);
  CHECK(g.at(0, 1) == 0.0);
  CHECK(g.at(1, 1) == Approx(0.25));
  CHECK(g.at(0, 4) == Approx(0.25));
  CHECK(g.at(1, 4) == 0.0);
}

TEST_CASE("Fourier evaluation matches closed forms") {
  const FourierField f = FourierField::cosine(1, {1, 2}, 0.7, 0.3);
  PointSet p(2, 3);
  const double xs[3][2] = {{0.1, 0.2}, {0.77, 0.05}, {0.5, 0.9}};
  for (std::size_t i = 0; i < 3; ++i) p.at(0, i) = xs[i][0], p.at(1, i) = xs[i][1];
  FieldSamples s;
  f.evaluate(p, s, 2);
  for (std::size_t i = 0; i < 3; ++i) {
    const double ph = 2 * kPi * (xs[i][0] + 2 * xs[i][1]) + 0.3;
    CHECK(s.value[i] == Approx(0.7 * std::cos(ph)).epsilon(1e-12));
    CHECK(s.grad_at(0, i) == Approx(-0.7 * 2 * kPi * std::sin(ph)).epsilon(1e-12));
    CHECK(s.grad_at(1, i) == Approx(-0.7 * 4 * kPi * std::sin(ph)).epsilon(1e-12));
    CHECK(s.hess_at(0, 1, i) == Approx(-0.7 * 8 * kPi * kPi * std::cos(ph)).epsilon(1e-12));
  }
  std::vector<double> v{0.125, -0.3};
  const FourierField g = f.translated(v);
  CHECK(g.value(std::vector<double>{0.1, 0.2}) == Approx(f.value(std::vector<double>{0.225, -0.1})).epsilon(1e-12));
}

TEST_CASE("projection inverts synthesis for band-limited fields") {
  std::mt19937_64 rng(11);
  const FourierField f = random_field(rng, 1, 5);
  ProjectionReport rep;
  const FourierField p = project(synthesize(f, 32), 1, 15, 1e-14, &rep);
  CHECK(rep.max_residual < 1e-13);
  CHECK(rep.bandwidth == 5);
  const FourierField d = p - f;
  CHECK(d.sup_bound() < 1e-13);
  CHECK_THROWS_AS(project(synthesize(f, 32), 1, 16, 0.0), Error);
}

TEST_CASE("osc of a two-mode profile equals 3 sqrt(3) / 2") {
  // sin(2 pi x) + sin(4 pi x)/2 peaks at x = 1/6 with value 3 sqrt(3)/4.
  const FourierField f = FourierField::sine(1, {1, 0}, 1.0) + FourierField::sine(1, {2, 0}, 0.5);
  CHECK(osc(f, 16) == Approx(1.5 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(osc(FourierField::cosine(1, {1, 1}, 0.7), 64) == Approx(1.4).epsilon(1e-12));
  CHECK(osc(FourierField::constant(1, 3.0), 64) == 0.0);
}

TEST_CASE("osc is translation invariant and bounded by 2 sup") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const FourierField f = random_field(rng, 1, 1 + trial % 6);
    std::vector<double> v{u(rng), u(rng)};
    const double a = osc(f, 128), b = osc(f.translated(v), 128);
    CHECK(std::abs(a - b) < 1e-9);
    CHECK(a <= 2 * f.sup_bound() + 1e-12);
  }
}

TEST_CASE("normalization removes the mean") {
  std::mt19937_64 rng(5);
  FourierField f = random_field(rng, 1, 3) + FourierField::constant(1, 2.5);
  CHECK(std::abs(volume_integral(f.normalized())) < 1e-15);
  CHECK(std::abs(volume_integral(synthesize(f, 16).normalized())) < 1e-13);
}

TEST_CASE("sup norm of a harmonic form never exceeds the coefficient sum") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const int n = 1 + i % 3;
    HarmonicForm h = HarmonicForm::zero(n);
    for (double& c : h.coeffs) c = u(rng);
    CHECK(norm_sup(h) <= norm_euclidean(h) + 1e-15);
  }
  CHECK(norm_euclidean(HarmonicForm({3.0, -4.0})) == 7.0);
  CHECK(norm_sup(HarmonicForm({3.0, -4.0})) == Approx(5.0));
}

TEST_CASE("line integrals of exact forms vanish on closed loops") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> step(-1, 1);
  const FourierField u = random_field(rng, 1, 3);
  for (int trial = 0; trial < 10; ++trial) {
    // Random lattice walk on a 16-grid that returns to its start, winding arbitrarily.
    std::vector<std::array<int, 2>> walk{{0, 0}};
    for (int s = 0; s < 40; ++s) walk.push_back({walk.back()[0] + step(rng), walk.back()[1] + step(rng)});
    const auto end = walk.back();
    while (walk.back()[0] % 16 != 0) walk.push_back({walk.back()[0] + (end[0] > 0 ? 1 : -1), walk.back()[1]});
    while (walk.back()[1] % 16 != 0) walk.push_back({walk.back()[0], walk.back()[1] + (end[1] > 0 ? 1 : -1)});
    PointSet c(2, walk.size());
    for (std::size_t i = 0; i < walk.size(); ++i) {
      c.at(0, i) = wrap_unit(walk[i][0] / 16.0);
      c.at(1, i) = wrap_unit(walk[i][1] / 16.0);
    }
    REQUIRE(is_closed_curve(c));
    CHECK(std::abs(line_integral(ClosedForm::from_exact(u), c, 32)) < 1e-8);
  }
  // A loop winding once along x picks up the dx coefficient.
  PointSet loop(2, 33);
  for (std::size_t i = 0; i < 33; ++i) loop.at(0, i) = wrap_unit(i / 32.0), loop.at(1, i) = 0.3;
  CHECK(line_integral(HarmonicForm({0.8, -0.2}), loop) == Approx(0.8));
}

TEST_CASE("Hermite node series reproduces cubics and Simpson weights integrate cubics") {
  std::vector<std::vector<double>> v;
  for (int j = 0; j < 9; ++j) {
    const double t = j / 8.0;
    v.push_back({t * t * t - t, 2.0});
  }
  NodeSeries s(v);
  std::vector<double> out(2);
  s.evaluate(0.37, out);
  CHECK(out[0] == Approx(0.37 * 0.37 * 0.37 - 0.37).epsilon(1e-13));
  s.derivative(0.61, out);
  CHECK(out[0] == Approx(3 * 0.61 * 0.61 - 1).epsilon(1e-12));

  for (std::size_t n : {5u, 6u, 33u}) {
    const auto w = simpson_weights(n, 2.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = 2.0 * i / double(n - 1);
      sum += w[i] * x * x * x;
    }
    CHECK(sum == Approx(4.0).epsilon(1e-13));
  }
  std::vector<double> f(65);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::cos(i / 64.0);
  const auto F = cumulative_simpson(f, 1.0 / 64.0);
  CHECK(F.back() == Approx(std::sin(1.0)).epsilon(1e-9));
  CHECK(F[33] == Approx(std::sin(33 / 64.0)).epsilon(1e-8));
}

TEST_CASE("monotone cubic stays monotone and inverts") {
  std::vector<double> x{0, 0.1, 0.2, 0.5, 1.0}, y{0, 0.0, 0.4, 0.45, 1.0};
  MonotoneCubic m(x, y);
  double prev = -1;
  for (int i = 0; i <= 200; ++i) {
    const double v = m.value(i / 200.0);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
  for (double t : {0.05, 0.33, 0.47, 0.9}) CHECK(m.value(m.inverse(t)) == Approx(t).epsilon(1e-12));
}

TEST_CASE("boundary-flat curve vanishes near the ends and covers [0,1]") {
  const ReparamCurve c = ReparamCurve::boundary_flat(0.05);
  CHECK(c.value(0.0) == 0.0);
  CHECK(c.value(1.0) == 1.0);
  for (double t : {0.0, 0.02, 0.05, 0.95, 0.99, 1.0}) CHECK(c.derivative(t) == 0.0);
  CHECK(c.monotone());
  // Continuity of value at the ramp joints and the derivative integrates to xi.
  CHECK(c.value(0.1 - 1e-12) == Approx(c.value(0.1 + 1e-12)));
  const auto w = simpson_weights(c.derivative_samples().size(), 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * c.derivative_samples()[i];
  CHECK(s == Approx(1.0).epsilon(1e-8));

  const ReparamCurve sq = ReparamCurve::from_function([](double t) { return t * t; },
                                                      [](double t) { return 2 * t; }, "square");
  const ReparamCurve comp = ReparamCurve::compose(sq, sq);
  CHECK(comp.value(0.5) == Approx(0.0625));
  CHECK(comp.derivative(0.5) == Approx(4 * 0.125));
}
