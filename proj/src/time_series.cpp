#include "symiso/time_series.hpp"

#include <algorithm>
#include <cmath>

#include "symiso/torus.hpp"

namespace symiso {

namespace {

struct Stencil {
  std::size_t start;
  double w[5];
};

// d/dt at node j from five neighbouring samples (units of 1/dt).
Stencil slope_stencil(std::size_t j, std::size_t T) {
  if (j >= 2 && j + 2 < T) return {j - 2, {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12}};
  if (j == 0) return {0, {-25.0 / 12, 48.0 / 12, -36.0 / 12, 16.0 / 12, -3.0 / 12}};
  if (j == 1) return {0, {-3.0 / 12, -10.0 / 12, 18.0 / 12, -6.0 / 12, 1.0 / 12}};
  if (j == T - 1) return {T - 5, {3.0 / 12, -16.0 / 12, 36.0 / 12, -48.0 / 12, 25.0 / 12}};
  return {T - 5, {-1.0 / 12, 6.0 / 12, -18.0 / 12, 10.0 / 12, 3.0 / 12}};  // j == T-2
}

struct Locate {
  std::size_t j;
  double u;
  double dt;
};

Locate locate(double t, std::size_t T) {
  const double dt = 1.0 / double(T - 1);
  t = std::clamp(t, 0.0, 1.0);
  std::size_t j = std::min<std::size_t>(std::size_t(t / dt), T - 2);
  return {j, (t - double(j) * dt) / dt, dt};
}

}  // namespace

NodeSeries::NodeSeries(std::vector<std::vector<double>> values) : values_(std::move(values)) {
  const std::size_t T = values_.size();
  if (T < 5) throw Error("NodeSeries: at least 5 time nodes are required");
  const std::size_t L = values_.front().size();
  for (const auto& v : values_)
    if (v.size() != L) throw Error("NodeSeries: node arrays differ in length");
  const double inv_dt = double(T - 1);
  slopes_.assign(T, std::vector<double>(L, 0.0));
  for (std::size_t j = 0; j < T; ++j) {
    const Stencil s = slope_stencil(j, T);
    for (int q = 0; q < 5; ++q) {
      if (s.w[q] == 0.0) continue;
      const auto& v = values_[s.start + std::size_t(q)];
      for (std::size_t i = 0; i < L; ++i) slopes_[j][i] += s.w[q] * inv_dt * v[i];
    }
  }
}

void NodeSeries::evaluate(double t, std::span<double> out) const {
  const Locate l = locate(t, nodes());
  const double u = l.u, u2 = u * u, u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1, h10 = (u3 - 2 * u2 + u) * l.dt;
  const double h01 = -2 * u3 + 3 * u2, h11 = (u3 - u2) * l.dt;
  const auto &a = values_[l.j], &b = values_[l.j + 1];
  const auto &ma = slopes_[l.j], &mb = slopes_[l.j + 1];
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = h00 * a[i] + h10 * ma[i] + h01 * b[i] + h11 * mb[i];
}

void NodeSeries::derivative(double t, std::span<double> out) const {
  const Locate l = locate(t, nodes());
  const double u = l.u, u2 = u * u;
  const double d00 = (6 * u2 - 6 * u) / l.dt, d10 = 3 * u2 - 4 * u + 1;
  const double d01 = (-6 * u2 + 6 * u) / l.dt, d11 = 3 * u2 - 2 * u;
  const auto &a = values_[l.j], &b = values_[l.j + 1];
  const auto &ma = slopes_[l.j], &mb = slopes_[l.j + 1];
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = d00 * a[i] + d10 * ma[i] + d01 * b[i] + d11 * mb[i];
}

std::vector<double> simpson_weights(std::size_t samples, double length) {
  if (samples < 2) throw Error("simpson_weights: need at least two samples");
  const std::size_t panels = samples - 1;
  const double h = length / double(panels);
  std::vector<double> w(samples, 0.0);
  if (panels == 1) {
    w[0] = w[1] = h / 2;
    return w;
  }
  std::size_t even = panels % 2 == 0 ? panels : panels - 3;
  for (std::size_t i = 0; i + 2 <= even; i += 2) {
    w[i] += h / 3;
    w[i + 1] += 4 * h / 3;
    w[i + 2] += h / 3;
  }
  if (even != panels) {
    const std::size_t s = even;
    w[s] += 3 * h / 8;
    w[s + 1] += 9 * h / 8;
    w[s + 2] += 9 * h / 8;
    w[s + 3] += 3 * h / 8;
  }
  return w;
}

std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> c(n, 0.0);
  if (n < 3) {
    for (std::size_t i = 1; i < n; ++i) c[i] = c[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return c;
  }
  for (std::size_t i = 1; i < n; ++i) {
    // Quadratic through three neighbouring samples integrated over one panel.
    double panel;
    if (i + 1 < n)
      panel = h * (5 * f[i - 1] + 8 * f[i] - f[i + 1]) / 12;
    else
      panel = h * (-f[i - 2] + 8 * f[i - 1] + 5 * f[i]) / 12;
    if (i % 2 == 0) {
      // Even samples take the exact composite Simpson value.
      c[i] = c[i - 2] + h * (f[i - 2] + 4 * f[i - 1] + f[i]) / 3;
    } else {
      c[i] = c[i - 1] + panel;
    }
  }
  return c;
}

}  // namespace symiso
