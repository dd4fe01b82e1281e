#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace symiso {

/// Uniform nodes t_j = j/(T-1) on [0,1] carrying flat real arrays, with C^1
/// cubic Hermite interpolation. Node slopes come from fourth-order finite
/// differences (five-point stencils, one-sided at the ends).
class NodeSeries {
 public:
  NodeSeries() = default;
  explicit NodeSeries(std::vector<std::vector<double>> values);

  std::size_t nodes() const { return values_.size(); }
  std::size_t width() const { return values_.empty() ? 0 : values_.front().size(); }
  double node_time(std::size_t j) const { return double(j) / double(nodes() - 1); }
  const std::vector<double>& node(std::size_t j) const { return values_[j]; }
  const std::vector<double>& slope(std::size_t j) const { return slopes_[j]; }

  void evaluate(double t, std::span<double> out) const;
  void derivative(double t, std::span<double> out) const;

 private:
  std::vector<std::vector<double>> values_;
  std::vector<std::vector<double>> slopes_;
};

/// Composite Simpson weights for n+1 equally spaced samples over an interval of
/// total length `length`. An odd number of panels closes with a 3/8 rule.
std::vector<double> simpson_weights(std::size_t samples, double length);

/// Cumulative integrals at every sample, fourth-order accurate.
std::vector<double> cumulative_simpson(std::span<const double> f, double h);

}  // namespace symiso
