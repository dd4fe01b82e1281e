#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace symiso {

/// Raised for violated preconditions and failed numerical certificates.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat torus T^{2n} = R^{2n}/Z^{2n} with omega = sum dx_i ^ dy_i and unit volume.
/// Coordinates are ordered (x_1..x_n, y_1..y_n).
struct TorusSpec {
  int n = 1;
  int grid_res = 64;  // points per axis of the spatial quadrature grid
  int time_res = 33;  // uniform time nodes on [0,1]

  static constexpr double injectivity_radius = 0.5;

  int dim() const { return 2 * n; }
  double diameter() const { return std::sqrt(2.0 * n) / 2.0; }
  std::size_t grid_size() const;
  double node_time(std::size_t j) const { return double(j) / double(time_res - 1); }
  void validate() const;
};

/// Wraps a coordinate into [0,1).
inline double wrap_unit(double v) {
  double w = v - std::floor(v);
  return w >= 1.0 ? 0.0 : w;
}

/// Shortest signed representative of a coordinate difference, in [-1/2, 1/2].
inline double wrap_delta(double d) { return d - std::nearbyint(d); }

/// A point of the torus, stored as its representative in [0,1)^{2n}.
struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c);
  int dim() const { return int(coords.size()); }
  double operator[](std::size_t i) const { return coords[i]; }
};

double torus_distance(const Point& p, const Point& q);
double torus_distance(std::span<const double> p, std::span<const double> q);

/// Structure-of-arrays point cloud. Coordinates are not wrapped: flows keep
/// lifted positions in R^{2n} so displacements carry their homotopy class.
class PointSet {
 public:
  PointSet() = default;
  PointSet(int dim, std::size_t count);

  int dim() const { return dim_; }
  std::size_t size() const { return count_; }

  double& at(int axis, std::size_t i) { return data_[std::size_t(axis) * count_ + i]; }
  double at(int axis, std::size_t i) const { return data_[std::size_t(axis) * count_ + i]; }
  std::span<double> axis(int a) { return {data_.data() + std::size_t(a) * count_, count_}; }
  std::span<const double> axis(int a) const {
    return {data_.data() + std::size_t(a) * count_, count_};
  }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  std::vector<double> lifted(std::size_t i) const;
  Point point(std::size_t i) const;
  void set(std::size_t i, std::span<const double> coords);

  PointSet wrapped() const;
  static PointSet from_points(const std::vector<Point>& pts);

 private:
  int dim_ = 0;
  std::size_t count_ = 0;
  std::vector<double> data_;
};

/// Uniform grid i/res per axis, flattened row-major with axis 0 slowest.
PointSet grid_points(int dim, int res);

}  // namespace symiso
