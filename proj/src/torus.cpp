#include "symiso/torus.hpp"

#include <algorithm>

namespace symiso {

std::size_t TorusSpec::grid_size() const {
  std::size_t s = 1;
  for (int a = 0; a < dim(); ++a) s *= std::size_t(grid_res);
  return s;
}

void TorusSpec::validate() const {
  if (n < 1) throw Error("torus: n must be >= 1");
  if (grid_res < 16) throw Error("torus: grid_res must be >= 16");
  if (time_res < 8) throw Error("torus: time_res must be >= 8");
}

Point::Point(std::vector<double> c) : coords(std::move(c)) {
  for (double& v : coords) v = wrap_unit(v);
}

double torus_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error("torus_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double d = wrap_delta(q[i] - p[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

double torus_distance(const Point& p, const Point& q) {
  return torus_distance(std::span<const double>(p.coords), std::span<const double>(q.coords));
}

PointSet::PointSet(int dim, std::size_t count)
    : dim_(dim), count_(count), data_(std::size_t(dim) * count, 0.0) {}

std::vector<double> PointSet::lifted(std::size_t i) const {
  std::vector<double> c(static_cast<std::size_t>(dim_));
  for (int a = 0; a < dim_; ++a) c[std::size_t(a)] = at(a, i);
  return c;
}

Point PointSet::point(std::size_t i) const { return Point(lifted(i)); }

void PointSet::set(std::size_t i, std::span<const double> coords) {
  for (int a = 0; a < dim_; ++a) at(a, i) = coords[std::size_t(a)];
}

PointSet PointSet::wrapped() const {
  PointSet out = *this;
  for (double& v : out.data_) v = wrap_unit(v);
  return out;
}

PointSet PointSet::from_points(const std::vector<Point>& pts) {
  if (pts.empty()) return {};
  PointSet out(pts.front().dim(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].dim() != out.dim()) throw Error("PointSet: mixed dimensions");
    out.set(i, pts[i].coords);
  }
  return out;
}

PointSet grid_points(int dim, int res) {
  std::size_t count = 1;
  for (int a = 0; a < dim; ++a) count *= std::size_t(res);
  PointSet g(dim, count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t rem = i;
    for (int a = dim - 1; a >= 0; --a) {
      g.at(a, i) = double(rem % std::size_t(res)) / double(res);
      rem /= std::size_t(res);
    }
  }
  return g;
}

}  // namespace symiso
