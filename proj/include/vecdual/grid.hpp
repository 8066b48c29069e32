#pragma once

#include "vecdual/common.hpp"

namespace vecdual {

// One axis of a rectangular lattice: points lo, lo+step, ..., lo+(count-1)*step.
struct Axis {
  double lo = 0.0;
  double step = 1.0;
  int count = 1;
  double at(int i) const { return lo + step * i; }
  double hi() const { return at(count - 1); }
};

// Axis-aligned rectangular probe lattice.
struct ProbeGrid {
  std::vector<Axis> axes;

  int dim() const { return static_cast<int>(axes.size()); }

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= static_cast<std::size_t>(a.count);
    return n;
  }

  Vec point(std::size_t idx) const {
    Vec p(axes.size());
    for (std::size_t d = axes.size(); d-- > 0;) {
      const auto& a = axes[d];
      p[d] = a.at(static_cast<int>(idx % static_cast<std::size_t>(a.count)));
      idx /= static_cast<std::size_t>(a.count);
    }
    return p;
  }
};

inline ProbeGrid make_grid(const Vec& lo, const Vec& hi, int per_axis) {
  require(lo.size() == hi.size() && !lo.empty(), "make_grid: bad bounds");
  require(per_axis >= 2, "make_grid: need at least 2 points per axis");
  ProbeGrid g;
  for (std::size_t d = 0; d < lo.size(); ++d) {
    require(hi[d] > lo[d], "make_grid: empty axis range");
    g.axes.push_back({lo[d], (hi[d] - lo[d]) / (per_axis - 1), per_axis});
  }
  return g;
}

// Default probe lattice: bounding box of the given points inflated by 2
// units on each side, 101 points per axis in R^2 and 41 in R^3 and above.
inline ProbeGrid default_probe_grid(const std::vector<Vec>& points,
                                    int per_axis = 0) {
  require(!points.empty(), "default_probe_grid: no points");
  std::size_t dim = points[0].size();
  Vec lo = points[0], hi = points[0];
  for (const auto& p : points) {
    require_dim(p, dim, "default_probe_grid point");
    for (std::size_t d = 0; d < dim; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }
  for (std::size_t d = 0; d < dim; ++d) {
    lo[d] -= 2.0;
    hi[d] += 2.0;
  }
  if (per_axis == 0) per_axis = dim <= 2 ? 101 : 41;
  return make_grid(lo, hi, per_axis);
}

// Axis-aligned rectangular window (used to clip curves/fronts for reports).
struct Window {
  Vec lo, hi;
  bool contains(const Vec& y, double slack = 0.0) const {
    for (std::size_t d = 0; d < lo.size(); ++d)
      if (y[d] < lo[d] - slack || y[d] > hi[d] + slack) return false;
    return true;
  }
};

}  // namespace vecdual
