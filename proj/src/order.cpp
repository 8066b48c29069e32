#include "vecdual/order.hpp"

namespace vecdual {

bool less_weak(const Vec& y1, const Vec& y2, const PolyhedralCone& K) {
  return K.contains(sub(y2, y1), ConeRegion::Interior);
}

bool leq_cone(const Vec& y1, const Vec& y2, const PolyhedralCone& K) {
  return K.contains(sub(y2, y1), ConeRegion::Closed);
}

bool less_weak(const ExtendedPoint& y1, const ExtendedPoint& y2,
               const PolyhedralCone& K) {
  if (y1.is_minus_inf()) return !y2.is_minus_inf();
  if (y2.is_plus_inf()) return !y1.is_plus_inf();
  if (!y1.is_finite() || !y2.is_finite()) return false;
  return less_weak(y1.value(), y2.value(), K);
}

bool leq_cone(const ExtendedPoint& y1, const ExtendedPoint& y2,
              const PolyhedralCone& K) {
  if (y1.is_minus_inf() || y2.is_plus_inf()) return true;
  if (y1.is_plus_inf()) return y2.is_plus_inf();
  if (y2.is_minus_inf()) return y1.is_minus_inf();
  return leq_cone(y1.value(), y2.value(), K);
}

double find_scaling(const Vec& y, const PolyhedralCone& K) {
  const Vec& k0 = K.interior_point();
  double t = 1.0;
  for (int i = 0; i < 1100; ++i) {
    if (less_weak(y, scale(t, k0), K)) return t;
    t *= 2.0;
  }
  throw std::runtime_error("find_scaling: no bound found (interior point degenerate?)");
}

std::pair<Vec, Vec> bound_finite(const std::vector<Vec>& points,
                                 const PolyhedralCone& K) {
  require(!points.empty(), "bound_finite: empty point list");
  const Vec& k0 = K.interior_point();
  Vec center(points[0].size(), 0.0);
  for (const auto& p : points) center = add(center, p);
  center = scale(1.0 / static_cast<double>(points.size()), center);

  double t = 1.0;
  for (int i = 0; i < 1100; ++i) {
    Vec up = add(center, scale(t, k0));
    Vec lo = sub(center, scale(t, k0));
    bool ok = true;
    for (const auto& p : points)
      if (!less_weak(p, up, K) || !less_weak(lo, p, K)) {
        ok = false;
        break;
      }
    if (ok) return {lo, up};
    t *= 2.0;
  }
  throw std::runtime_error("bound_finite: no bound found");
}

}  // namespace vecdual
