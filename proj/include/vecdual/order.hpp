#pragma once

#include "vecdual/cone.hpp"
#include "vecdual/extended.hpp"

namespace vecdual {

// Weak strict order: y1 < y2 iff y1 - y2 lies in -int K.
bool less_weak(const Vec& y1, const Vec& y2, const PolyhedralCone& K);
// Closed order: y1 <= y2 iff y2 - y1 lies in K.
bool leq_cone(const Vec& y1, const Vec& y2, const PolyhedralCone& K);

// Extended-point conventions: -inf < y < +inf for every finite y,
// -inf < +inf, neither infinity is below itself; <= is reflexive and
// -inf <= y <= +inf for every extended y.
bool less_weak(const ExtendedPoint& y1, const ExtendedPoint& y2,
               const PolyhedralCone& K);
bool leq_cone(const ExtendedPoint& y1, const ExtendedPoint& y2,
              const PolyhedralCone& K);

// Smallest power-of-two t such that y < t*k0 in the weak order, where k0 is
// the cone's cached interior point. Throws if no t up to 2^1075 works.
double find_scaling(const Vec& y, const PolyhedralCone& K);

// A pair (lower, upper) with lower < p < upper (weak order) for every input
// point. Requires a nonempty point list.
std::pair<Vec, Vec> bound_finite(const std::vector<Vec>& points,
                                 const PolyhedralCone& K);

}  // namespace vecdual
