#pragma once

#include "vecdual/common.hpp"

namespace vecdual {

enum class ConeRegion { Closed, Interior, Boundary };

// Proper polyhedral cone (closed, convex, pointed, full-dimensional) in
// dimension <= 4, carrying both a generator (extreme ray) description and a
// halfspace-normal description kept mutually consistent.
class PolyhedralCone {
 public:
  static PolyhedralCone from_generators(int dim, std::vector<Vec> gens);
  static PolyhedralCone from_normals(int dim, std::vector<Vec> normals);
  // Both descriptions given; validated against each other.
  static PolyhedralCone from_both(int dim, std::vector<Vec> gens,
                                  std::vector<Vec> normals);
  static PolyhedralCone orthant(int dim);

  int dim() const { return dim_; }
  // Canonical extreme rays, unit length, lexicographically sorted.
  const std::vector<Vec>& generators() const { return gens_; }
  // Canonical inward normals: K = {y : n.y >= 0 for all n}.
  const std::vector<Vec>& normals() const { return normals_; }
  // A cached strictly interior point (unit scale).
  const Vec& interior_point() const { return interior_; }

  bool contains(const Vec& y, ConeRegion r = ConeRegion::Closed) const;
  ConeRegion region(const Vec& y) const;  // requires contains(y, Closed)
  // Membership of y in -K / -int K (used constantly by the order predicates).
  bool neg_contains(const Vec& y, ConeRegion r = ConeRegion::Closed) const;

  PolyhedralCone negated() const;  // the cone -K
  // Dual cone K^+ = {n : n.g >= 0 for all g in K}; proper when K is.
  PolyhedralCone dual() const;

  bool same_cone(const PolyhedralCone& o, double tol = 1e-7) const;

 private:
  PolyhedralCone() = default;
  int dim_ = 0;
  std::vector<Vec> gens_;
  std::vector<Vec> normals_;
  Vec interior_;
};

// Extreme rays of {y in R^dim : n.y >= 0 for all n in halfspaces}.
// Exposed for testing; requires the result to be a pointed cone.
std::vector<Vec> extreme_rays(int dim, const std::vector<Vec>& halfspaces);

// The product cone A x B in dimension dim(A) + dim(B); proper when both
// factors are.
PolyhedralCone cone_product(const PolyhedralCone& a, const PolyhedralCone& b);

}  // namespace vecdual
