#include "vecdual/cone.hpp"

#include "vecdual/linalg.hpp"

namespace vecdual {

namespace {

Vec snap_unit(Vec v) {
  double n = norm2(v);
  require(n > 1e-12, "cone ray: zero vector");
  for (double& x : v) {
    x /= n;
    if (std::abs(x) < 1e-12) x = 0.0;
  }
  // Renormalize after snapping so equal directions compare byte-identically.
  double n2 = norm2(v);
  for (double& x : v) x /= n2;
  return v;
}

bool satisfies_all(const Vec& d, const std::vector<Vec>& halfspaces, double tol) {
  for (const auto& h : halfspaces)
    if (dot(h, d) < -tol) return false;
  return true;
}

}  // namespace

std::vector<Vec> extreme_rays(int dim, const std::vector<Vec>& halfspaces) {
  require(dim >= 1 && dim <= 4, "extreme_rays: dimension must be in [1,4]");
  require(!halfspaces.empty(), "extreme_rays: need at least one halfspace");
  for (const auto& h : halfspaces) require_dim(h, dim, "halfspace");

  std::vector<Vec> rays;
  const double tol = 1e-9;
  const int k = dim - 1;
  // Enumerate all k-subsets of halfspaces; a subset of rank k pins a line,
  // whose feasible direction (if any) is an extreme ray candidate.
  std::vector<std::vector<int>> subsets;
  {
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start, int depth) -> void {
      if (depth == k) {
        subsets.push_back(cur);
        return;
      }
      for (int i = start; i < static_cast<int>(halfspaces.size()); ++i) {
        cur.push_back(i);
        self(self, i + 1, depth + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0, 0);
  }

  for (const auto& s : subsets) {
    if (k == 0) {
      Vec e(dim, 0.0);
      e[0] = 1.0;
      for (const Vec& d : {e, neg(e)})
        if (satisfies_all(d, halfspaces, tol)) rays.push_back(snap_unit(d));
      continue;
    }
    std::vector<Vec> rows;
    rows.reserve(s.size());
    for (int i : s) rows.push_back(halfspaces[i]);
    if (matrix_rank(rows) != k) continue;
    auto ns = nullspace(rows);
    if (ns.size() != 1) continue;
    for (const Vec& d : {ns[0], neg(ns[0])})
      if (satisfies_all(d, halfspaces, tol)) rays.push_back(snap_unit(d));
  }
  sort_dedup(rays, 1e-7);
  return rays;
}

namespace {

bool in_cone_by_normals(const std::vector<Vec>& normals, const Vec& g) {
  double s = std::max(1.0, norm_inf(g));
  for (const auto& n : normals)
    if (dot(n, g) < -1e-8 * s) return false;
  return true;
}

}  // namespace

PolyhedralCone PolyhedralCone::from_generators(int dim, std::vector<Vec> gens) {
  require(dim >= 1 && dim <= 4, "cone: dimension must be in [1,4]");
  require(!gens.empty(), "cone: need at least one generator");
  for (const auto& g : gens) require_dim(g, dim, "cone generator");
  require(matrix_rank(gens) == dim,
          "cone: generators must span (full-dimensional cone required)");

  // Dual description: extreme rays of {n : n.g >= 0} are the facet normals.
  std::vector<Vec> normals = extreme_rays(dim, gens);
  require(matrix_rank(normals) == dim,
          "cone: not pointed (normals fail to span)");
  // Canonical minimal generators: extreme rays of the normal description.
  std::vector<Vec> canon = extreme_rays(dim, normals);
  require(!canon.empty(), "cone: no extreme rays (degenerate)");

  PolyhedralCone c;
  c.dim_ = dim;
  c.gens_ = std::move(canon);
  c.normals_ = std::move(normals);

  // Every original generator must still lie in the canonical cone.
  for (const auto& g : gens)
    require(in_cone_by_normals(c.normals_, g),
            "cone: canonicalization lost a generator (inconsistent input)");

  Vec k0(dim, 0.0);
  for (const auto& g : c.gens_) k0 = vecdual::add(k0, g);
  k0 = scale(1.0 / static_cast<double>(c.gens_.size()), k0);
  for (const auto& n : c.normals_)
    require(dot(n, k0) > 1e-9, "cone: empty interior (not full-dimensional)");
  c.interior_ = std::move(k0);
  return c;
}

PolyhedralCone PolyhedralCone::from_normals(int dim, std::vector<Vec> normals) {
  require(dim >= 1 && dim <= 4, "cone: dimension must be in [1,4]");
  require(!normals.empty(), "cone: need at least one normal");
  for (const auto& n : normals) require_dim(n, dim, "cone normal");
  std::vector<Vec> gens = extreme_rays(dim, normals);
  require(!gens.empty() && matrix_rank(gens) == dim,
          "cone: normal description is not a proper cone");
  PolyhedralCone c = from_generators(dim, gens);
  for (const auto& g : c.gens_)
    for (const auto& n : normals)
      require(dot(n, g) >= -1e-7, "cone: inconsistent normal description");
  return c;
}

PolyhedralCone PolyhedralCone::from_both(int dim, std::vector<Vec> gens,
                                         std::vector<Vec> normals) {
  PolyhedralCone a = from_generators(dim, std::move(gens));
  PolyhedralCone b = from_normals(dim, std::move(normals));
  require(a.same_cone(b), "cone: generator and normal descriptions disagree");
  return a;
}

PolyhedralCone PolyhedralCone::orthant(int dim) {
  std::vector<Vec> gens;
  for (int i = 0; i < dim; ++i) {
    Vec e(dim, 0.0);
    e[i] = 1.0;
    gens.push_back(std::move(e));
  }
  return from_generators(dim, std::move(gens));
}

bool PolyhedralCone::contains(const Vec& y, ConeRegion r) const {
  require_dim(y, static_cast<std::size_t>(dim_), "cone membership point");
  double sy = std::max(1.0, norm_inf(y));
  switch (r) {
    case ConeRegion::Closed:
      for (const auto& n : normals_)
        if (dot(n, y) < -tol_strict * sy) return false;
      return true;
    case ConeRegion::Interior:
      for (const auto& n : normals_)
        if (dot(n, y) <= tol_strict * sy) return false;
      return true;
    case ConeRegion::Boundary:
      return contains(y, ConeRegion::Closed) &&
             !contains(y, ConeRegion::Interior);
  }
  return false;
}

ConeRegion PolyhedralCone::region(const Vec& y) const {
  require(contains(y, ConeRegion::Closed), "region: point not in cone");
  return contains(y, ConeRegion::Interior) ? ConeRegion::Interior
                                           : ConeRegion::Boundary;
}

bool PolyhedralCone::neg_contains(const Vec& y, ConeRegion r) const {
  return contains(neg(y), r);
}

PolyhedralCone PolyhedralCone::negated() const {
  PolyhedralCone c;
  c.dim_ = dim_;
  c.gens_ = gens_;
  for (auto& g : c.gens_) g = neg(g);
  c.normals_ = normals_;
  for (auto& n : c.normals_) n = neg(n);
  sort_dedup(c.gens_, 1e-7);
  sort_dedup(c.normals_, 1e-7);
  c.interior_ = neg(interior_);
  return c;
}

PolyhedralCone PolyhedralCone::dual() const {
  return from_generators(dim_, normals_);
}

bool PolyhedralCone::same_cone(const PolyhedralCone& o, double tol) const {
  if (dim_ != o.dim_) return false;
  if (gens_.size() != o.gens_.size()) return false;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (!approx_eq(gens_[i], o.gens_[i], tol)) return false;
  return true;
}

PolyhedralCone cone_product(const PolyhedralCone& a, const PolyhedralCone& b) {
  const int dim = a.dim() + b.dim();
  require(dim <= 4, "cone_product: product dimension must stay within [1,4]");
  auto embed = [dim](const std::vector<Vec>& vs, int offset) {
    std::vector<Vec> out;
    out.reserve(vs.size());
    for (const auto& v : vs) {
      Vec e(static_cast<std::size_t>(dim), 0.0);
      for (std::size_t i = 0; i < v.size(); ++i)
        e[static_cast<std::size_t>(offset) + i] = v[i];
      out.push_back(std::move(e));
    }
    return out;
  };
  std::vector<Vec> gens = embed(a.generators(), 0);
  for (auto& g : embed(b.generators(), a.dim())) gens.push_back(std::move(g));
  std::vector<Vec> normals = embed(a.normals(), 0);
  for (auto& n : embed(b.normals(), a.dim())) normals.push_back(std::move(n));
  return PolyhedralCone::from_both(dim, std::move(gens), std::move(normals));
}

}  // namespace vecdual
