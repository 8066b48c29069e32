#include "vecdual/front.hpp"

#include <cmath>
#include <limits>

#include "vecdual/kernels.hpp"
#include "vecdual/order.hpp"

namespace vecdual {

namespace {

ExecPolicy auto_policy(std::size_t n) {
  return n >= 2048 ? ExecPolicy::Parallel : ExecPolicy::Serial;
}

}  // namespace

std::vector<Vec> prune_sup(std::vector<Vec> points, const PolyhedralCone& K) {
  auto mask = sup_undominated_mask(points, K, auto_policy(points.size()));
  std::vector<Vec> kept;
  kept.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    if (mask[i]) kept.push_back(std::move(points[i]));
  sort_dedup(kept);
  return kept;
}

std::vector<Vec> prune_inf(std::vector<Vec> points, const PolyhedralCone& K) {
  for (auto& p : points) p = neg(p);
  auto kept = prune_sup(std::move(points), K);
  for (auto& p : kept) p = neg(p);
  sort_dedup(kept);
  return kept;
}

FrontSet wsup(const std::vector<Vec>& M, const PolyhedralCone& K) {
  require(!M.empty(), "wsup: empty input");
  return FrontSet(FrontSet::Kind::Sup, K, prune_sup(M, K));
}

FrontSet winf(const std::vector<Vec>& M, const PolyhedralCone& K) {
  require(!M.empty(), "winf: empty input");
  return FrontSet(FrontSet::Kind::Inf, K, prune_inf(M, K));
}

FrontSet wsup(const std::vector<ExtendedPoint>& M, const PolyhedralCone& K) {
  require(!M.empty(), "wsup: empty input");
  std::vector<Vec> finite;
  for (const auto& p : M) {
    if (p.is_plus_inf())
      return FrontSet(FrontSet::Kind::PlusInfinity, K, {});
    if (p.is_finite()) finite.push_back(p.value());
  }
  if (finite.empty()) return FrontSet(FrontSet::Kind::MinusInfinity, K, {});
  return wsup(finite, K);
}

FrontSet winf(const std::vector<ExtendedPoint>& M, const PolyhedralCone& K) {
  require(!M.empty(), "winf: empty input");
  std::vector<ExtendedPoint> negated;
  negated.reserve(M.size());
  for (const auto& p : M) negated.push_back(-p);
  return negate_front(wsup(negated, K));
}

std::vector<Vec> wmin(const std::vector<Vec>& M, const PolyhedralCone& K) {
  require(!M.empty(), "wmin: empty input");
  return prune_inf(M, K);
}

std::vector<Vec> wmax(const std::vector<Vec>& M, const PolyhedralCone& K) {
  require(!M.empty(), "wmax: empty input");
  return prune_sup(M, K);
}

FrontSet neg_bd_cone(const PolyhedralCone& K) {
  return FrontSet(FrontSet::Kind::Sup, K,
                  {Vec(static_cast<std::size_t>(K.dim()), 0.0)});
}

FrontSet negate_front(const FrontSet& f) {
  switch (f.kind()) {
    case FrontSet::Kind::PlusInfinity:
      return FrontSet(FrontSet::Kind::MinusInfinity, f.cone(), {});
    case FrontSet::Kind::MinusInfinity:
      return FrontSet(FrontSet::Kind::PlusInfinity, f.cone(), {});
    default: {
      std::vector<Vec> gens = f.generators();
      for (auto& g : gens) g = neg(g);
      sort_dedup(gens);
      return FrontSet(f.kind() == FrontSet::Kind::Sup ? FrontSet::Kind::Inf
                                                      : FrontSet::Kind::Sup,
                      f.cone(), std::move(gens));
    }
  }
}

bool front_contains(const FrontSet& f, const Vec& y) {
  if (!f.proper()) return false;
  const auto& K = f.cone();
  bool closed_hit = false;
  if (f.kind() == FrontSet::Kind::Sup) {
    for (const auto& g : f.generators()) {
      Vec d = sub(g, y);
      if (K.contains(d, ConeRegion::Interior)) return false;
      if (K.contains(d, ConeRegion::Closed)) closed_hit = true;
    }
  } else {
    for (const auto& g : f.generators()) {
      Vec d = sub(y, g);
      if (K.contains(d, ConeRegion::Interior)) return false;
      if (K.contains(d, ConeRegion::Closed)) closed_hit = true;
    }
  }
  return closed_hit;
}

Label classify(const FrontSet& f, const Vec& y) {
  require(f.proper(), "classify: improper front kind");
  const auto& K = f.cone();
  if (f.kind() == FrontSet::Kind::Sup) {
    bool closed_hit = false;
    for (const auto& g : f.generators()) {
      Vec d = sub(g, y);
      if (K.contains(d, ConeRegion::Interior)) return Label::Below;
      if (K.contains(d, ConeRegion::Closed)) closed_hit = true;
    }
    return closed_hit ? Label::On : Label::Above;
  }
  bool closed_hit = false;
  for (const auto& g : f.generators()) {
    Vec d = sub(y, g);
    if (K.contains(d, ConeRegion::Interior)) return Label::Above;
    if (K.contains(d, ConeRegion::Closed)) closed_hit = true;
  }
  return closed_hit ? Label::On : Label::Below;
}

double front_gap(const FrontSet& f, const Vec& y) {
  if (f.kind() == FrontSet::Kind::PlusInfinity)
    return -std::numeric_limits<double>::infinity();
  if (f.kind() == FrontSet::Kind::MinusInfinity)
    return std::numeric_limits<double>::infinity();
  const auto& normals = f.cone().normals();
  if (f.kind() == FrontSet::Kind::Sup) {
    // min over generators of max over normals of n.(y-g).
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : f.generators()) {
      Vec d = sub(y, g);
      double worst = -std::numeric_limits<double>::infinity();
      for (const auto& n : normals) worst = std::max(worst, dot(n, d));
      best = std::min(best, worst);
    }
    return best;
  }
  // Inf front: max over generators of min over normals of n.(y-g).
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& g : f.generators()) {
    Vec d = sub(y, g);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& n : normals) worst = std::min(worst, dot(n, d));
    best = std::max(best, worst);
  }
  return best;
}

Label classify_tol(const FrontSet& f, const Vec& y, double eps) {
  double g = front_gap(f, y);
  if (g < -eps) return Label::Below;
  if (g > eps) return Label::Above;
  return Label::On;
}

RegionFlags partition_labels(const FrontSet& f, const Vec& y) {
  require(f.proper(), "partition_labels: improper front kind");
  const auto& K = f.cone();
  RegionFlags r;
  // Route 1: direct strict generator domination.
  if (f.kind() == FrontSet::Kind::Sup) {
    for (const auto& g : f.generators())
      if (K.contains(sub(g, y), ConeRegion::Interior)) {
        r.below = true;
        break;
      }
  } else {
    r.below = true;
    for (const auto& g : f.generators())
      if (K.contains(sub(y, g), ConeRegion::Closed)) {
        r.below = false;
        break;
      }
  }
  // Route 2: the exact membership formula.
  r.on = front_contains(f, y);
  // Route 3: sign of the arithmetic gap.
  double scale_y = std::max(1.0, norm_inf(y));
  r.above = front_gap(f, y) > tol_strict * scale_y;
  return r;
}

bool is_partition_style(const FrontSet& f, const ProbeGrid& grid) {
  return partition_scan(f, grid, auto_policy(grid.size()));
}

RegionFlags partition_labels(const LowerClosedSet& s, const Vec& y) {
  RegionFlags r;
  for (const auto& g : s.gens) {
    if (s.cone.contains(sub(g, y), ConeRegion::Interior)) r.below = true;
    if (s.cone.contains(sub(g, y), ConeRegion::Closed)) r.on = true;
  }
  // "Above" region of the set A = M-K is A + int K. Since int K - K fills
  // the whole space, a witness k in K with y - m + k interior always exists;
  // construct it from the scaling bound rather than assuming it.
  if (!s.gens.empty()) {
    Vec d = sub(y, s.gens[0]);
    double t = find_scaling(d, s.cone);
    Vec k = sub(scale(t, s.cone.interior_point()), d);
    r.above = s.cone.contains(k, ConeRegion::Closed) &&
              s.cone.contains(add(d, k), ConeRegion::Interior);
  }
  return r;
}

bool is_partition_style(const LowerClosedSet& s, const ProbeGrid& grid) {
  return partition_scan(s, grid, auto_policy(grid.size()));
}

namespace {

// Is y in (A - int K) for the set descriptor A?
bool in_strict_lower(const SetArg& A, const Vec& y, const PolyhedralCone& K) {
  if (A.front) {
    const FrontSet& f = *A.front;
    require(f.proper(), "precedes: improper front operand");
    if (f.kind() == FrontSet::Kind::Sup) {
      for (const auto& g : f.generators())
        if (K.contains(sub(g, y), ConeRegion::Interior)) return true;
      return false;
    }
    // Inf front U: U - int K is the complement of (gens + K).
    for (const auto& g : f.generators())
      if (K.contains(sub(y, g), ConeRegion::Closed)) return false;
    return true;
  }
  for (const auto& m : A.points)
    if (K.contains(sub(m, y), ConeRegion::Interior)) return true;
  return false;
}

std::vector<Vec> set_probes(const SetArg& B, const PolyhedralCone& K,
                            double edge_eps) {
  if (!B.front) {
    require(!B.points.empty(), "precedes: empty point operand");
    return B.points;
  }
  require(B.front->proper(), "precedes: improper front operand");
  double walk = K.dim() == 2 ? edge_eps : 0.0;
  return front_probes(*B.front, edge_eps, walk);
}

}  // namespace

bool precedes(const SetArg& A, const SetArg& B, const PolyhedralCone& K,
              double edge_eps) {
  for (const auto& p : set_probes(B, K, edge_eps))
    if (in_strict_lower(A, p, K)) return false;
  return true;
}

std::vector<Vec> front_probes(const FrontSet& f, double eps, double walk_step) {
  require(f.proper(), "front_probes: improper front kind");
  std::vector<Vec> probes = f.generators();
  double dir = f.kind() == FrontSet::Kind::Sup ? -1.0 : 1.0;
  for (const auto& g : f.generators()) {
    for (const auto& d : f.cone().generators()) {
      Vec cand = add(g, scale(dir * eps, d));
      if (classify(f, cand) == Label::On) probes.push_back(std::move(cand));
    }
  }
  if (walk_step > 0.0 && f.cone().dim() == 2) {
    Vec lo = f.generators()[0], hi = f.generators()[0];
    for (const auto& g : f.generators())
      for (int d = 0; d < 2; ++d) {
        lo[d] = std::min(lo[d], g[d]);
        hi[d] = std::max(hi[d], g[d]);
      }
    for (int d = 0; d < 2; ++d) {
      lo[d] -= 2.0;
      hi[d] += 2.0;
    }
    auto walked = walk_front_r2(f, Window{lo, hi}, walk_step);
    probes.insert(probes.end(), walked.begin(), walked.end());
  }
  sort_dedup(probes);
  return probes;
}

FrontSet ws_sum(const FrontSet& U, const FrontSet& V) {
  bool up = U.kind() == FrontSet::Kind::PlusInfinity;
  bool vp = V.kind() == FrontSet::Kind::PlusInfinity;
  bool um = U.kind() == FrontSet::Kind::MinusInfinity;
  bool vm = V.kind() == FrontSet::Kind::MinusInfinity;
  if ((up && vm) || (um && vp))
    throw std::domain_error("ws_sum: mixed infinite operands");
  if (up || vp) return FrontSet(FrontSet::Kind::PlusInfinity, U.cone(), {});
  if (um || vm) return FrontSet(FrontSet::Kind::MinusInfinity, U.cone(), {});
  require(U.kind() == FrontSet::Kind::Sup && V.kind() == FrontSet::Kind::Sup,
          "ws_sum: operands must be Sup fronts");
  require(U.cone().same_cone(V.cone()), "ws_sum: cone mismatch");
  std::vector<Vec> sums;
  sums.reserve(U.generators().size() * V.generators().size());
  for (const auto& u : U.generators())
    for (const auto& v : V.generators()) sums.push_back(add(u, v));
  return wsup(sums, U.cone());
}

std::vector<ExtEpiElement> boxplus(const std::vector<ExtEpiElement>& A,
                                   const std::vector<ExtEpiElement>& B) {
  std::vector<ExtEpiElement> out;
  out.reserve(A.size() * B.size());
  for (const auto& a : A)
    for (const auto& b : B) {
      require(a.op.rows == b.op.rows && a.op.cols == b.op.cols,
              "boxplus: operator shape mismatch");
      out.push_back({a.op + b.op, ws_sum(a.front, b.front)});
    }
  // Deduplicate identical (operator, front) pairs, deterministically ordered.
  std::sort(out.begin(), out.end(),
            [](const ExtEpiElement& x, const ExtEpiElement& y) {
              if (x.op.lex_less(y.op)) return true;
              if (y.op.lex_less(x.op)) return false;
              return std::lexicographical_compare(
                  x.front.generators().begin(), x.front.generators().end(),
                  y.front.generators().begin(), y.front.generators().end(),
                  [](const Vec& a, const Vec& b) { return lex_less(a, b); });
            });
  std::vector<ExtEpiElement> dedup;
  for (auto& e : out) {
    bool same = false;
    if (!dedup.empty()) {
      const auto& p = dedup.back();
      same = p.op.approx_equal(e.op) && p.front.kind() == e.front.kind() &&
             p.front.generators().size() == e.front.generators().size();
      if (same)
        for (std::size_t i = 0; i < p.front.generators().size(); ++i)
          if (!approx_eq(p.front.generators()[i], e.front.generators()[i])) {
            same = false;
            break;
          }
    }
    if (!same) dedup.push_back(std::move(e));
  }
  return dedup;
}

bool PsiMap::contains(const LinOp& L, const Vec& y) const {
  for (const auto& e : elems_) {
    if (!e.op.approx_equal(L)) continue;
    if (e.front.kind() == FrontSet::Kind::PlusInfinity) continue;
    if (e.front.kind() == FrontSet::Kind::MinusInfinity) return true;
    Label lab = classify(e.front, y);
    if (lab == Label::On || lab == Label::Above) return true;
  }
  return false;
}

bool fronts_probe_equal(const FrontSet& A, const FrontSet& B, double eps,
                        double edge_eps) {
  if (!A.proper() || !B.proper()) return A.kind() == B.kind();
  if (A.kind() != B.kind()) return false;
  if (!A.cone().same_cone(B.cone())) return false;
  for (const auto& p : front_probes(A, edge_eps))
    if (std::abs(front_gap(B, p)) > eps) return false;
  for (const auto& p : front_probes(B, edge_eps))
    if (std::abs(front_gap(A, p)) > eps) return false;
  return true;
}

std::vector<Vec> walk_front_r2(const FrontSet& f, const Window& window,
                               double step) {
  require(f.proper(), "walk_front_r2: improper front kind");
  require(f.cone().dim() == 2, "walk_front_r2: needs an R^2 front");
  require(step > 0.0, "walk_front_r2: step must be positive");
  const auto& normals = f.cone().normals();
  require(normals.size() == 2, "walk_front_r2: R^2 cone must have 2 normals");
  const Vec& n1 = normals[0];
  const Vec& n2 = normals[1];
  double det = n1[0] * n2[1] - n1[1] * n2[0];
  require(std::abs(det) > 1e-12, "walk_front_r2: degenerate normals");

  auto fwd = [&](const Vec& y) -> std::pair<double, double> {
    return {dot(n1, y), dot(n2, y)};
  };
  auto inv = [&](double u, double v) -> Vec {
    return {(n2[1] * u - n1[1] * v) / det, (-n2[0] * u + n1[0] * v) / det};
  };

  // Transformed generators, sorted by u ascending (v then descends since the
  // generators form an antichain). Weakly dominated generators sharing a u
  // coordinate do not change the denoted set; compress them.
  std::vector<std::pair<double, double>> g;
  for (const auto& p : f.generators()) g.push_back(fwd(p));
  std::sort(g.begin(), g.end());
  {
    std::vector<std::pair<double, double>> compressed;
    for (const auto& uv : g) {
      if (!compressed.empty() && approx_eq(compressed.back().first, uv.first)) {
        if (f.kind() == FrontSet::Kind::Sup)
          compressed.back().second = std::max(compressed.back().second, uv.second);
        else
          compressed.back().second = std::min(compressed.back().second, uv.second);
      } else {
        compressed.push_back(uv);
      }
    }
    g = std::move(compressed);
  }

  // Clip box in (u,v) coordinates, generously inflated.
  double ulo = std::numeric_limits<double>::infinity(), uhi = -ulo;
  double vlo = ulo, vhi = -ulo;
  for (double cx : {window.lo[0], window.hi[0]})
    for (double cy : {window.lo[1], window.hi[1]}) {
      auto [u, v] = fwd({cx, cy});
      ulo = std::min(ulo, u);
      uhi = std::max(uhi, u);
      vlo = std::min(vlo, v);
      vhi = std::max(vhi, v);
    }
  for (const auto& [u, v] : g) {
    ulo = std::min(ulo, u);
    uhi = std::max(uhi, u);
    vlo = std::min(vlo, v);
    vhi = std::max(vhi, v);
  }
  double span = std::max(uhi - ulo, vhi - vlo) + 1.0;
  ulo -= span;
  uhi += span;
  vlo -= span;
  vhi += span;

  // Vertex chain of the staircase in (u,v) coordinates.
  std::vector<std::pair<double, double>> verts;
  const std::size_t n = g.size();
  if (f.kind() == FrontSet::Kind::Sup) {
    verts.push_back({ulo, g[0].second});
    verts.push_back({g[0].first, g[0].second});
    for (std::size_t i = 0; i + 1 < n; ++i) {
      verts.push_back({g[i].first, g[i + 1].second});
      verts.push_back({g[i + 1].first, g[i + 1].second});
    }
    verts.push_back({g[n - 1].first, vlo});
  } else {
    verts.push_back({g[0].first, vhi});
    verts.push_back({g[0].first, g[0].second});
    for (std::size_t i = 0; i + 1 < n; ++i) {
      verts.push_back({g[i + 1].first, g[i].second});
      verts.push_back({g[i + 1].first, g[i + 1].second});
    }
    verts.push_back({uhi, g[n - 1].second});
  }

  std::vector<Vec> out;
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
    auto [u0, v0] = verts[i];
    auto [u1, v1] = verts[i + 1];
    double len = std::hypot(u1 - u0, v1 - v0);
    int steps = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int s = 0; s <= steps; ++s) {
      double t = static_cast<double>(s) / steps;
      Vec y = inv(u0 + t * (u1 - u0), v0 + t * (v1 - v0));
      if (window.contains(y, 1e-9)) out.push_back(std::move(y));
    }
  }
  return out;
}

double directed_hausdorff(const std::vector<Vec>& from,
                          const std::vector<Vec>& to) {
  return directed_hausdorff(from, to, auto_policy(from.size() * to.size() / 64));
}

double hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace vecdual
