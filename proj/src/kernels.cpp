#include "vecdual/kernels.hpp"

#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vecdual {

int parallel_width() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

bool use_parallel(ExecPolicy p) {
#ifdef _OPENMP
  return p == ExecPolicy::Parallel;
#else
  (void)p;
  return false;
#endif
}

}  // namespace

std::vector<Label> classify_grid(const FrontSet& f, const ProbeGrid& grid,
                                 ExecPolicy policy) {
  require(f.proper(), "classify_grid: improper front kind");
  require(grid.dim() == f.cone().dim(), "classify_grid: dimension mismatch");
  const std::int64_t n = static_cast<std::int64_t>(grid.size());
  std::vector<Label> out(static_cast<std::size_t>(n));
  if (use_parallel(policy)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
      out[static_cast<std::size_t>(i)] =
          classify(f, grid.point(static_cast<std::size_t>(i)));
#endif
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      out[static_cast<std::size_t>(i)] =
          classify(f, grid.point(static_cast<std::size_t>(i)));
  }
  return out;
}

namespace {

template <typename SetT>
bool partition_scan_impl(const SetT& s, const ProbeGrid& grid,
                         ExecPolicy policy) {
  const std::int64_t n = static_cast<std::int64_t>(grid.size());
  int ok = 1;
  if (use_parallel(policy)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (std::int64_t i = 0; i < n; ++i) {
      RegionFlags r = partition_labels(s, grid.point(static_cast<std::size_t>(i)));
      int count = (r.below ? 1 : 0) + (r.on ? 1 : 0) + (r.above ? 1 : 0);
      ok = ok && (count == 1);
    }
#endif
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      RegionFlags r = partition_labels(s, grid.point(static_cast<std::size_t>(i)));
      int count = (r.below ? 1 : 0) + (r.on ? 1 : 0) + (r.above ? 1 : 0);
      if (count != 1) return false;
    }
  }
  return ok != 0;
}

}  // namespace

bool partition_scan(const FrontSet& f, const ProbeGrid& grid,
                    ExecPolicy policy) {
  require(f.proper(), "partition_scan: improper front kind");
  require(grid.dim() == f.cone().dim(), "partition_scan: dimension mismatch");
  return partition_scan_impl(f, grid, policy);
}

bool partition_scan(const LowerClosedSet& s, const ProbeGrid& grid,
                    ExecPolicy policy) {
  require(grid.dim() == s.cone.dim(), "partition_scan: dimension mismatch");
  return partition_scan_impl(s, grid, policy);
}

namespace {

// Strict domination in the Sup direction: p dominated iff q - p in int K.
bool sup_dominates(const Vec& q, const Vec& p, const std::vector<Vec>& normals) {
  double s = std::max(1.0, std::max(norm_inf(p), norm_inf(q)));
  for (const auto& n : normals) {
    double d = dot(n, q) - dot(n, p);
    if (d <= tol_strict * s) return false;
  }
  return true;
}

std::vector<std::uint8_t> mask_dim2(const std::vector<Vec>& pts,
                                    const PolyhedralCone& K) {
  const auto& normals = K.normals();
  require(normals.size() == 2, "sup_undominated_mask: R^2 cone needs 2 normals");
  const std::size_t n = pts.size();
  std::vector<double> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = dot(normals[0], pts[i]);
    v[i] = dot(normals[1], pts[i]);
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (u[a] != u[b]) return u[a] > u[b];
    return v[a] > v[b];
  });
  std::vector<std::uint8_t> keep(n, 1);
  double best_v = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < n) {
    // Block of (approximately) equal u values.
    std::size_t j = i;
    double block_max_v = -std::numeric_limits<double>::infinity();
    while (j < n && approx_eq(u[order[i]], u[order[j]],
                              tol_strict)) {
      std::size_t idx = order[j];
      double s = std::max(1.0, std::max(std::abs(best_v), std::abs(v[idx])));
      if (best_v > v[idx] + tol_strict * s) keep[idx] = 0;
      block_max_v = std::max(block_max_v, v[idx]);
      ++j;
    }
    best_v = std::max(best_v, block_max_v);
    i = j;
  }
  return keep;
}

}  // namespace

std::vector<std::uint8_t> sup_undominated_mask(const std::vector<Vec>& pts,
                                               const PolyhedralCone& K,
                                               ExecPolicy policy) {
  if (pts.empty()) return {};
  for (const auto& p : pts)
    require_dim(p, static_cast<std::size_t>(K.dim()), "sup_undominated_mask");
  if (K.dim() == 2 && K.normals().size() == 2) return mask_dim2(pts, K);

  const std::int64_t n = static_cast<std::int64_t>(pts.size());
  const auto& normals = K.normals();
  std::vector<std::uint8_t> keep(static_cast<std::size_t>(n), 1);
  if (use_parallel(policy)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      const Vec& p = pts[static_cast<std::size_t>(i)];
      for (std::int64_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (sup_dominates(pts[static_cast<std::size_t>(j)], p, normals)) {
          keep[static_cast<std::size_t>(i)] = 0;
          break;
        }
      }
    }
#endif
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      const Vec& p = pts[static_cast<std::size_t>(i)];
      for (std::int64_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (sup_dominates(pts[static_cast<std::size_t>(j)], p, normals)) {
          keep[static_cast<std::size_t>(i)] = 0;
          break;
        }
      }
    }
  }
  return keep;
}

double directed_hausdorff(const std::vector<Vec>& from,
                          const std::vector<Vec>& to, ExecPolicy policy) {
  require(!from.empty() && !to.empty(), "directed_hausdorff: empty set");
  const std::int64_t n = static_cast<std::int64_t>(from.size());
  double worst = 0.0;
  if (use_parallel(policy)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (std::int64_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to)
        best = std::min(best, dist2(from[static_cast<std::size_t>(i)], q));
      worst = std::max(worst, best);
    }
#endif
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to)
        best = std::min(best, dist2(from[static_cast<std::size_t>(i)], q));
      worst = std::max(worst, best);
    }
  }
  return worst;
}

}  // namespace vecdual
