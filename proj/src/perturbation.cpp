#include "vecdual/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include "vecdual/linalg.hpp"
#include "vecdual/lp.hpp"
#include "vecdual/order.hpp"

namespace vecdual {

namespace {

Vec zero_vec(int n) { return Vec(static_cast<std::size_t>(n), 0.0); }

Vec concat(const Vec& a, const Vec& b) {
  Vec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

bool is_near_zero(const Vec& v) {
  for (double x : v)
    if (std::abs(x) > tol_strict) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exact lookup of (possibly shifted) arguments against a stored sample list.
// Arguments clearly outside the sampled bounding box are "Outside" (the map
// is +inf there); arguments inside the box that miss every sample would need
// interpolation, which the toolkit refuses.
// ---------------------------------------------------------------------------
enum class Hit { Exact, Outside, OffLattice };

class SampleTable {
 public:
  explicit SampleTable(const std::vector<Vec>& samples) : pts_(&samples) {
    require(!samples.empty(), "SampleTable: empty sample list");
    order_.resize(samples.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return lex_less(samples[a], samples[b]);
    });
    lo_ = hi_ = samples[0];
    for (const auto& s : samples) {
      require_dim(s, lo_.size(), "SampleTable sample");
      for (std::size_t d = 0; d < s.size(); ++d) {
        lo_[d] = std::min(lo_[d], s[d]);
        hi_[d] = std::max(hi_[d], s[d]);
      }
    }
  }

  Hit find(const Vec& q, std::size_t* out = nullptr) const {
    require_dim(q, lo_.size(), "SampleTable query");
    for (std::size_t d = 0; d < q.size(); ++d) {
      if ((q[d] < lo_[d] && !approx_eq(q[d], lo_[d])) ||
          (q[d] > hi_[d] && !approx_eq(q[d], hi_[d])))
        return Hit::Outside;
    }
    auto it = std::lower_bound(
        order_.begin(), order_.end(), q,
        [&](std::size_t i, const Vec& v) { return lex_less((*pts_)[i], v); });
    for (auto probe : {it, it == order_.begin() ? order_.end() : std::prev(it)}) {
      if (probe == order_.end()) continue;
      if (approx_eq((*pts_)[*probe], q)) {
        if (out) *out = *probe;
        return Hit::Exact;
      }
    }
    return Hit::OffLattice;
  }

 private:
  const std::vector<Vec>* pts_;
  std::vector<std::size_t> order_;
  Vec lo_, hi_;
};

ExtendedPoint lookup_value(const SampleTable& table, const SampledMap& f,
                           const Vec& q, const char* what) {
  std::size_t idx = 0;
  switch (table.find(q, &idx)) {
    case Hit::Exact:
      return f.values[idx];
    case Hit::Outside:
      return ExtendedPoint::plus_inf();
    default:
      throw std::invalid_argument(
          std::string(what) + ": shifted argument " + fmt(q) +
          " falls inside the sampled box but off the sample lattice");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// PerturbationCone
// ---------------------------------------------------------------------------

PerturbationCone::PerturbationCone(int zeros, PolyhedralCone c)
    : zero_dim(zeros), positive(std::move(c)) {
  require(zeros >= 0, "PerturbationCone: negative pinned block");
}

bool PerturbationCone::contains(const Vec& z, ConeRegion r) const {
  require_dim(z, static_cast<std::size_t>(dim()), "PerturbationCone::contains");
  for (int i = 0; i < zero_dim; ++i)
    if (!approx_eq(z[static_cast<std::size_t>(i)], 0.0)) return false;
  Vec tail(z.begin() + zero_dim, z.end());
  if (zero_dim > 0) {
    if (r == ConeRegion::Interior) return false;  // the cone has no interior
    return positive.contains(tail, ConeRegion::Closed);
  }
  return positive.contains(tail, r);
}

LinOp PerturbationCone::ordered_block(const LinOp& t) const {
  require(t.cols == dim(), "PerturbationCone::ordered_block: operator width");
  LinOp b(t.rows, positive.dim());
  for (int i = 0; i < t.rows; ++i)
    for (int j = 0; j < positive.dim(); ++j) b.at(i, j) = t.at(i, zero_dim + j);
  return b;
}

bool PerturbationCone::positive_operator(const LinOp& t,
                                         const PolyhedralCone& k) const {
  return is_positive_operator(ordered_block(t), positive, k);
}

bool PerturbationCone::weakly_positive_operator(const LinOp& t,
                                                const PolyhedralCone& k) const {
  return is_weakly_positive(ordered_block(t), positive, k);
}

// ---------------------------------------------------------------------------
// PerturbationProblem
// ---------------------------------------------------------------------------

PerturbationProblem::PerturbationProblem(SampledMap phi_in, int xd, int zd,
                                         PerturbationCone s,
                                         std::vector<LinOp> grid)
    : phi(std::move(phi_in)),
      x_dim(xd),
      z_dim(zd),
      S(std::move(s)),
      operator_grid(std::move(grid)) {
  require(x_dim >= 1 && z_dim >= 1, "PerturbationProblem: bad dimensions");
  require(phi.domain_dim() == x_dim + z_dim,
          "PerturbationProblem: sample width must be x_dim + z_dim");
  require(S.dim() == z_dim,
          "PerturbationProblem: perturbation cone dimension mismatch");
  require(phi.proper(), "PerturbationProblem: phi must be proper");
  bool zero_feasible = false;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (!phi.values[i].is_finite()) continue;
    if (is_near_zero(z_part(phi.domain_samples[i]))) {
      zero_feasible = true;
      break;
    }
  }
  require(zero_feasible,
          "PerturbationProblem: no finite value at the zero perturbation "
          "(the unperturbed problem is infeasible)");
  for (const auto& t : operator_grid)
    require(t.rows == K().dim() && t.cols == z_dim,
            "PerturbationProblem: operator grid shape mismatch");
}

Vec PerturbationProblem::x_part(const Vec& sample) const {
  require_dim(sample, static_cast<std::size_t>(x_dim + z_dim), "x_part");
  return Vec(sample.begin(), sample.begin() + x_dim);
}

Vec PerturbationProblem::z_part(const Vec& sample) const {
  require_dim(sample, static_cast<std::size_t>(x_dim + z_dim), "z_part");
  return Vec(sample.begin() + x_dim, sample.end());
}

// ---------------------------------------------------------------------------
// CCVPInstance
// ---------------------------------------------------------------------------

CCVPInstance::CCVPInstance(SampledMap f, SampledMap kap, SampledMap h,
                           SampledMap g, std::vector<char> c_mask)
    : F(std::move(f)),
      kappa(std::move(kap)),
      H(std::move(h)),
      G(std::move(g)),
      in_C(std::move(c_mask)),
      K(F.cone),
      P(H.cone),
      S(G.cone) {
  require(F.size() > 0, "CCVPInstance: empty sample list");
  require(H.size() == F.size() && G.size() == F.size() &&
              in_C.size() == F.size(),
          "CCVPInstance: F, H, G and the C mask must share the X samples");
  for (std::size_t i = 0; i < F.size(); ++i)
    require(approx_eq(F.domain_samples[i], H.domain_samples[i]) &&
                approx_eq(F.domain_samples[i], G.domain_samples[i]),
            "CCVPInstance: F, H, G sampled on different X points");
  require(kappa.cone.same_cone(K),
          "CCVPInstance: kappa must map into the same ordered codomain as F");
  require(kappa.domain_dim() == P.dim(),
          "CCVPInstance: kappa domain must match H's codomain");
  require(kappa.proper(), "CCVPInstance: kappa must be proper");

  // Feasibility: some x in C with G(x) in -S, F and H finite, and H(x)
  // hitting a finite kappa sample.
  SampleTable tw(kappa.domain_samples);
  bool ok = false;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (!feasible(i)) continue;
    if (!F.values[i].is_finite() || !H.values[i].is_finite()) continue;
    if (lookup_value(tw, kappa, H.values[i].value(), "CCVPInstance").is_finite()) {
      ok = true;
      break;
    }
  }
  require(ok, "CCVPInstance: infeasible instance (no x in C with G(x) in -S "
              "reaches finite F and kappa(H(x)))");
}

bool CCVPInstance::feasible(std::size_t i) const {
  if (!in_C[i]) return false;
  if (!G.values[i].is_finite()) return false;
  return S.neg_contains(G.values[i].value(), ConeRegion::Closed);
}

SampledMap composite_objective(const CCVPInstance& inst) {
  SampleTable tw(inst.kappa.domain_samples);
  SampledMap out(inst.K);
  out.domain_samples = inst.F.domain_samples;
  out.values.reserve(inst.F.size());
  for (std::size_t i = 0; i < inst.F.size(); ++i) {
    if (!inst.feasible(i) || !inst.F.values[i].is_finite() ||
        !inst.H.values[i].is_finite()) {
      out.values.push_back(ExtendedPoint::plus_inf());
      continue;
    }
    ExtendedPoint k = lookup_value(tw, inst.kappa, inst.H.values[i].value(),
                                   "composite_objective");
    out.values.push_back(inst.F.values[i] + k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Primal / dual fronts
// ---------------------------------------------------------------------------

namespace {

void check_primal_op(const PerturbationProblem& p, const LinOp& l,
                     const char* what) {
  require(l.rows == p.K().dim() && l.cols == p.x_dim,
          std::string(what) + ": operator must map the decision space "
                              "into the ordered codomain");
}

// Sampled stand-in for the dual's admissible operators. Every conjugate of
// a finite sample cloud is proper, so properness in the limit is proxied by
// window stability: phi restricted to the middle half of the sampled
// perturbation window must give the same conjugate front. A sup that drifts
// when the window shrinks diverges as the window grows.
struct WindowProbe {
  SampledMap inner;
  bool active = false;

  explicit WindowProbe(const PerturbationProblem& p) : inner(p.K()) {
    const std::size_t zd = static_cast<std::size_t>(p.z_dim);
    Vec lo, hi;
    for (std::size_t i = 0; i < p.phi.size(); ++i) {
      Vec z = p.z_part(p.phi.domain_samples[i]);
      if (lo.empty()) {
        lo = hi = z;
        continue;
      }
      for (std::size_t d = 0; d < zd; ++d) {
        lo[d] = std::min(lo[d], z[d]);
        hi[d] = std::max(hi[d], z[d]);
      }
    }
    bool has_finite = false;
    for (std::size_t i = 0; i < p.phi.size(); ++i) {
      Vec z = p.z_part(p.phi.domain_samples[i]);
      bool in = true;
      for (std::size_t d = 0; d < zd && in; ++d) {
        double s = (hi[d] - lo[d]) / 4.0;
        in = z[d] >= lo[d] + s - tol_strict && z[d] <= hi[d] - s + tol_strict;
      }
      if (!in) continue;
      inner.domain_samples.push_back(p.phi.domain_samples[i]);
      inner.values.push_back(p.phi.values[i]);
      has_finite = has_finite || p.phi.values[i].is_finite();
    }
    active = has_finite && inner.size() < p.phi.size();
  }

  bool stable(const FrontSet& full, const LinOp& lt) const {
    if (!active) return true;
    return fronts_probe_equal(full, conjugate(inner, lt));
  }
};

struct DualAssembly {
  std::vector<FrontSet> fronts;       // conjugate front per grid operator
  std::vector<char> admissible;       // passes the window-stability filter
  FrontSet dual;                      // pooled over the admissible part
  FrontSet loose;                     // pooled over its positive part
};

DualAssembly assemble_dual(const PerturbationProblem& p, const LinOp& l) {
  check_primal_op(p, l, "dual assembly");
  WindowProbe probe(p);
  std::vector<Vec> pool, pool_loose;
  DualAssembly a{{},
                 {},
                 FrontSet(FrontSet::Kind::MinusInfinity, p.K(), {}),
                 FrontSet(FrontSet::Kind::MinusInfinity, p.K(), {})};
  for (const LinOp& t : p.operator_grid) {
    LinOp lt = LinOp::hstack(l, t);
    FrontSet f = conjugate(p.phi, lt);
    bool adm = probe.stable(f, lt);
    if (adm) {
      bool pos = p.S.positive_operator(t, p.K());
      for (const Vec& g : f.generators()) {
        pool.push_back(neg(g));
        if (pos) pool_loose.push_back(neg(g));
      }
    }
    a.fronts.push_back(std::move(f));
    a.admissible.push_back(adm ? 1 : 0);
  }
  if (!pool.empty()) a.dual = wsup(pool, p.K());
  if (!pool_loose.empty()) a.loose = wsup(pool_loose, p.K());
  return a;
}

double front_gap_to_primal(const FrontSet& dual, const FrontSet& primal) {
  if (!dual.proper()) return std::numeric_limits<double>::infinity();
  double gap = 0.0;
  for (const Vec& g : primal.generators())
    gap = std::max(gap, std::max(0.0, front_gap(dual, g)));
  return gap;
}

}  // namespace

FrontSet primal_value(const PerturbationProblem& p, const LinOp& l) {
  check_primal_op(p, l, "primal_value");
  std::vector<Vec> vals;
  for (std::size_t i = 0; i < p.phi.size(); ++i) {
    if (!p.phi.values[i].is_finite()) continue;
    const Vec& s = p.phi.domain_samples[i];
    Vec z = p.z_part(s);
    if (!is_near_zero(z)) continue;
    vals.push_back(sub(p.phi.values[i].value(), l.apply(p.x_part(s))));
  }
  require(!vals.empty(),
          "primal_value: no finite value at the zero perturbation");
  return winf(vals, p.K());
}

FrontSet dual_value(const PerturbationProblem& p, const LinOp& l) {
  return assemble_dual(p, l).dual;
}

FrontSet loose_dual_value(const PerturbationProblem& p, const LinOp& l) {
  return assemble_dual(p, l).loose;
}

bool weak_duality_check(const PerturbationProblem& p, const LinOp& l) {
  FrontSet primal = primal_value(p, l);
  DualAssembly a = assemble_dual(p, l);
  for (const FrontSet& f : a.fronts) {
    FrontSet neg_f = negate_front(f);
    if (!precedes(SetArg(neg_f), SetArg(primal), p.K())) return false;
  }
  if (a.dual.proper() && !precedes(SetArg(a.dual), SetArg(primal), p.K()))
    return false;
  if (a.loose.proper() && a.dual.proper() &&
      !precedes(SetArg(a.loose), SetArg(a.dual), p.K()))
    return false;
  return true;
}

DualReport strong_duality_check(const PerturbationProblem& p, const LinOp& l,
                                double tolerance) {
  require(tolerance >= 0.0, "strong_duality_check: negative tolerance");
  FrontSet primal = primal_value(p, l);
  DualAssembly a = assemble_dual(p, l);

  DualReport report(primal, a.dual, a.loose);

  report.weak_duality_ok = true;
  for (const FrontSet& f : a.fronts) {
    FrontSet neg_f = negate_front(f);
    if (!precedes(SetArg(neg_f), SetArg(primal), p.K())) {
      report.weak_duality_ok = false;
      break;
    }
  }
  if (report.weak_duality_ok && a.dual.proper() &&
      !precedes(SetArg(a.dual), SetArg(primal), p.K()))
    report.weak_duality_ok = false;
  if (report.weak_duality_ok && a.dual.proper() && a.loose.proper() &&
      !precedes(SetArg(a.loose), SetArg(a.dual), p.K()))
    report.weak_duality_ok = false;

  report.strong_duality_gap = front_gap_to_primal(a.dual, primal);

  if (a.dual.proper()) {
    for (std::size_t ti = 0; ti < a.fronts.size(); ++ti) {
      if (!a.admissible[ti]) continue;
      bool attains = false;
      for (const Vec& g : a.fronts[ti].generators()) {
        if (classify_tol(a.dual, neg(g), tolerance) == Label::On) {
          attains = true;
          break;
        }
      }
      if (attains) report.attaining_operators.push_back(p.operator_grid[ti]);
    }
  }
  return report;
}

std::vector<DualReport> strong_duality_sweep(const PerturbationProblem& p,
                                             const std::vector<LinOp>& l_grid,
                                             double tolerance) {
  std::vector<DualReport> out;
  out.reserve(l_grid.size());
  for (const LinOp& l : l_grid)
    out.push_back(strong_duality_check(p, l, tolerance));
  return out;
}

bool conjugate_epi_union_contains(const PerturbationProblem& p, const LinOp& l,
                                  const Vec& y, bool positive_only) {
  check_primal_op(p, l, "conjugate_epi_union_contains");
  require_dim(y, static_cast<std::size_t>(p.K().dim()),
              "conjugate_epi_union_contains y");
  WindowProbe probe(p);
  for (const LinOp& t : p.operator_grid) {
    if (positive_only && !p.S.positive_operator(t, p.K())) continue;
    LinOp lt = LinOp::hstack(l, t);
    FrontSet f = conjugate(p.phi, lt);
    if (!probe.stable(f, lt)) continue;
    // y lies in front + K exactly when it is not strictly below the front.
    if (classify(f, y) != Label::Below) return true;
  }
  return false;
}

SampledMap zero_slice(const PerturbationProblem& p) {
  SampledMap out(p.K());
  for (std::size_t i = 0; i < p.phi.size(); ++i) {
    const Vec& s = p.phi.domain_samples[i];
    if (!is_near_zero(p.z_part(s))) continue;
    out.domain_samples.push_back(p.x_part(s));
    out.values.push_back(p.phi.values[i]);
  }
  require(!out.domain_samples.empty(),
          "zero_slice: the zero perturbation is not sampled");
  return out;
}

// ---------------------------------------------------------------------------
// Qualification conditions
// ---------------------------------------------------------------------------

namespace {

// Distinct perturbation parts of the finite-valued samples (the projection
// of the domain onto the perturbation space).
std::vector<Vec> projected_domain(const PerturbationProblem& p) {
  std::vector<Vec> zs;
  for (std::size_t i = 0; i < p.phi.size(); ++i)
    if (p.phi.values[i].is_finite())
      zs.push_back(p.z_part(p.phi.domain_samples[i]));
  sort_dedup(zs);
  return zs;
}

// Distinct perturbation parts of all samples (the sampled perturbation grid).
std::vector<Vec> sampled_z_grid(const PerturbationProblem& p) {
  std::vector<Vec> zs;
  for (const auto& s : p.phi.domain_samples) zs.push_back(p.z_part(s));
  sort_dedup(zs);
  return zs;
}

std::vector<Vec> distinct_x_parts(const PerturbationProblem& p) {
  std::vector<Vec> xs;
  for (const auto& s : p.phi.domain_samples) xs.push_back(p.x_part(s));
  sort_dedup(xs);
  return xs;
}

// Greedy span basis of the projected domain (the smallest linear subspace
// containing every perturbation reachable with a finite value).
std::vector<Vec> span_basis(const std::vector<Vec>& zs) {
  std::vector<Vec> basis;
  for (const auto& z : zs) {
    if (norm_inf(z) <= tol_strict) continue;
    if (!in_span(basis, z)) basis.push_back(z);
  }
  return basis;
}

bool in_lin_hull(const std::vector<Vec>& basis, const Vec& z) {
  if (norm_inf(z) <= tol_strict) return true;
  return in_span(basis, z);
}

// Value at (x, 0); +inf when the pair is absent from the sample grid.
ExtendedPoint value_at_zero(const PerturbationProblem& p,
                            const SampleTable& table, const Vec& x) {
  std::size_t idx = 0;
  Vec q = concat(x, zero_vec(p.z_dim));
  if (table.find(q, &idx) == Hit::Exact) return p.phi.values[idx];
  return ExtendedPoint::plus_inf();
}

// 0 lies in the relative interior of the convex hull of `zs`: along every
// basis direction of the hull's span, some convex combination reaches a
// positive multiple of the direction and of its negation.
bool zero_in_relative_interior(const std::vector<Vec>& zs, int z_dim) {
  std::vector<Vec> basis = span_basis(zs);
  if (basis.empty()) {
    for (const auto& z : zs)
      if (norm_inf(z) <= tol_strict) return true;  // hull is exactly {0}
    return false;
  }
  int n = static_cast<int>(zs.size());
  for (const Vec& b : basis) {
    for (double sign : {1.0, -1.0}) {
      // max t s.t. sum_i lambda_i z_i = t * sign * b, sum lambda = 1,
      // lambda >= 0, t >= 0.
      LinearProgram lp(n + 1);
      Vec obj(static_cast<std::size_t>(n + 1), 0.0);
      obj[static_cast<std::size_t>(n)] = 1.0;
      lp.maximize_obj(obj);
      for (int d = 0; d < z_dim; ++d) {
        Vec row(static_cast<std::size_t>(n + 1), 0.0);
        for (int i = 0; i < n; ++i)
          row[static_cast<std::size_t>(i)] =
              zs[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
        row[static_cast<std::size_t>(n)] =
            -sign * b[static_cast<std::size_t>(d)];
        lp.add_row(std::move(row), RowSense::EQ, 0.0);
      }
      Vec ones(static_cast<std::size_t>(n + 1), 1.0);
      ones[static_cast<std::size_t>(n)] = 0.0;
      lp.add_row(std::move(ones), RowSense::EQ, 1.0);
      LPResult r = lp_solve(lp);
      if (!r.optimal() || r.value <= 1e-7) return false;
    }
  }
  return true;
}

CondStatus check_c0(const PerturbationProblem& p, const SampleTable& table) {
  std::vector<Vec> xs = distinct_x_parts(p);
  for (const Vec& x : xs) {
    ExtendedPoint v0 = value_at_zero(p, table, x);
    if (!v0.is_finite()) continue;
    bool ok = true;
    for (std::size_t i = 0; i < p.phi.size() && ok; ++i) {
      const Vec& s = p.phi.domain_samples[i];
      if (!approx_eq(p.x_part(s), x)) continue;
      Vec z = p.z_part(s);
      if (!p.S.contains(neg(z), ConeRegion::Closed)) continue;
      if (!leq_cone(p.phi.values[i], v0, p.K())) ok = false;
    }
    if (ok) return CondStatus::Holds;
  }
  return CondStatus::Fails;
}

CondStatus check_c1(const std::vector<Vec>& dom_zs,
                    const std::vector<Vec>& grid_zs,
                    const std::vector<Vec>& basis,
                    const SamplingPolicy& policy) {
  // A finite sample set is always order-bounded, so the bound y_L exists as
  // soon as every perturbation in the neighborhood is reachable: each grid
  // perturbation within the radius (and inside the span of the domain) must
  // itself carry a finite value for some x.
  std::vector<double> radii = policy.radii;
  std::sort(radii.begin(), radii.end());
  std::size_t probes = policy.l_probes.empty() ? 1 : policy.l_probes.size();
  for (std::size_t pi = 0; pi < probes; ++pi) {
    bool found_radius = false;
    for (double r : radii) {
      bool ok = true;
      for (const Vec& z : grid_zs) {
        if (norm_inf(z) > r || !in_lin_hull(basis, z)) continue;
        if (!std::binary_search(dom_zs.begin(), dom_zs.end(), z,
                                [](const Vec& a, const Vec& b) {
                                  return lex_less(a, b);
                                })) {
          ok = false;
          break;
        }
      }
      if (ok) {
        found_radius = true;
        break;
      }
    }
    if (!found_radius) return CondStatus::Undetermined;
  }
  return CondStatus::Holds;
}

CondStatus check_c2_c3(const PerturbationProblem& p, const SampleTable& table,
                       const std::vector<Vec>& grid_zs,
                       const std::vector<Vec>& basis,
                       const SamplingPolicy& policy, bool continuity) {
  std::vector<double> radii = policy.radii;
  std::sort(radii.begin(), radii.end());
  if (continuity) radii.resize(1);  // witness the smallest neighborhood
  for (const Vec& x : distinct_x_parts(p)) {
    ExtendedPoint v0 = value_at_zero(p, table, x);
    if (continuity && !v0.is_finite()) continue;
    for (double r : radii) {
      bool ok = true;
      for (const Vec& z : grid_zs) {
        if (norm_inf(z) > r || !in_lin_hull(basis, z)) continue;
        std::size_t idx = 0;
        if (table.find(concat(x, z), &idx) != Hit::Exact ||
            !p.phi.values[idx].is_finite()) {
          ok = false;
          break;
        }
        if (continuity) {
          double dev = dist_inf(p.phi.values[idx].value(), v0.value());
          if (dev > policy.continuity_slope * norm_inf(z) + tol_strict) {
            ok = false;
            break;
          }
        }
      }
      if (ok) return CondStatus::Holds;
    }
  }
  return CondStatus::Undetermined;
}

CondStatus check_c6(const PerturbationProblem& p, const SampleTable& table,
                    const std::vector<Vec>& dom_zs) {
  // Monotone part, exact: phi(x, 0) <= phi(x, z) for every finite sample.
  for (std::size_t i = 0; i < p.phi.size(); ++i) {
    if (!p.phi.values[i].is_finite()) continue;
    const Vec& s = p.phi.domain_samples[i];
    if (is_near_zero(p.z_part(s))) continue;
    ExtendedPoint v0 = value_at_zero(p, table, p.x_part(s));
    if (!leq_cone(v0, p.phi.values[i], p.K())) return CondStatus::Fails;
  }
  // Interior part: the projected domain must witness a full-dimensional
  // convex hull; otherwise the condition stays open.
  std::vector<Vec> diffs;
  for (const auto& z : dom_zs) diffs.push_back(sub(z, dom_zs.front()));
  if (matrix_rank(diffs) == p.z_dim) return CondStatus::Holds;
  return CondStatus::Undetermined;
}

CondStatus check_c7(const PerturbationProblem& p, const SampleTable& table,
                    const std::vector<Vec>& dom_zs) {
  bool interior_witness = false;
  for (const auto& z : dom_zs)
    if (p.S.contains(z, ConeRegion::Interior)) {
      interior_witness = true;
      break;
    }
  if (!interior_witness) return CondStatus::Fails;
  for (std::size_t i = 0; i < p.phi.size(); ++i) {
    if (!p.phi.values[i].is_finite()) continue;
    const Vec& s = p.phi.domain_samples[i];
    Vec z = p.z_part(s);
    if (is_near_zero(z) || !p.S.contains(z, ConeRegion::Closed)) continue;
    ExtendedPoint v0 = value_at_zero(p, table, p.x_part(s));
    if (!leq_cone(v0, p.phi.values[i], p.K())) return CondStatus::Fails;
  }
  return CondStatus::Holds;
}

}  // namespace

CondStatus check_condition(const PerturbationProblem& p, Condition which,
                           const SamplingPolicy& policy) {
  SampleTable table(p.phi.domain_samples);
  std::vector<Vec> dom_zs = projected_domain(p);
  std::vector<Vec> basis = span_basis(dom_zs);
  switch (which) {
    case Condition::C0:
      return check_c0(p, table);
    case Condition::C1:
      return check_c1(dom_zs, sampled_z_grid(p), basis, policy);
    case Condition::C2:
      return check_c2_c3(p, table, sampled_z_grid(p), basis, policy, false);
    case Condition::C3:
      return check_c2_c3(p, table, sampled_z_grid(p), basis, policy, true);
    case Condition::C4:
    case Condition::C5:
      // Both ask for the zero perturbation in the relative-interior-style
      // hull of the projected domain; for finite samples in R^n the two hull
      // operators coincide and the topological hypotheses are vacuous.
      return zero_in_relative_interior(dom_zs, p.z_dim)
                 ? CondStatus::Holds
                 : CondStatus::Undetermined;
    case Condition::C6:
      return check_c6(p, table, dom_zs);
    case Condition::C7:
      return check_c7(p, table, dom_zs);
  }
  throw std::invalid_argument("check_condition: unknown condition id");
}

// ---------------------------------------------------------------------------
// Perturbation builders for the composite instance
// ---------------------------------------------------------------------------

namespace {

// {0} plus one minimal lattice step in each axis direction.
std::vector<Vec> axis_step_shifts(const std::vector<Vec>& samples) {
  std::size_t d = samples.empty() ? 0 : samples[0].size();
  std::vector<Vec> shifts{Vec(d, 0.0)};
  for (std::size_t a = 0; a < d; ++a) {
    std::vector<double> coords;
    coords.reserve(samples.size());
    for (const auto& s : samples) coords.push_back(s[a]);
    std::sort(coords.begin(), coords.end());
    double h = 0.0;
    for (std::size_t i = 0; i + 1 < coords.size(); ++i) {
      double gap = coords[i + 1] - coords[i];
      if (gap > tol_strict) h = h == 0.0 ? gap : std::min(h, gap);
    }
    if (h == 0.0) continue;
    Vec e(d, 0.0);
    e[a] = h;
    shifts.push_back(e);
    e[a] = -h;
    shifts.push_back(e);
  }
  return shifts;
}

// {0} plus the spread of the constraint image in each axis direction.
std::vector<Vec> constraint_span_shifts(const SampledMap& g) {
  std::size_t d = static_cast<std::size_t>(g.codomain_dim());
  Vec m(d, 0.0);
  for (const auto& v : g.values) {
    if (!v.is_finite()) continue;
    for (std::size_t a = 0; a < d; ++a)
      m[a] = std::max(m[a], std::abs(v.value()[a]));
  }
  std::vector<Vec> shifts{Vec(d, 0.0)};
  for (std::size_t a = 0; a < d; ++a) {
    double h = m[a] > tol_strict ? m[a] : 1.0;
    Vec e(d, 0.0);
    e[a] = h;
    shifts.push_back(e);
    e[a] = -h;
    shifts.push_back(e);
  }
  return shifts;
}

void require_zero_shift(const std::vector<Vec>& shifts, const char* what) {
  for (const auto& s : shifts)
    if (is_near_zero(s)) return;
  throw std::invalid_argument(std::string(what) +
                              ": shift grid must contain the zero shift");
}

std::size_t table_cap() {
  // Guards against accidentally materializing an enormous product grid.
  // Deliberate large runs can raise the limit through the environment.
  static const std::size_t cap = [] {
    constexpr std::size_t fallback = 5'000'000;
    const char* raw = std::getenv("VECDUAL_MAX_TABLE");
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || parsed == 0) return fallback;
    return static_cast<std::size_t>(parsed);
  }();
  return cap;
}

PerturbationProblem build_phi_scheme(const CCVPInstance& inst, int scheme,
                                     ShiftGrids g) {
  require(scheme >= 1 && scheme <= 4, "build_phi: unknown scheme");
  const int xd = inst.x_dim();
  const int wd = inst.w_dim();
  const int zd = inst.z_dim();

  std::vector<Vec> xs = g.x_shifts.empty()
                            ? axis_step_shifts(inst.F.domain_samples)
                            : std::move(g.x_shifts);
  std::vector<Vec> ws = g.w_shifts.empty()
                            ? axis_step_shifts(inst.kappa.domain_samples)
                            : std::move(g.w_shifts);
  std::vector<Vec> zs = g.z_shifts.empty() ? constraint_span_shifts(inst.G)
                                           : std::move(g.z_shifts);
  for (const auto& s : xs) require_dim(s, static_cast<std::size_t>(xd), "x shift");
  for (const auto& s : ws) require_dim(s, static_cast<std::size_t>(wd), "w shift");
  for (const auto& s : zs) require_dim(s, static_cast<std::size_t>(zd), "z shift");
  require_zero_shift(ws, "build_phi");
  require_zero_shift(zs, "build_phi");
  if (scheme >= 2) require_zero_shift(xs, "build_phi");

  // Perturbation blocks in sample order: the pinned X shifts (objective
  // argument, then kappa argument, then constraint-set argument as the
  // scheme adds them), then w, then z.
  std::vector<const std::vector<Vec>*> blocks;
  for (int b = 1; b < scheme; ++b) blocks.push_back(&xs);
  blocks.push_back(&ws);
  blocks.push_back(&zs);

  std::size_t total = inst.F.size();
  for (const auto* b : blocks) {
    require(!b->empty(), "build_phi: empty shift grid");
    total *= b->size();
    require(total <= table_cap(),
            "build_phi: product grid exceeds the table cap");
  }

  SampleTable tx(inst.F.domain_samples);
  SampleTable tw(inst.kappa.domain_samples);

  SampledMap phi(inst.K);
  phi.domain_samples.reserve(total);
  phi.values.reserve(total);

  std::vector<std::size_t> odo(blocks.size(), 0);
  for (std::size_t i = 0; i < inst.F.size(); ++i) {
    const Vec& x = inst.F.domain_samples[i];
    std::fill(odo.begin(), odo.end(), std::size_t{0});
    while (true) {
      const std::size_t nb = blocks.size();
      const Vec& w = (*blocks[nb - 2])[odo[nb - 2]];
      const Vec& z = (*blocks[nb - 1])[odo[nb - 1]];

      // Membership in C (possibly at a shifted argument).
      bool in_c;
      if (scheme <= 2) {
        in_c = inst.in_C[i] != 0;
      } else {
        const Vec& vc = (*blocks[scheme - 2])[odo[scheme - 2]];
        std::size_t idx = 0;
        switch (tx.find(add(x, vc), &idx)) {
          case Hit::Exact:
            in_c = inst.in_C[idx] != 0;
            break;
          case Hit::Outside:
            in_c = false;
            break;
          default:
            throw std::invalid_argument(
                "build_phi: shifted constraint-set argument falls inside the "
                "sampled box but off the sample lattice");
        }
      }

      // Constraint block G(x) + z in -S (G always at the unshifted x).
      bool feas = in_c && inst.G.values[i].is_finite() &&
                  inst.S.neg_contains(add(inst.G.values[i].value(), z),
                                      ConeRegion::Closed);

      ExtendedPoint value = ExtendedPoint::plus_inf();
      if (feas) {
        ExtendedPoint fv =
            scheme == 1 ? inst.F.values[i]
                        : lookup_value(tx, inst.F, add(x, (*blocks[0])[odo[0]]),
                                       "build_phi");
        ExtendedPoint hv =
            scheme == 4 ? lookup_value(tx, inst.H, add(x, (*blocks[1])[odo[1]]),
                                       "build_phi")
                        : inst.H.values[i];
        ExtendedPoint kv = ExtendedPoint::plus_inf();
        if (hv.is_finite())
          kv = lookup_value(tw, inst.kappa, add(hv.value(), w), "build_phi");
        value = fv + kv;
      }

      Vec sample = x;
      for (std::size_t b = 0; b < nb; ++b)
        sample = concat(sample, (*blocks[b])[odo[b]]);
      phi.domain_samples.push_back(std::move(sample));
      phi.values.push_back(std::move(value));

      std::size_t b = nb;
      while (b > 0) {
        --b;
        if (++odo[b] < blocks[b]->size()) break;
        odo[b] = 0;
        if (b == 0) goto next_x;
      }
      if (nb == 0) break;
    }
  next_x:;
  }

  const int zeros = (scheme - 1) * xd;
  const int ztot = zeros + wd + zd;
  return PerturbationProblem(std::move(phi), xd, ztot,
                             PerturbationCone(zeros,
                                              cone_product(inst.P, inst.S)));
}

}  // namespace

PerturbationProblem build_phi1(const CCVPInstance& inst, ShiftGrids g) {
  return build_phi_scheme(inst, 1, std::move(g));
}
PerturbationProblem build_phi2(const CCVPInstance& inst, ShiftGrids g) {
  return build_phi_scheme(inst, 2, std::move(g));
}
PerturbationProblem build_phi3(const CCVPInstance& inst, ShiftGrids g) {
  return build_phi_scheme(inst, 3, std::move(g));
}
PerturbationProblem build_phi4(const CCVPInstance& inst, ShiftGrids g) {
  return build_phi_scheme(inst, 4, std::move(g));
}

// ---------------------------------------------------------------------------
// Conjugate splitting for the first scheme
// ---------------------------------------------------------------------------

namespace {

// x -> optional F + optional T1(H(x)) + optional T2(G(x)) + optional I_C over
// the shared X samples.
SampledMap combined_map(const CCVPInstance& inst, bool with_f, const LinOp* t1h,
                        const LinOp* t2g, bool with_c) {
  SampledMap out(inst.K);
  out.domain_samples = inst.F.domain_samples;
  out.values.reserve(inst.F.size());
  Vec zero = zero_vec(inst.K.dim());
  for (std::size_t i = 0; i < inst.F.size(); ++i) {
    ExtendedPoint v = ExtendedPoint::finite(zero);
    if (with_c && !inst.in_C[i]) v = ExtendedPoint::plus_inf();
    if (v.is_finite() && with_f) v = v + inst.F.values[i];
    if (v.is_finite() && t1h) {
      v = inst.H.values[i].is_finite()
              ? v + ExtendedPoint::finite(t1h->apply(inst.H.values[i].value()))
              : ExtendedPoint::plus_inf();
    }
    if (v.is_finite() && t2g) {
      v = inst.G.values[i].is_finite()
              ? v + ExtendedPoint::finite(t2g->apply(inst.G.values[i].value()))
              : ExtendedPoint::plus_inf();
    }
    out.values.push_back(std::move(v));
  }
  return out;
}

// The feasible constraint perturbations of a scheme-1 problem at one
// decision sample: (G(x) + z-grid) intersected with -S.
std::vector<Vec> feasible_u_set(const CCVPInstance& inst,
                                const std::vector<Vec>& z_shifts) {
  for (std::size_t i = 0; i < inst.F.size(); ++i) {
    if (!inst.in_C[i] || !inst.F.values[i].is_finite() ||
        !inst.H.values[i].is_finite() || !inst.G.values[i].is_finite())
      continue;
    std::vector<Vec> us;
    for (const auto& z : z_shifts) {
      Vec u = add(inst.G.values[i].value(), z);
      if (inst.S.neg_contains(u, ConeRegion::Closed)) us.push_back(std::move(u));
    }
    if (!us.empty()) {
      sort_dedup(us);
      return us;
    }
  }
  throw std::invalid_argument(
      "feasible_u_set: no admissible constraint perturbation");
}

// wsup { T2(u) : u in U } -- the sampled stand-in for the conjugate of the
// indicator of -S. Exactly the WS-sum neutral when T2 maps S into K and U
// contains 0.
FrontSet indicator_conjugate_front(const LinOp& t2, const std::vector<Vec>& us,
                                   const PolyhedralCone& k) {
  std::vector<Vec> pts;
  pts.reserve(us.size());
  for (const auto& u : us) pts.push_back(t2.apply(u));
  return wsup(pts, k);
}

}  // namespace

bool phi1_conjugate_identity(const CCVPInstance& inst, const LinOp& l,
                             const LinOp& t1, const LinOp& t2, ShiftGrids g) {
  const int m = inst.K.dim();
  require(l.rows == m && l.cols == inst.x_dim(),
          "phi1_conjugate_identity: L shape");
  require(t1.rows == m && t1.cols == inst.w_dim(),
          "phi1_conjugate_identity: T1 shape");
  require(t2.rows == m && t2.cols == inst.z_dim(),
          "phi1_conjugate_identity: T2 shape");

  // Default W shifts reach every finite kappa sample from every H(x), so the
  // product grid carries the full conjugate of kappa; default Z shifts land
  // a small -S sample from every G(x).
  if (g.w_shifts.empty()) {
    std::vector<Vec> diffs;
    for (std::size_t q = 0; q < inst.kappa.size(); ++q) {
      if (!inst.kappa.values[q].is_finite()) continue;
      for (const auto& hv : inst.H.values) {
        if (!hv.is_finite()) continue;
        diffs.push_back(sub(inst.kappa.domain_samples[q], hv.value()));
      }
    }
    sort_dedup(diffs);
    g.w_shifts = std::move(diffs);
  }
  if (g.z_shifts.empty()) {
    std::vector<Vec> targets{zero_vec(inst.z_dim())};
    for (const auto& sg : inst.S.generators()) {
      targets.push_back(scale(-0.5, sg));
      targets.push_back(neg(sg));
    }
    std::vector<Vec> diffs{zero_vec(inst.z_dim())};
    for (const auto& u : targets)
      for (const auto& gv : inst.G.values) {
        if (!gv.is_finite()) continue;
        diffs.push_back(sub(u, gv.value()));
      }
    sort_dedup(diffs);
    g.z_shifts = std::move(diffs);
  }

  std::vector<Vec> z_shifts = g.z_shifts;  // builder consumes the grids
  PerturbationProblem p1 = build_phi1(inst, std::move(g));
  FrontSet lhs = conjugate(p1.phi, LinOp::hstack(l, LinOp::hstack(t1, t2)));

  SampledMap a_map = combined_map(inst, true, &t1, &t2, true);
  FrontSet a = conjugate(a_map, l);
  FrontSet b = conjugate(inst.kappa, t1);
  std::vector<Vec> us = feasible_u_set(inst, z_shifts);
  FrontSet i_term = indicator_conjugate_front(t2, us, inst.K);

  bool ok = fronts_probe_equal(lhs, ws_sum(ws_sum(a, b), i_term));
  if (is_positive_operator(t2, inst.S, inst.K))
    ok = ok && fronts_probe_equal(lhs, ws_sum(a, b));
  return ok;
}

// ---------------------------------------------------------------------------
// Dual assemblies for the composite instance
// ---------------------------------------------------------------------------

DualReport build_ccvd(const CCVPInstance& inst, int variant, bool loose,
                      const OperatorGrids& grids) {
  require(variant >= 1 && variant <= 4, "build_ccvd: unknown variant");
  require(!grids.t1.empty() && !grids.t2.empty(),
          "build_ccvd: empty operator grid for T1/T2");
  const int m = inst.K.dim();
  const int xd = inst.x_dim();
  auto check_ops = [m](const std::vector<LinOp>& v, int cols, const char* what) {
    for (const auto& t : v)
      require(t.rows == m && t.cols == cols,
              std::string("build_ccvd: ") + what + " grid shape mismatch");
  };
  check_ops(grids.t1, inst.w_dim(), "T1");
  check_ops(grids.t2, inst.z_dim(), "T2");
  const LinOp zero_l = LinOp::zero(m, xd);
  // Unused shift-operator grids collapse to the zero operator, so variants
  // share one quadruple loop.
  const std::vector<LinOp> zero_grid{zero_l};
  const std::vector<LinOp>& l1 = variant >= 2 ? grids.l1 : zero_grid;
  const std::vector<LinOp>& l2 = variant >= 3 ? grids.l2 : zero_grid;
  const std::vector<LinOp>& l3 = variant >= 4 ? grids.l3 : zero_grid;
  if (variant >= 2) require(!grids.l1.empty(), "build_ccvd: empty L' grid");
  if (variant >= 3) require(!grids.l2.empty(), "build_ccvd: empty L'' grid");
  if (variant >= 4) require(!grids.l3.empty(), "build_ccvd: empty L''' grid");
  check_ops(l1, xd, "L'");
  check_ops(l2, xd, "L''");
  check_ops(l3, xd, "L'''");

  SampledMap composite = composite_objective(inst);
  FrontSet primal = winf(composite.values, inst.K);

  // The sampled stand-in for the indicator-of--S conjugate: the constraint
  // values themselves, the origin, and a short ray into -S.
  std::vector<Vec> us{zero_vec(inst.z_dim())};
  for (const auto& gv : inst.G.values)
    if (gv.is_finite() && inst.S.neg_contains(gv.value(), ConeRegion::Closed))
      us.push_back(gv.value());
  for (const auto& sg : inst.S.generators()) {
    us.push_back(scale(-0.5, sg));
    us.push_back(neg(sg));
  }
  sort_dedup(us);

  SampledMap ind_c = combined_map(inst, false, nullptr, nullptr, true);

  std::vector<Vec> pool_plain, pool_loose;
  struct TupleFront {
    LinOp op;
    FrontSet front;
    bool plain;
    bool loosely;
  };
  std::vector<TupleFront> tuples;

  for (const LinOp& t1 : grids.t1) {
    FrontSet kappa_star = conjugate(inst.kappa, t1);
    bool t1_pos = is_positive_operator(t1, inst.P, inst.K);
    for (const LinOp& t2 : grids.t2) {
      bool plain_ok = is_weakly_positive(t2, inst.S, inst.K);
      bool loose_ok = t1_pos && is_positive_operator(t2, inst.S, inst.K);
      if (!plain_ok && !loose_ok) continue;
      FrontSet i_front = indicator_conjugate_front(t2, us, inst.K);
      for (const LinOp& a1 : l1) {
        for (const LinOp& a2 : l2) {
          for (const LinOp& a3 : l3) {
            FrontSet base = kappa_star;
            switch (variant) {
              case 1:
                base = ws_sum(
                    conjugate(combined_map(inst, true, &t1, &t2, true), zero_l),
                    kappa_star);
                break;
              case 2:
                base = ws_sum(
                    ws_sum(conjugate(inst.F, a1),
                           conjugate(combined_map(inst, false, &t1, &t2, true),
                                     -a1)),
                    kappa_star);
                break;
              case 3:
                base = ws_sum(
                    ws_sum(ws_sum(conjugate(inst.F, a1),
                                  conjugate(
                                      combined_map(inst, false, &t1, &t2, false),
                                      -(a1 + a2))),
                           conjugate(ind_c, a2)),
                    kappa_star);
                break;
              default:
                base = ws_sum(
                    ws_sum(
                        ws_sum(
                            ws_sum(conjugate(inst.F, a1),
                                   conjugate(combined_map(inst, false, &t1,
                                                          nullptr, false),
                                             a2)),
                            conjugate(combined_map(inst, false, nullptr, &t2,
                                                   false),
                                      -(a1 + a2 + a3))),
                        conjugate(ind_c, a3)),
                    kappa_star);
                break;
            }
            LinOp op = t1;
            if (variant >= 2) op = LinOp::hstack(a1, op);
            if (variant >= 3) op = LinOp::hstack(LinOp::hstack(a1, a2), t1);
            if (variant >= 4)
              op = LinOp::hstack(LinOp::hstack(LinOp::hstack(a1, a2), a3), t1);
            op = LinOp::hstack(op, t2);

            if (plain_ok) {
              FrontSet with_i = ws_sum(base, i_front);
              for (const Vec& gpt : with_i.generators())
                pool_plain.push_back(neg(gpt));
              tuples.push_back({op, with_i, true, false});
            }
            if (loose_ok) {
              for (const Vec& gpt : base.generators())
                pool_loose.push_back(neg(gpt));
              tuples.push_back({op, base, false, true});
            }
          }
        }
      }
    }
  }

  FrontSet dual = pool_plain.empty()
                      ? FrontSet(FrontSet::Kind::MinusInfinity, inst.K, {})
                      : wsup(pool_plain, inst.K);
  FrontSet loose_front =
      pool_loose.empty() ? FrontSet(FrontSet::Kind::MinusInfinity, inst.K, {})
                         : wsup(pool_loose, inst.K);

  DualReport report(primal, dual, loose_front);

  report.weak_duality_ok = true;
  for (const auto& tf : tuples) {
    FrontSet neg_f = negate_front(tf.front);
    if (!precedes(SetArg(neg_f), SetArg(primal), inst.K)) {
      report.weak_duality_ok = false;
      break;
    }
  }
  if (report.weak_duality_ok && dual.proper() &&
      !precedes(SetArg(dual), SetArg(primal), inst.K))
    report.weak_duality_ok = false;
  if (report.weak_duality_ok && dual.proper() && loose_front.proper() &&
      !precedes(SetArg(loose_front), SetArg(dual), inst.K))
    report.weak_duality_ok = false;

  const FrontSet& requested = loose ? loose_front : dual;
  report.strong_duality_gap = front_gap_to_primal(requested, primal);
  if (requested.proper()) {
    for (const auto& tf : tuples) {
      if (loose ? !tf.loosely : !tf.plain) continue;
      for (const Vec& gpt : tf.front.generators()) {
        if (classify_tol(requested, neg(gpt), 1e-7) == Label::On) {
          report.attaining_operators.push_back(tf.op);
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace vecdual
