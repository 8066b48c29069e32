#include "vecdual/scalar.hpp"

#include <cmath>

#include "vecdual/front.hpp"
#include "vecdual/sampled_map.hpp"

namespace vecdual {

double PiecewiseLinear::eval(const Vec& x) const {
  require(!slopes.empty(), "PiecewiseLinear::eval: no pieces");
  double best = -kPlusInf;
  for (std::size_t j = 0; j < slopes.size(); ++j)
    best = std::max(best, dot(slopes[j], x) + offsets[j]);
  return best;
}

bool Polytope::contains(const Vec& x, double tol) const {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (dot(rows[i], x) > rhs[i] + tol * std::max(1.0, std::abs(rhs[i])))
      return false;
  return true;
}

namespace {

void check_instance(const ScalarInstance& inst, const char* who) {
  require(inst.n >= 1, std::string(who) + ": empty variable space");
  require(!inst.f.slopes.empty(), std::string(who) + ": f needs pieces");
  require(inst.f.dim() == inst.n, std::string(who) + ": f dimension mismatch");
  require(inst.f.offsets.size() == inst.f.slopes.size(),
          std::string(who) + ": f slopes/offsets mismatch");
  require(inst.G.lin.cols == inst.n, std::string(who) + ": G domain mismatch");
  require(inst.G.lin.rows == inst.S.dim(),
          std::string(who) + ": G codomain / S mismatch");
  for (const auto& r : inst.C.rows)
    require_dim(r, static_cast<std::size_t>(inst.n), "polytope row");
  require(inst.C.rows.size() == inst.C.rhs.size(),
          std::string(who) + ": polytope rows/rhs mismatch");
  bool has_kappa = inst.kappa.has_value();
  require(has_kappa == inst.H.has_value() && has_kappa == inst.P.has_value(),
          std::string(who) + ": composite parts must come together");
  if (has_kappa) {
    require(inst.H->lin.cols == inst.n, std::string(who) + ": H domain mismatch");
    require(inst.H->lin.rows == inst.kappa->dim(),
            std::string(who) + ": H codomain / kappa mismatch");
    require(inst.P->dim() == inst.kappa->dim(),
            std::string(who) + ": P / kappa dimension mismatch");
  }
}

// Rows describing { x : G(x) in -S } as halfspaces over x.
void append_cone_rows(const ScalarInstance& inst, LinearProgram& lp, int x_base) {
  LinOp gt = inst.G.lin.transpose();
  for (const auto& nrm : inst.S.normals()) {
    Vec row(static_cast<std::size_t>(lp.n), 0.0);
    Vec gn = gt.apply(nrm);
    for (int i = 0; i < inst.n; ++i)
      row[static_cast<std::size_t>(x_base + i)] = gn[static_cast<std::size_t>(i)];
    lp.add_row(row, RowSense::LE, -dot(nrm, inst.G.shift));
  }
}

// The feasible set of the instance as one halfspace list.
Polytope feasible_polytope(const ScalarInstance& inst) {
  Polytope a = inst.C;
  LinOp gt = inst.G.lin.transpose();
  for (const auto& nrm : inst.S.normals()) {
    a.rows.push_back(gt.apply(nrm));
    a.rhs.push_back(-dot(nrm, inst.G.shift));
  }
  return a;
}

}  // namespace

LPResult scalar_primal(const ScalarInstance& inst) {
  check_instance(inst, "scalar_primal");
  const bool comp = inst.kappa.has_value();
  // Variables: x (free), t (free), [u (free)].
  const int nv = inst.n + 1 + (comp ? 1 : 0);
  LinearProgram lp(nv);
  Vec obj(static_cast<std::size_t>(nv), 0.0);
  obj[static_cast<std::size_t>(inst.n)] = 1.0;
  if (comp) obj[static_cast<std::size_t>(inst.n + 1)] = 1.0;
  lp.minimize(obj);
  for (int j = 0; j < nv; ++j) lp.mark_free(j);

  for (std::size_t j = 0; j < inst.f.pieces(); ++j) {
    Vec row(static_cast<std::size_t>(nv), 0.0);
    for (int i = 0; i < inst.n; ++i)
      row[static_cast<std::size_t>(i)] = inst.f.slopes[j][static_cast<std::size_t>(i)];
    row[static_cast<std::size_t>(inst.n)] = -1.0;
    lp.add_row(row, RowSense::LE, -inst.f.offsets[j]);
  }
  if (comp) {
    LinOp ht = inst.H->lin.transpose();
    for (std::size_t q = 0; q < inst.kappa->pieces(); ++q) {
      const Vec& p = inst.kappa->slopes[q];
      Vec hp = ht.apply(p);
      Vec row(static_cast<std::size_t>(nv), 0.0);
      for (int i = 0; i < inst.n; ++i)
        row[static_cast<std::size_t>(i)] = hp[static_cast<std::size_t>(i)];
      row[static_cast<std::size_t>(inst.n + 1)] = -1.0;
      lp.add_row(row, RowSense::LE,
                 -inst.kappa->offsets[q] - dot(p, inst.H->shift));
    }
  }
  for (std::size_t i = 0; i < inst.C.rows.size(); ++i) {
    Vec row(static_cast<std::size_t>(nv), 0.0);
    for (int c = 0; c < inst.n; ++c)
      row[static_cast<std::size_t>(c)] = inst.C.rows[i][static_cast<std::size_t>(c)];
    lp.add_row(row, RowSense::LE, inst.C.rhs[i]);
  }
  append_cone_rows(inst, lp, 0);

  LPResult r = lp_solve(lp);
  if (r.optimal()) r.x.resize(static_cast<std::size_t>(inst.n));
  return r;
}

double scalar_conjugate(const PiecewiseLinear& f, const Polytope& c,
                        const Vec& x_star) {
  require_dim(x_star, static_cast<std::size_t>(f.dim()), "scalar_conjugate");
  const int n = f.dim();
  LinearProgram lp(n + 1);  // x free, t free
  Vec obj(static_cast<std::size_t>(n + 1), 0.0);
  for (int i = 0; i < n; ++i) obj[static_cast<std::size_t>(i)] = x_star[static_cast<std::size_t>(i)];
  obj[static_cast<std::size_t>(n)] = -1.0;
  lp.maximize_obj(obj);
  for (int j = 0; j <= n; ++j) lp.mark_free(j);
  for (std::size_t j = 0; j < f.pieces(); ++j) {
    Vec row(static_cast<std::size_t>(n + 1), 0.0);
    for (int i = 0; i < n; ++i)
      row[static_cast<std::size_t>(i)] = f.slopes[j][static_cast<std::size_t>(i)];
    row[static_cast<std::size_t>(n)] = -1.0;
    lp.add_row(row, RowSense::LE, -f.offsets[j]);
  }
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    Vec row(static_cast<std::size_t>(n + 1), 0.0);
    for (int k = 0; k < n; ++k)
      row[static_cast<std::size_t>(k)] = c.rows[i][static_cast<std::size_t>(k)];
    lp.add_row(row, RowSense::LE, c.rhs[i]);
  }
  LPResult r = lp_solve(lp);
  if (r.status == LPStatus::Unbounded) return kPlusInf;
  if (r.status == LPStatus::Infeasible) return -kPlusInf;  // empty domain
  require(r.optimal(), "scalar_conjugate: LP stalled");
  return r.value;
}

double scalar_conjugate(const PiecewiseLinear& f, const Vec& x_star) {
  return scalar_conjugate(f, Polytope{}, x_star);
}

std::vector<A2ProbeReport> verify_A2(const ScalarInstance& inst,
                                     const std::vector<A2Probe>& probes) {
  check_instance(inst, "verify_A2");
  Polytope feas = feasible_polytope(inst);
  const auto splus = inst.S.dual().generators();
  LinOp gt = inst.G.lin.transpose();

  std::vector<A2ProbeReport> out;
  out.reserve(probes.size());
  for (const auto& probe : probes) {
    require_dim(probe.x_star, static_cast<std::size_t>(inst.n), "A2 probe");
    A2ProbeReport rep{};
    rep.lhs_value = scalar_conjugate(inst.f, feas, probe.x_star);

    // Aggregated split: theta over f's pieces, nu over C's rows, mu over the
    // dual-cone generators; stationarity ties the pieces to x_star.
    const int nt = static_cast<int>(inst.f.pieces());
    const int nnu = static_cast<int>(inst.C.rows.size());
    const int nmu = static_cast<int>(splus.size());
    LinearProgram lp(nt + nnu + nmu);
    Vec obj(static_cast<std::size_t>(nt + nnu + nmu), 0.0);
    for (int j = 0; j < nt; ++j)
      obj[static_cast<std::size_t>(j)] = -inst.f.offsets[static_cast<std::size_t>(j)];
    for (int i = 0; i < nnu; ++i)
      obj[static_cast<std::size_t>(nt + i)] = inst.C.rhs[static_cast<std::size_t>(i)];
    for (int r = 0; r < nmu; ++r)
      obj[static_cast<std::size_t>(nt + nnu + r)] =
          -dot(splus[static_cast<std::size_t>(r)], inst.G.shift);
    lp.minimize(obj);
    for (int i = 0; i < inst.n; ++i) {
      Vec row(static_cast<std::size_t>(nt + nnu + nmu), 0.0);
      for (int j = 0; j < nt; ++j)
        row[static_cast<std::size_t>(j)] =
            inst.f.slopes[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      for (int k = 0; k < nnu; ++k)
        row[static_cast<std::size_t>(nt + k)] =
            inst.C.rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      for (int r = 0; r < nmu; ++r)
        row[static_cast<std::size_t>(nt + nnu + r)] =
            gt.apply(splus[static_cast<std::size_t>(r)])[static_cast<std::size_t>(i)];
      lp.add_row(row, RowSense::EQ, probe.x_star[static_cast<std::size_t>(i)]);
    }
    {
      Vec row(static_cast<std::size_t>(nt + nnu + nmu), 0.0);
      for (int j = 0; j < nt; ++j) row[static_cast<std::size_t>(j)] = 1.0;
      lp.add_row(row, RowSense::EQ, 1.0);
    }
    LPResult r = lp_solve(lp);
    rep.rhs_value = r.optimal() ? r.value : kPlusInf;

    rep.lhs = rep.lhs_value <= probe.r + 1e-8;
    rep.rhs = rep.rhs_value <= probe.r + 1e-8;
    out.push_back(rep);
  }
  return out;
}

namespace {

struct DualCore {
  LPResult lp;
  Vec theta, phi, mu, nu;
};

DualCore solve_dual_core(const ScalarInstance& inst, bool loose) {
  const bool comp = inst.kappa.has_value();
  const auto splus = inst.S.dual().generators();
  const int nt = static_cast<int>(inst.f.pieces());
  const int nphi = comp ? static_cast<int>(inst.kappa->pieces()) : 0;
  const int nmu = static_cast<int>(splus.size());
  const int nnu = static_cast<int>(inst.C.rows.size());
  const int nv = nt + nphi + nmu + nnu;
  LinOp gt = inst.G.lin.transpose();

  LinearProgram lp(nv);
  Vec obj(static_cast<std::size_t>(nv), 0.0);
  for (int j = 0; j < nt; ++j)
    obj[static_cast<std::size_t>(j)] = inst.f.offsets[static_cast<std::size_t>(j)];
  if (comp)
    for (int q = 0; q < nphi; ++q)
      obj[static_cast<std::size_t>(nt + q)] =
          inst.kappa->offsets[static_cast<std::size_t>(q)] +
          dot(inst.kappa->slopes[static_cast<std::size_t>(q)], inst.H->shift);
  for (int r = 0; r < nmu; ++r)
    obj[static_cast<std::size_t>(nt + nphi + r)] =
        dot(splus[static_cast<std::size_t>(r)], inst.G.shift);
  for (int i = 0; i < nnu; ++i)
    obj[static_cast<std::size_t>(nt + nphi + nmu + i)] =
        -inst.C.rhs[static_cast<std::size_t>(i)];
  lp.maximize_obj(obj);

  // Stationarity: the pieces, composite, cone, and polytope multipliers must
  // cancel coordinatewise.
  for (int i = 0; i < inst.n; ++i) {
    Vec row(static_cast<std::size_t>(nv), 0.0);
    for (int j = 0; j < nt; ++j)
      row[static_cast<std::size_t>(j)] =
          inst.f.slopes[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    if (comp) {
      LinOp ht = inst.H->lin.transpose();
      for (int q = 0; q < nphi; ++q)
        row[static_cast<std::size_t>(nt + q)] =
            ht.apply(inst.kappa->slopes[static_cast<std::size_t>(q)])
                [static_cast<std::size_t>(i)];
    }
    for (int r = 0; r < nmu; ++r)
      row[static_cast<std::size_t>(nt + nphi + r)] =
          gt.apply(splus[static_cast<std::size_t>(r)])[static_cast<std::size_t>(i)];
    for (int k = 0; k < nnu; ++k)
      row[static_cast<std::size_t>(nt + nphi + nmu + k)] =
          inst.C.rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    lp.add_row(row, RowSense::EQ, 0.0);
  }
  {
    Vec row(static_cast<std::size_t>(nv), 0.0);
    for (int j = 0; j < nt; ++j) row[static_cast<std::size_t>(j)] = 1.0;
    lp.add_row(row, RowSense::EQ, 1.0);
  }
  if (comp) {
    Vec row(static_cast<std::size_t>(nv), 0.0);
    for (int q = 0; q < nphi; ++q) row[static_cast<std::size_t>(nt + q)] = 1.0;
    lp.add_row(row, RowSense::EQ, 1.0);
    if (loose) {
      // lambda1 must lie in the dual cone of P.
      for (const auto& pg : inst.P->generators()) {
        Vec r2(static_cast<std::size_t>(nv), 0.0);
        for (int q = 0; q < nphi; ++q)
          r2[static_cast<std::size_t>(nt + q)] =
              dot(inst.kappa->slopes[static_cast<std::size_t>(q)], pg);
        lp.add_row(r2, RowSense::GE, 0.0);
      }
    }
  }

  DualCore core;
  core.lp = lp_solve(lp);
  if (core.lp.optimal()) {
    const Vec& z = core.lp.x;
    core.theta.assign(z.begin(), z.begin() + nt);
    core.phi.assign(z.begin() + nt, z.begin() + nt + nphi);
    core.mu.assign(z.begin() + nt + nphi, z.begin() + nt + nphi + nmu);
    core.nu.assign(z.begin() + nt + nphi + nmu, z.end());
  }
  return core;
}

}  // namespace

ScalarDualResult build_scalar_dual(const ScalarInstance& inst,
                                   ScalarDualVariant variant) {
  check_instance(inst, "build_scalar_dual");
  const bool loose = variant == ScalarDualVariant::CCD1l ||
                     variant == ScalarDualVariant::CCD2l ||
                     variant == ScalarDualVariant::CCD3l;
  const bool plain_form =
      variant == ScalarDualVariant::D2 || variant == ScalarDualVariant::D3;
  if (plain_form)
    require(!inst.kappa.has_value(),
            "build_scalar_dual: D2/D3 take instances without a composite part");

  DualCore core = solve_dual_core(inst, loose);
  ScalarDualResult out;
  out.status = core.lp.status;
  if (!core.lp.optimal()) return out;
  out.value = core.lp.value;

  const auto splus = inst.S.dual().generators();
  out.lambda2.assign(static_cast<std::size_t>(inst.S.dim()), 0.0);
  for (std::size_t r = 0; r < splus.size(); ++r)
    out.lambda2 = add(out.lambda2, scale(core.mu[r], splus[r]));
  if (inst.kappa.has_value()) {
    out.lambda1.assign(static_cast<std::size_t>(inst.kappa->dim()), 0.0);
    for (std::size_t q = 0; q < core.phi.size(); ++q)
      out.lambda1 = add(out.lambda1, scale(core.phi[q], inst.kappa->slopes[q]));
  }

  const bool wants_xstar = variant != ScalarDualVariant::CCD1 &&
                           variant != ScalarDualVariant::CCD1l;
  const bool wants_ystar = variant == ScalarDualVariant::CCD3 ||
                           variant == ScalarDualVariant::CCD3l ||
                           variant == ScalarDualVariant::D3;
  if (wants_xstar) {
    out.x_star.assign(static_cast<std::size_t>(inst.n), 0.0);
    for (std::size_t j = 0; j < core.theta.size(); ++j)
      out.x_star = add(out.x_star, scale(core.theta[j], inst.f.slopes[j]));
  }
  if (wants_ystar) {
    out.y_star.assign(static_cast<std::size_t>(inst.n), 0.0);
    for (std::size_t k = 0; k < core.nu.size(); ++k)
      out.y_star = add(out.y_star, scale(core.nu[k], inst.C.rows[k]));
  }
  return out;
}

std::optional<Vec> slater_point(const ScalarInstance& inst) {
  check_instance(inst, "slater_point");
  // Variables: x (free), margin s >= 0 bounded to keep the LP finite.
  LinearProgram lp(inst.n + 1);
  Vec obj(static_cast<std::size_t>(inst.n + 1), 0.0);
  obj[static_cast<std::size_t>(inst.n)] = 1.0;
  lp.maximize_obj(obj);
  for (int i = 0; i < inst.n; ++i) lp.mark_free(i);
  for (std::size_t i = 0; i < inst.C.rows.size(); ++i) {
    Vec row(static_cast<std::size_t>(inst.n + 1), 0.0);
    for (int c = 0; c < inst.n; ++c)
      row[static_cast<std::size_t>(c)] = inst.C.rows[i][static_cast<std::size_t>(c)];
    row[static_cast<std::size_t>(inst.n)] = 1.0;
    lp.add_row(row, RowSense::LE, inst.C.rhs[i]);
  }
  LinOp gt = inst.G.lin.transpose();
  for (const auto& nrm : inst.S.normals()) {
    Vec gn = gt.apply(nrm);
    Vec row(static_cast<std::size_t>(inst.n + 1), 0.0);
    for (int c = 0; c < inst.n; ++c)
      row[static_cast<std::size_t>(c)] = gn[static_cast<std::size_t>(c)];
    row[static_cast<std::size_t>(inst.n)] = 1.0;
    lp.add_row(row, RowSense::LE, -dot(nrm, inst.G.shift));
  }
  {
    Vec row(static_cast<std::size_t>(inst.n + 1), 0.0);
    row[static_cast<std::size_t>(inst.n)] = 1.0;
    lp.add_row(row, RowSense::LE, 1000.0);
  }
  LPResult r = lp_solve(lp);
  if (!r.optimal() || r.value < 1e-6) return std::nullopt;
  Vec x(r.x.begin(), r.x.begin() + inst.n);
  return x;
}

bool scalar_crosscheck(const ScalarInstance& inst, const Vec& x_star,
                       double grid_step) {
  check_instance(inst, "scalar_crosscheck");
  require(grid_step > 0, "scalar_crosscheck: grid step");
  require(inst.n <= 2, "scalar_crosscheck: grids limited to two variables");
  Polytope feas = feasible_polytope(inst);

  // Coordinate bounds of the feasible set (must be a bounded instance).
  Vec lo(static_cast<std::size_t>(inst.n), 0.0), hi = lo;
  for (int i = 0; i < inst.n; ++i) {
    for (int dir = 0; dir < 2; ++dir) {
      LinearProgram lp(inst.n);
      Vec obj(static_cast<std::size_t>(inst.n), 0.0);
      obj[static_cast<std::size_t>(i)] = 1.0;
      if (dir == 0)
        lp.minimize(obj);
      else
        lp.maximize_obj(obj);
      for (int j = 0; j < inst.n; ++j) lp.mark_free(j);
      for (std::size_t k = 0; k < feas.rows.size(); ++k)
        lp.add_row(feas.rows[k], RowSense::LE, feas.rhs[k]);
      LPResult r = lp_solve(lp);
      require(r.optimal(), "scalar_crosscheck: unbounded feasible set");
      (dir == 0 ? lo : hi)[static_cast<std::size_t>(i)] = r.value;
    }
  }

  // Grid over the bounding box, +inf off the feasible set.
  std::vector<Vec> samples;
  auto snap = [&](double v) { return std::floor(v / grid_step + 0.5) * grid_step; };
  if (inst.n == 1) {
    for (double v = snap(lo[0]) - grid_step; v <= hi[0] + 1.5 * grid_step;
         v += grid_step)
      samples.push_back({v});
  } else {
    for (double v = snap(lo[0]) - grid_step; v <= hi[0] + 1.5 * grid_step;
         v += grid_step)
      for (double w = snap(lo[1]) - grid_step; w <= hi[1] + 1.5 * grid_step;
           w += grid_step)
        samples.push_back({v, w});
  }
  auto r1 = PolyhedralCone::orthant(1);
  auto objective = [&](const Vec& x) {
    double v = inst.f.eval(x);
    if (inst.kappa.has_value()) v += inst.kappa->eval(inst.H->apply(x));
    return v;
  };
  SampledMap fmap = make_sampled(
      samples,
      [&](const Vec& x) {
        if (!feas.contains(x, 1e-9)) return ExtendedPoint::plus_inf();
        return ExtendedPoint::finite({objective(x)});
      },
      r1);

  bool ok = true;
  // Conjugate path (the conjugate of f + the feasible-set indicator).
  {
    FrontSet front = conjugate(fmap, LinOp::row(x_star));
    double direct = scalar_conjugate(inst.f, feas, x_star);
    double best = -kPlusInf;
    for (const auto& g : front.generators()) best = std::max(best, g[0]);
    ok = ok && std::abs(best - direct) <= 1e-6;
  }
  // Primal path: sampled weak infimum of the objective over the feasible set.
  {
    std::vector<Vec> vals;
    for (std::size_t i = 0; i < fmap.values.size(); ++i)
      if (fmap.values[i].is_finite()) vals.push_back(fmap.values[i].value());
    require(!vals.empty(), "scalar_crosscheck: grid missed the feasible set");
    FrontSet wi = winf(vals, r1);
    double best = kPlusInf;
    for (const auto& g : wi.generators()) best = std::min(best, g[0]);
    LPResult pr = scalar_primal(inst);
    ok = ok && pr.optimal() && std::abs(best - pr.value) <= 1e-6;
  }
  return ok;
}

}  // namespace vecdual
