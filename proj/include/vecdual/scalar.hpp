#pragma once

#include <optional>

#include "vecdual/cone.hpp"
#include "vecdual/linop.hpp"
#include "vecdual/lp.hpp"

namespace vecdual {

// Convex piecewise-linear function: max over affine pieces a_j . x + b_j.
struct PiecewiseLinear {
  std::vector<Vec> slopes;
  Vec offsets;

  int dim() const {
    return slopes.empty() ? 0 : static_cast<int>(slopes[0].size());
  }
  std::size_t pieces() const { return slopes.size(); }
  double eval(const Vec& x) const;
};

// Halfspace intersection D x <= e. Empty rows mean the whole space.
struct Polytope {
  std::vector<Vec> rows;
  Vec rhs;

  bool unrestricted() const { return rows.empty(); }
  bool contains(const Vec& x, double tol = 1e-9) const;
};

// x -> lin(x) + shift.
struct AffineMap {
  LinOp lin;
  Vec shift;

  Vec apply(const Vec& x) const { return add(lin.apply(x), shift); }
};

// inf { f(x) + kappa(H(x)) : x in C, G(x) in -S }. The composite part is
// optional; P orders the composite's domain for the loose dual variants.
struct ScalarInstance {
  int n;
  PiecewiseLinear f;
  Polytope C;
  AffineMap G;
  PolyhedralCone S;
  std::optional<PiecewiseLinear> kappa;
  std::optional<AffineMap> H;
  std::optional<PolyhedralCone> P;

  ScalarInstance(int n_vars, PiecewiseLinear f_in, Polytope c_in, AffineMap g_in,
                 PolyhedralCone s_in)
      : n(n_vars),
        f(std::move(f_in)),
        C(std::move(c_in)),
        G(std::move(g_in)),
        S(std::move(s_in)) {}

  ScalarInstance& with_composite(PiecewiseLinear kappa_in, AffineMap h_in,
                                 PolyhedralCone p_in) {
    kappa = std::move(kappa_in);
    H = std::move(h_in);
    P = std::move(p_in);
    return *this;
  }
};

constexpr double kPlusInf = std::numeric_limits<double>::infinity();

// Primal optimal value/point by one LP (epigraph reformulation).
LPResult scalar_primal(const ScalarInstance& inst);

// Classical conjugate sup_{x in C} (x_star . x - f(x)); +inf when unbounded.
// The overload without a polytope takes the supremum over the whole space.
double scalar_conjugate(const PiecewiseLinear& f, const Polytope& c,
                        const Vec& x_star);
double scalar_conjugate(const PiecewiseLinear& f, const Vec& x_star);

struct A2Probe {
  Vec x_star;
  double r;
};

struct A2ProbeReport {
  double lhs_value;  // (f + indicator of the feasible set)* at x_star
  double rhs_value;  // best epigraph-sum split achieving x_star
  bool lhs;          // lhs_value <= r
  bool rhs;          // rhs_value <= r
  bool agree() const { return lhs == rhs; }
};

// Epigraph-sum identity check: membership of (x_star, r) in the conjugate
// epigraph of f restricted to the feasible set, versus the aggregated-split
// LP over epi f* + epi sigma_C + the union over the dual cone of S.
std::vector<A2ProbeReport> verify_A2(const ScalarInstance& inst,
                                     const std::vector<A2Probe>& probes);

enum class ScalarDualVariant { CCD1, CCD1l, CCD2, CCD2l, CCD3, CCD3l, D2, D3 };

struct ScalarDualResult {
  LPStatus status = LPStatus::Infeasible;
  double value = 0.0;  // -inf conventions: Infeasible status, value unused
  Vec x_star;          // present for the Fenchel-Lagrange variants
  Vec y_star;          // present for the three-operator splits
  Vec lambda1;         // composite multiplier (empty without a composite part)
  Vec lambda2;         // cone multiplier in the dual cone of S
};

// Dual optimal value and multipliers for the requested variant, built as a
// single LP (piecewise-linear data close under dualization). The D2/D3 forms
// require an instance without a composite part.
ScalarDualResult build_scalar_dual(const ScalarInstance& inst,
                                   ScalarDualVariant variant);

// Strictly feasible point: x interior to C with G(x) interior to -S (margin
// 1e-6); nullopt when none exists.
std::optional<Vec> slater_point(const ScalarInstance& inst);

// Embeds the instance into the one-dimensional vector machinery on a grid of
// the given step and compares: the sampled conjugate front against the LP
// conjugate at x_star, and the sampled weak-inf against the LP primal value.
// Grids must align with the instance's vertices for exact agreement; 1e-6
// tolerance.
bool scalar_crosscheck(const ScalarInstance& inst, const Vec& x_star,
                       double grid_step);

}  // namespace vecdual
