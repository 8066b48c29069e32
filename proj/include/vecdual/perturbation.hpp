#pragma once

#include <optional>
#include <utility>

#include "vecdual/front.hpp"
#include "vecdual/sampled_map.hpp"

namespace vecdual {

// Ordering cone on a perturbation space whose leading block of coordinates
// carries no order (it is pinned to zero): the cone {0}^zero_dim x positive.
// Shift-style perturbation variables produce exactly this shape; when
// zero_dim > 0 the cone has empty interior.
struct PerturbationCone {
  int zero_dim = 0;
  PolyhedralCone positive;

  PerturbationCone(PolyhedralCone c) : positive(std::move(c)) {}
  PerturbationCone(int zeros, PolyhedralCone c);

  int dim() const { return zero_dim + positive.dim(); }
  bool has_interior() const { return zero_dim == 0; }
  bool contains(const Vec& z, ConeRegion r = ConeRegion::Closed) const;
  // Columns of an operator Z -> Y acting on the ordered (trailing) block.
  LinOp ordered_block(const LinOp& t) const;
  // T maps the cone into K / nowhere into -int K. The pinned block is
  // unconstrained, so only the ordered block matters.
  bool positive_operator(const LinOp& t, const PolyhedralCone& k) const;
  bool weakly_positive_operator(const LinOp& t, const PolyhedralCone& k) const;
};

// A perturbation scheme sampled on a finite product grid: the map phi lives
// on samples (x, z) in R^{x_dim} x R^{z_dim}, is ordered by phi.cone on the
// codomain, and S orders the perturbation coordinates. The zero perturbation
// must be sampled and feasible (some (x, 0) has a finite value).
struct PerturbationProblem {
  SampledMap phi;
  int x_dim = 0;
  int z_dim = 0;
  PerturbationCone S;
  std::vector<LinOp> operator_grid;  // candidate operators Z -> Y

  PerturbationProblem(SampledMap phi_in, int xd, int zd, PerturbationCone s,
                      std::vector<LinOp> grid = {});

  const PolyhedralCone& K() const { return phi.cone; }
  Vec x_part(const Vec& sample) const;
  Vec z_part(const Vec& sample) const;
};

// Composite cone-constrained instance
//   winf { F(x) + kappa(H(x)) : x in C, G(x) in -S }
// sampled over a common X grid; kappa is sampled over its own W grid. The
// in_C mask is aligned with the X samples.
struct CCVPInstance {
  SampledMap F;      // X -> Y, cone K
  SampledMap kappa;  // W -> Y, cone K
  SampledMap H;      // X -> W (extended), cone P on the codomain
  SampledMap G;      // X -> Z (extended), cone S on the codomain
  std::vector<char> in_C;
  PolyhedralCone K, P, S;

  CCVPInstance(SampledMap f, SampledMap kap, SampledMap h, SampledMap g,
               std::vector<char> c_mask);

  int x_dim() const { return F.domain_dim(); }
  int w_dim() const { return P.dim(); }
  int z_dim() const { return S.dim(); }
  // x feasible: in C with G(x) finite and in -S.
  bool feasible(std::size_t i) const;
};

// The objective-with-constraints map x -> F(x) + kappa(H(x)) + I_A(x) over
// the X samples (+inf off the feasible set or off the sampled domain of
// kappa). This is the common primal of every dual variant below.
SampledMap composite_objective(const CCVPInstance& inst);

struct DualReport {
  FrontSet primal_front;
  FrontSet dual_front;
  FrontSet loose_dual_front;
  bool weak_duality_ok = false;
  double strong_duality_gap = 0.0;
  std::vector<LinOp> attaining_operators;

  DualReport(FrontSet primal, FrontSet dual, FrontSet loose)
      : primal_front(std::move(primal)),
        dual_front(std::move(dual)),
        loose_dual_front(std::move(loose)) {}
};

// winf { phi(x, 0) - L(x) } over the sampled domain. Throws when no sample
// (x, 0) carries a finite value.
FrontSet primal_value(const PerturbationProblem& p, const LinOp& l);

// wsup over the admissible part of the operator grid of the negated
// conjugate fronts -phi*(L, T), assembled by pooling generators and taking
// one weak supremum. Admissibility is the sampled stand-in for a proper
// conjugate in the limit: the front must be insensitive to shrinking the
// sampled perturbation window to its middle half (a sup that drifts with
// the window diverges as the window grows). The loose dual additionally
// requires T to map S into K. An empty filtered grid yields the -inf front.
FrontSet dual_value(const PerturbationProblem& p, const LinOp& l);
FrontSet loose_dual_value(const PerturbationProblem& p, const LinOp& l);

// The weak-duality chain: every -phi*(L,T) precedes the primal front, and
// loose dual precedes dual precedes primal.
bool weak_duality_check(const PerturbationProblem& p, const LinOp& l);

// Fronts, gap and attainment for one L. The gap is the one-sided probe
// Hausdorff distance from the primal generators to the dual front (0 within
// tolerance = strong duality attained on the grids); attaining operators are
// those contributing a generator that lies on the pooled dual front.
DualReport strong_duality_check(const PerturbationProblem& p, const LinOp& l,
                                double tolerance);

// Finite stability sweep: strong_duality_check for each L in the grid.
std::vector<DualReport> strong_duality_sweep(const PerturbationProblem& p,
                                             const std::vector<LinOp>& l_grid,
                                             double tolerance);

// Membership probe for the union over the operator grid (optionally only its
// positive part) of the conjugate epigraphs: exists T with y in phi*(L,T)+K.
bool conjugate_epi_union_contains(const PerturbationProblem& p, const LinOp& l,
                                  const Vec& y, bool positive_only);

// The zero-perturbation slice x -> phi(x, 0) as a map over the X samples.
SampledMap zero_slice(const PerturbationProblem& p);

// Qualification conditions checked at sampled scale. C0, C6's monotone part
// and C7 are decided exactly (finite quantifiers); C1-C5 quantify over
// neighborhoods, so they report Holds only when the sampling policy finds a
// witness and Undetermined otherwise (never Fails). C6 additionally needs an
// interior witness for the projected domain; without one it stays
// Undetermined even when the monotone part holds.
enum class Condition { C0, C1, C2, C3, C4, C5, C6, C7 };
enum class CondStatus { Holds, Fails, Undetermined };

struct SamplingPolicy {
  // Neighborhood half-widths (sup norm) around the zero perturbation.
  std::vector<double> radii = {0.5, 1.0, 2.0};
  // Probe operators for the uniformly-bounded condition C1; zero if empty.
  std::vector<LinOp> l_probes;
  // Accepted variation per unit perturbation for the continuity witness C3.
  double continuity_slope = 16.0;
};

CondStatus check_condition(const PerturbationProblem& p, Condition which,
                           const SamplingPolicy& policy = {});

// Shift grids for the perturbation builders. Every shifted argument must
// land exactly on a stored sample (or clearly outside the sampled box, where
// the map is +inf); arguments falling inside the box but off the sample
// lattice reject the instance. Empty members are replaced by defaults: one
// lattice step in each axis direction around zero (x/w), and the spread of
// the constraint image around zero (z).
struct ShiftGrids {
  std::vector<Vec> x_shifts;
  std::vector<Vec> w_shifts;
  std::vector<Vec> z_shifts;
};

// Perturbation schemes for the composite instance. All four agree on the
// zero slice: phi(x, 0) = F(x) + kappa(H(x)) + I_A(x).
//   phi1(x, w, z)              = F(x)    + kappa(H(x)+w)    if x in C, G(x)+z in -S
//   phi2(x, v, w, z)           = F(x+v)  + kappa(H(x)+w)    if x in C, G(x)+z in -S
//   phi3(x, v, v', w, z)       = F(x+v)  + kappa(H(x)+w)    if x+v' in C, G(x)+z in -S
//   phi4(x, v, v'', v', w, z)  = F(x+v)  + kappa(H(x+v'')+w) if x+v' in C, G(x)+z in -S
// with perturbation cones P x S, {0} x P x S, {0}^2 x P x S, {0}^3 x P x S.
PerturbationProblem build_phi1(const CCVPInstance& inst, ShiftGrids g = {});
PerturbationProblem build_phi2(const CCVPInstance& inst, ShiftGrids g = {});
PerturbationProblem build_phi3(const CCVPInstance& inst, ShiftGrids g = {});
PerturbationProblem build_phi4(const CCVPInstance& inst, ShiftGrids g = {});

// Conjugate splitting for the first scheme: the direct product-grid
// conjugate phi1*(L, (T1, T2)) equals
//   (F + T1.H + T2.G + I_C)*(L)  [ws+]  kappa*(T1)  [ws+]  I_{-S}*(T2),
// and the last term drops exactly when T2 maps S into K. Probe equality of
// the assembled fronts; needs shift grids covering the sampled domain of
// kappa from every H(x) (the defaults derived here do).
bool phi1_conjugate_identity(const CCVPInstance& inst, const LinOp& l,
                             const LinOp& t1, const LinOp& t2,
                             ShiftGrids g = {});

// Operator grids for the dual assemblies: shift operators X -> Y and the
// two composite/cone operators W -> Y, Z -> Y.
struct OperatorGrids {
  std::vector<LinOp> l1, l2, l3;
  std::vector<LinOp> t1;
  std::vector<LinOp> t2;
};

// Dual fronts of the composite instance assembled from conjugate fronts and
// weak-sums over the grids, one variant per perturbation scheme:
//   1: -[(F+T1.H+T2.G+I_C)*(0)          [ws+] k*(T1) [ws+] I*(T2)]
//   2: -[F*(L') [ws+] (T1.H+T2.G+I_C)*(-L')       [ws+] k*(T1) [ws+] I*(T2)]
//   3: -[F*(L') [ws+] (T1.H+T2.G)*(-L'-L'') [ws+] I_C*(L'')
//                                                 [ws+] k*(T1) [ws+] I*(T2)]
//   4: -[F*(L') [ws+] (T1.H)*(L'') [ws+] (T2.G)*(-L'-L''-L''')
//                               [ws+] I_C*(L''')  [ws+] k*(T1) [ws+] I*(T2)]
// The loose form restricts T1 to operators mapping P into K and T2 to
// operators mapping S into K, and drops the I_{-S}* term; the plain form
// filters T2 by weak positivity. The report's gap and attainment refer to
// the requested (loose or plain) front.
DualReport build_ccvd(const CCVPInstance& inst, int variant, bool loose,
                      const OperatorGrids& grids);

// The worked one-dimensional example: phi(x, z) = (x, x^2+2x+z) when
// 2x+z <= 0 (else +inf) on x in [-5,3] step 1e-3, z in [-6,6] step 0.05,
// ordered by the plane's nonnegative quadrant with S the nonnegative ray.
// The report fixes L = 0 and sweeps T = (c,d) over [-3,3]^2 step 0.1,
// keeping operators whose conjugate stays proper along the constraint
// recession ray (c >= 0 or d >= 1); the loose front keeps the positive
// operators (c >= 0 and d >= 0). Fronts are probe-resolved at the z step.
std::pair<PerturbationProblem, DualReport> example_p1();

// Internals shared with the tests: the structural filters used by
// example_p1 for one concrete scheme, derived from the machinery rather
// than hard-coded regions.
bool p1_dom_filter(double c, double d);
bool p1_positive_filter(double c, double d);

}  // namespace vecdual
