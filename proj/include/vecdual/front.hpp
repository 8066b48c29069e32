#pragma once

#include <optional>

#include "vecdual/cone.hpp"
#include "vecdual/extended.hpp"
#include "vecdual/grid.hpp"
#include "vecdual/linop.hpp"

namespace vecdual {

// A weak supremum/infimum front of a finite point set, or an improper
// (+inf / -inf) value. A SupFront with generators M denotes the set
// (M-K)\(M-int K); an InfFront denotes (M+K)\(M+int K).
class FrontSet {
 public:
  enum class Kind { Sup, Inf, PlusInfinity, MinusInfinity };

  FrontSet(Kind k, PolyhedralCone cone, std::vector<Vec> gens)
      : kind_(k), cone_(std::move(cone)), gens_(std::move(gens)) {
    if (k == Kind::PlusInfinity || k == Kind::MinusInfinity)
      require(gens_.empty(), "FrontSet: improper kinds carry no generators");
    else
      require(!gens_.empty(), "FrontSet: proper front needs generators");
    for (const auto& g : gens_)
      require_dim(g, static_cast<std::size_t>(cone_.dim()), "front generator");
  }

  Kind kind() const { return kind_; }
  bool proper() const { return kind_ == Kind::Sup || kind_ == Kind::Inf; }
  const PolyhedralCone& cone() const { return cone_; }
  const std::vector<Vec>& generators() const { return gens_; }

 private:
  Kind kind_;
  PolyhedralCone cone_;
  std::vector<Vec> gens_;
};

enum class Label : std::uint8_t { Below, On, Above };

// ---- construction -------------------------------------------------------

// Canonical maximal (Sup) / minimal (Inf) subset of `points`: drops every
// point strictly dominated by another, then sorts and deduplicates.
std::vector<Vec> prune_sup(std::vector<Vec> points, const PolyhedralCone& K);
std::vector<Vec> prune_inf(std::vector<Vec> points, const PolyhedralCone& K);

FrontSet wsup(const std::vector<Vec>& M, const PolyhedralCone& K);
FrontSet winf(const std::vector<Vec>& M, const PolyhedralCone& K);
// Extended-point variants: +inf input makes wsup improper (+inf front) and
// -inf inputs are discarded (they never affect a supremum); dually for winf.
FrontSet wsup(const std::vector<ExtendedPoint>& M, const PolyhedralCone& K);
FrontSet winf(const std::vector<ExtendedPoint>& M, const PolyhedralCone& K);

std::vector<Vec> wmin(const std::vector<Vec>& M, const PolyhedralCone& K);
std::vector<Vec> wmax(const std::vector<Vec>& M, const PolyhedralCone& K);

// -bd K as a SupFront (the neutral element of the WS-sum).
FrontSet neg_bd_cone(const PolyhedralCone& K);

FrontSet negate_front(const FrontSet& f);  // pointwise negation; Sup <-> Inf

// ---- membership / classification ----------------------------------------

bool front_contains(const FrontSet& f, const Vec& y);
Label classify(const FrontSet& f, const Vec& y);

// Signed distance-like gap: negative strictly below the front, zero on it,
// positive strictly above (in the cone direction). Computed arithmetically
// from the cone's unit normals; classification by sign agrees with classify.
double front_gap(const FrontSet& f, const Vec& y);
Label classify_tol(const FrontSet& f, const Vec& y, double eps);

// The three region predicates computed by three independent routes (direct
// generator domination, membership formula, signed gap). Used by the
// partition check so it does not degenerate into a tautology.
struct RegionFlags {
  bool below = false, on = false, above = false;
};
RegionFlags partition_labels(const FrontSet& f, const Vec& y);

bool is_partition_style(const FrontSet& f, const ProbeGrid& grid);

// The closed lower set M-K (not a front); its induced three regions overlap,
// so the partition check on it must fail.
struct LowerClosedSet {
  PolyhedralCone cone;
  std::vector<Vec> gens;
};
RegionFlags partition_labels(const LowerClosedSet& s, const Vec& y);
bool is_partition_style(const LowerClosedSet& s, const ProbeGrid& grid);

// ---- set order and algebra ----------------------------------------------

// A set argument for the ordering predicate: either a finite point list or a
// (finitely generated) front.
struct SetArg {
  const FrontSet* front = nullptr;
  std::vector<Vec> points;
  SetArg(const FrontSet& f) : front(&f) {}
  SetArg(std::vector<Vec> pts) : points(std::move(pts)) {}
};

// A "precedes" B in the set order: B does not meet A - int K.
// Exact when B is a finite list; a front B is represented by its generators
// plus boundary probes at resolution `edge_eps`.
bool precedes(const SetArg& A, const SetArg& B, const PolyhedralCone& K,
              double edge_eps = 1e-3);

// Representative points lying exactly on the front: the generators plus
// On-classified offsets of size eps along the cone's extreme directions
// (plus, in R^2, a dense exact staircase walk when walk_step > 0).
std::vector<Vec> front_probes(const FrontSet& f, double eps = 1e-3,
                              double walk_step = 0.0);

// WS-sum of two Sup fronts (or improper absorbing elements).
FrontSet ws_sum(const FrontSet& U, const FrontSet& V);

// Extended-epigraph element: an operator paired with a front.
struct ExtEpiElement {
  LinOp op;
  FrontSet front;
};

// Pairwise (L1+L2, U1 ws_sum U2).
std::vector<ExtEpiElement> boxplus(const std::vector<ExtEpiElement>& A,
                                   const std::vector<ExtEpiElement>& B);

// Membership test for the union of {L} x (front + K) over the elements.
class PsiMap {
 public:
  explicit PsiMap(std::vector<ExtEpiElement> elems) : elems_(std::move(elems)) {}
  bool contains(const LinOp& L, const Vec& y) const;
  const std::vector<ExtEpiElement>& elements() const { return elems_; }

 private:
  std::vector<ExtEpiElement> elems_;
};

inline PsiMap psi(std::vector<ExtEpiElement> elems) {
  return PsiMap(std::move(elems));
}

// ---- probe-based comparison and distances --------------------------------

// Probe-set equality of two fronts: every probe of each lies within gap eps
// of the other.
bool fronts_probe_equal(const FrontSet& A, const FrontSet& B,
                        double eps = 1e-7, double edge_eps = 1e-3);

// Dense exact polyline sampling of an R^2 front, clipped to `window`
// (inflated by the window diameter before clipping so boundary rays are kept).
std::vector<Vec> walk_front_r2(const FrontSet& f, const Window& window,
                               double step);

double directed_hausdorff(const std::vector<Vec>& from,
                          const std::vector<Vec>& to);
double hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b);

}  // namespace vecdual
