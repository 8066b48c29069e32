#pragma once

#include <functional>

#include "vecdual/extended.hpp"
#include "vecdual/front.hpp"
#include "vecdual/linop.hpp"
#include "vecdual/lp.hpp"

namespace vecdual {

// A vector-valued map known on a finite list of domain samples. Values live
// in the extended codomain (finite vectors or +inf); the cone orders the
// codomain. Proper means: at least one finite value and no -inf values.
struct SampledMap {
  std::vector<Vec> domain_samples;
  std::vector<ExtendedPoint> values;
  PolyhedralCone cone;

  explicit SampledMap(PolyhedralCone c) : cone(std::move(c)) {}

  std::size_t size() const { return domain_samples.size(); }
  int domain_dim() const {
    return domain_samples.empty() ? 0
                                  : static_cast<int>(domain_samples[0].size());
  }
  int codomain_dim() const { return cone.dim(); }
  bool proper() const;
};

SampledMap make_sampled(std::vector<Vec> samples,
                        const std::function<ExtendedPoint(const Vec&)>& fn,
                        PolyhedralCone cone);

// Domain of the map: samples carrying finite values.
std::vector<Vec> dom(const SampledMap& f);

// Conjugate at a linear operator: the weak-sup front of
// { L(x) - F(x) : x in dom F }. Exact for the sampled relaxation (the map
// restricted to its sample grid). Throws on improper maps.
FrontSet conjugate(const SampledMap& f, const LinOp& l);

// (L, y) belongs to the epigraph of the conjugate iff for every sample x:
// F(x) - L(x) + y is not interior-below zero. Universally quantified over the
// finite-valued samples; exact.
bool epi_membership(const SampledMap& f, const LinOp& l, const Vec& y);

// Indicator map of the predicate's sublevel set: zero where the predicate
// holds, +inf elsewhere. Throws if the predicate holds nowhere.
SampledMap indicator(const std::function<bool(const Vec&)>& inside,
                     std::vector<Vec> samples, PolyhedralCone cone);

// Pointwise composition x -> T(G(x)), preserving +inf values. The codomain
// cone must be supplied (or defaults to the nonnegative orthant of T's
// codomain).
SampledMap compose(const LinOp& t, const SampledMap& g, PolyhedralCone cone);
SampledMap compose(const LinOp& t, const SampledMap& g);

// T maps the cone S into the cone K (checked exactly on generators).
bool is_positive_operator(const LinOp& t, const PolyhedralCone& s,
                          const PolyhedralCone& k);

// T maps S nowhere into -int K. Decided by a small LP over the generator
// simplex: maximize the margin t with n.(T sum lambda_i s_i) <= -t for every
// unit normal n of K; a margin above 1e-7 certifies an interior violation.
bool is_weakly_positive(const LinOp& t, const PolyhedralCone& s,
                        const PolyhedralCone& k);

// Property bridge: the conjugate of the indicator of -S stays order-bounded
// at the origin exactly when T is weakly positive. Builds a simplex-grid
// sampling of -S (resolution per generator), computes the conjugate front at
// T, and compares the two verdicts. Returns true when they agree.
bool dom_indicator_conjugate_check(const PolyhedralCone& s,
                                   const PolyhedralCone& k, const LinOp& t,
                                   int simplex_res = 8);

}  // namespace vecdual
