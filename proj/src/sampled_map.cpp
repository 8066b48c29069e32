#include "vecdual/sampled_map.hpp"

#include <stdexcept>

namespace vecdual {

bool SampledMap::proper() const {
  bool any_finite = false;
  for (const auto& v : values) {
    if (v.is_minus_inf()) return false;
    if (v.is_finite()) any_finite = true;
  }
  return any_finite;
}

namespace {

void check_map(const SampledMap& f, const char* who) {
  require(f.domain_samples.size() == f.values.size(),
          std::string(who) + ": samples/values length mismatch");
  require(!f.domain_samples.empty(), std::string(who) + ": empty sample set");
  for (const auto& v : f.values)
    if (v.is_finite())
      require(v.value().size() == static_cast<std::size_t>(f.cone.dim()),
              std::string(who) + ": value dimension mismatch");
  if (!f.proper()) throw std::invalid_argument(std::string(who) + ": improper map");
}

void check_shapes(const SampledMap& f, const LinOp& l, const char* who) {
  require(l.cols == f.domain_dim(), std::string(who) + ": operator domain mismatch");
  require(l.rows == f.codomain_dim(),
          std::string(who) + ": operator codomain mismatch");
}

}  // namespace

SampledMap make_sampled(std::vector<Vec> samples,
                        const std::function<ExtendedPoint(const Vec&)>& fn,
                        PolyhedralCone cone) {
  SampledMap f(std::move(cone));
  f.domain_samples = std::move(samples);
  f.values.reserve(f.domain_samples.size());
  for (const auto& x : f.domain_samples) f.values.push_back(fn(x));
  check_map(f, "make_sampled");
  return f;
}

std::vector<Vec> dom(const SampledMap& f) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (f.values[i].is_finite()) out.push_back(f.domain_samples[i]);
  return out;
}

FrontSet conjugate(const SampledMap& f, const LinOp& l) {
  check_map(f, "conjugate");
  check_shapes(f, l, "conjugate");
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (!f.values[i].is_finite()) continue;
    pts.push_back(sub(l.apply(f.domain_samples[i]), f.values[i].value()));
  }
  return wsup(pts, f.cone);
}

bool epi_membership(const SampledMap& f, const LinOp& l, const Vec& y) {
  check_map(f, "epi_membership");
  check_shapes(f, l, "epi_membership");
  require_dim(y, static_cast<std::size_t>(f.codomain_dim()), "epi_membership y");
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (!f.values[i].is_finite()) continue;  // +inf value: trivially outside
    Vec v = add(sub(f.values[i].value(), l.apply(f.domain_samples[i])), y);
    // v in -int K would break membership.
    if (f.cone.contains(neg(v), ConeRegion::Interior)) return false;
  }
  return true;
}

SampledMap indicator(const std::function<bool(const Vec&)>& inside,
                     std::vector<Vec> samples, PolyhedralCone cone) {
  Vec zero(static_cast<std::size_t>(cone.dim()), 0.0);
  SampledMap f(std::move(cone));
  f.domain_samples = std::move(samples);
  f.values.reserve(f.domain_samples.size());
  bool any = false;
  for (const auto& x : f.domain_samples) {
    if (inside(x)) {
      f.values.push_back(ExtendedPoint::finite(zero));
      any = true;
    } else {
      f.values.push_back(ExtendedPoint::plus_inf());
    }
  }
  if (!any) throw std::invalid_argument("indicator: predicate holds nowhere");
  return f;
}

SampledMap compose(const LinOp& t, const SampledMap& g, PolyhedralCone cone) {
  check_map(g, "compose");
  require(t.cols == g.codomain_dim(), "compose: operator/codomain mismatch");
  require(t.rows == cone.dim(), "compose: result cone dimension mismatch");
  SampledMap out(std::move(cone));
  out.domain_samples = g.domain_samples;
  out.values.reserve(g.values.size());
  for (const auto& v : g.values) {
    if (v.is_finite())
      out.values.push_back(ExtendedPoint::finite(t.apply(v.value())));
    else
      out.values.push_back(v);
  }
  return out;
}

SampledMap compose(const LinOp& t, const SampledMap& g) {
  return compose(t, g, PolyhedralCone::orthant(t.rows));
}

bool is_positive_operator(const LinOp& t, const PolyhedralCone& s,
                          const PolyhedralCone& k) {
  require(t.cols == s.dim(), "is_positive_operator: domain mismatch");
  require(t.rows == k.dim(), "is_positive_operator: codomain mismatch");
  for (const auto& g : s.generators())
    if (!k.contains(t.apply(g), ConeRegion::Closed)) return false;
  return true;
}

bool is_weakly_positive(const LinOp& t, const PolyhedralCone& s,
                        const PolyhedralCone& k) {
  require(t.cols == s.dim(), "is_weakly_positive: domain mismatch");
  require(t.rows == k.dim(), "is_weakly_positive: codomain mismatch");
  const auto& gens = s.generators();
  const int ng = static_cast<int>(gens.size());
  // Variables: lambda_1..lambda_ng >= 0, margin >= 0.
  LinearProgram lp(ng + 1);
  Vec obj(static_cast<std::size_t>(ng + 1), 0.0);
  obj[static_cast<std::size_t>(ng)] = 1.0;
  lp.maximize_obj(obj);
  {
    Vec row(static_cast<std::size_t>(ng + 1), 0.0);
    for (int i = 0; i < ng; ++i) row[static_cast<std::size_t>(i)] = 1.0;
    lp.add_row(row, RowSense::EQ, 1.0);
  }
  for (const auto& n : k.normals()) {
    Vec row(static_cast<std::size_t>(ng + 1), 0.0);
    for (int i = 0; i < ng; ++i)
      row[static_cast<std::size_t>(i)] =
          dot(n, t.apply(gens[static_cast<std::size_t>(i)]));
    row[static_cast<std::size_t>(ng)] = 1.0;
    lp.add_row(row, RowSense::LE, 0.0);
  }
  LPResult r = lp_solve(lp);
  if (r.status == LPStatus::Infeasible) return true;  // not even in -K
  require(r.optimal(), "is_weakly_positive: LP did not solve");
  return r.value <= 1e-7;
}

bool dom_indicator_conjugate_check(const PolyhedralCone& s,
                                   const PolyhedralCone& k, const LinOp& t,
                                   int simplex_res) {
  require(simplex_res >= 2, "dom_indicator_conjugate_check: resolution");
  const auto& gens = s.generators();
  const int ng = static_cast<int>(gens.size());
  // Simplex-grid combinations of the generators, negated (samples of -S).
  std::vector<Vec> samples;
  std::vector<int> counts(static_cast<std::size_t>(ng), 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == ng - 1) {
      counts[static_cast<std::size_t>(idx)] = left;
      Vec x(static_cast<std::size_t>(s.dim()), 0.0);
      for (int i = 0; i < ng; ++i)
        x = add(x, scale(static_cast<double>(counts[static_cast<std::size_t>(i)]) /
                             simplex_res,
                         gens[static_cast<std::size_t>(i)]));
      samples.push_back(neg(x));
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[static_cast<std::size_t>(idx)] = c;
      rec(idx + 1, left - c);
    }
  };
  rec(0, simplex_res);
  SampledMap ind =
      indicator([](const Vec&) { return true; }, std::move(samples), k);
  FrontSet front = conjugate(ind, t);
  Vec origin(static_cast<std::size_t>(k.dim()), 0.0);
  bool bounded = classify(front, origin) != Label::Below;
  return bounded == is_weakly_positive(t, s, k);
}

}  // namespace vecdual
