#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "vecdual/scalar.hpp"

using namespace vecdual;

namespace {

AffineMap zero_map(int n) { return AffineMap{LinOp::zero(1, n), {0.0}}; }

// inf { f : x in C, G(x) in -S } one-variable convenience builder.
ScalarInstance line_instance(PiecewiseLinear f, Polytope c) {
  return ScalarInstance(1, std::move(f), std::move(c), zero_map(1),
                        PolyhedralCone::orthant(1));
}

PiecewiseLinear abs_fn() { return PiecewiseLinear{{{1.0}, {-1.0}}, {0.0, 0.0}}; }

// A = C cap G^{-1}(-S) with C = [0,1], G(x) = x - 0.5, S = R+ (A = [0, 0.5]).
ScalarInstance half_interval_instance(PiecewiseLinear f) {
  Polytope c{{{1.0}, {-1.0}}, {1.0, 0.0}};
  AffineMap g{LinOp::identity(1), {-0.5}};
  return ScalarInstance(1, std::move(f), std::move(c), std::move(g),
                        PolyhedralCone::orthant(1));
}

}  // namespace

TEST_CASE("primal solves: bounded, infeasible, unbounded") {
  // min x s.t. x >= 1
  ScalarInstance a =
      line_instance(PiecewiseLinear{{{1.0}}, {0.0}}, Polytope{{{-1.0}}, {-1.0}});
  LPResult ra = scalar_primal(a);
  REQUIRE(ra.optimal());
  CHECK(ra.value == doctest::Approx(1.0));
  CHECK(ra.x[0] == doctest::Approx(1.0));

  // x <= 0 and x >= 1 cannot hold together.
  ScalarInstance b = line_instance(PiecewiseLinear{{{1.0}}, {0.0}},
                                   Polytope{{{1.0}, {-1.0}}, {0.0, -1.0}});
  CHECK(scalar_primal(b).status == LPStatus::Infeasible);

  // min -x with x >= 0 only.
  ScalarInstance c =
      line_instance(PiecewiseLinear{{{-1.0}}, {0.0}}, Polytope{{{-1.0}}, {0.0}});
  CHECK(scalar_primal(c).status == LPStatus::Unbounded);
}

TEST_CASE("primal includes the composite term") {
  // f(x) = x on C = [-1, 2], plus kappa(H(x)) with H(x) = x and
  // kappa(w) = max(w, 0): objective x + max(x,0), minimum -1 at x = -1.
  ScalarInstance inst = line_instance(PiecewiseLinear{{{1.0}}, {0.0}},
                                      Polytope{{{1.0}, {-1.0}}, {2.0, 1.0}});
  inst.with_composite(PiecewiseLinear{{{1.0}, {0.0}}, {0.0, 0.0}},
                      AffineMap{LinOp::identity(1), {0.0}},
                      PolyhedralCone::orthant(1));
  LPResult r = scalar_primal(inst);
  REQUIRE(r.optimal());
  CHECK(r.value == doctest::Approx(-1.0));
  CHECK(r.x[0] == doctest::Approx(-1.0));
}

TEST_CASE("classical conjugates of textbook functions") {
  PiecewiseLinear f = abs_fn();
  CHECK(scalar_conjugate(f, {0.5}) == doctest::Approx(0.0));
  CHECK(scalar_conjugate(f, {1.0}) == doctest::Approx(0.0));
  CHECK(scalar_conjugate(f, {-1.0}) == doctest::Approx(0.0));
  CHECK(scalar_conjugate(f, {2.0}) == kPlusInf);
  CHECK(scalar_conjugate(f, {-1.5}) == kPlusInf);

  // Support function of [0,1] at 3.
  PiecewiseLinear zero{{{0.0}}, {0.0}};
  Polytope unit{{{1.0}, {-1.0}}, {1.0, 0.0}};
  CHECK(scalar_conjugate(zero, unit, {3.0}) == doctest::Approx(3.0));
  CHECK(scalar_conjugate(zero, unit, {-3.0}) == doctest::Approx(0.0));
}

TEST_CASE("conjugate values match a dense grid supremum") {
  std::mt19937 rng(42u);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int rep = 0; rep < 25; ++rep) {
    // Three integer pieces; breakpoints land on multiples of 1/12.
    PiecewiseLinear f;
    for (int j = 0; j < 3; ++j) {
      f.slopes.push_back({static_cast<double>(coef(rng))});
      f.offsets.push_back(static_cast<double>(coef(rng)));
    }
    // Probe x* strictly inside the convex hull of the slopes.
    double lo = 1e9, hi = -1e9;
    for (const auto& s : f.slopes) {
      lo = std::min(lo, s[0]);
      hi = std::max(hi, s[0]);
    }
    if (hi - lo < 0.5) continue;
    double xs = 0.5 * (lo + hi);
    double direct = scalar_conjugate(f, {xs});
    double grid = -kPlusInf;
    for (int i = -360; i <= 360; ++i) {
      double x = i / 12.0;
      grid = std::max(grid, xs * x - f.eval({x}));
    }
    CHECK(direct == doctest::Approx(grid).epsilon(1e-9));
  }
}

TEST_CASE("epigraph-sum identity: reduction when the constraints vanish") {
  // G == 0 and C the whole space: both sides are epi f*.
  ScalarInstance inst = line_instance(abs_fn(), Polytope{});
  std::vector<A2Probe> probes = {{{0.5}, 0.0},  {{0.5}, -0.1}, {{1.0}, 0.0},
                                 {{-0.5}, 0.2}, {{2.0}, 50.0}, {{0.0}, 0.0}};
  auto reports = verify_A2(inst, probes);
  REQUIRE(reports.size() == probes.size());
  for (const auto& rep : reports) {
    CHECK(rep.agree());
    if (std::isfinite(rep.lhs_value))
      CHECK(rep.rhs_value == doctest::Approx(rep.lhs_value).epsilon(1e-8));
    else
      CHECK(rep.rhs_value == kPlusInf);
  }
  // x* = 2 is outside the slope hull: both memberships must be false.
  CHECK_FALSE(reports[4].lhs);
  CHECK_FALSE(reports[4].rhs);
}

TEST_CASE("epigraph-sum identity on the half-interval fixture") {
  // f = 0, A = [0, 0.5]: the conjugate at x* = 1 is the support value 0.5.
  ScalarInstance inst = half_interval_instance(PiecewiseLinear{{{0.0}}, {0.0}});
  auto reports = verify_A2(
      inst, {{{1.0}, 0.5}, {{1.0}, 0.45}, {{1.0}, 0.6}, {{-1.0}, 0.0}});
  CHECK(reports[0].lhs_value == doctest::Approx(0.5));
  CHECK(reports[0].rhs_value == doctest::Approx(0.5));
  CHECK(reports[0].lhs);
  CHECK(reports[0].rhs);
  CHECK_FALSE(reports[1].lhs);
  CHECK_FALSE(reports[1].rhs);
  CHECK(reports[2].agree());
  // Support of [0, 0.5] at -1 is 0 (attained at x = 0).
  CHECK(reports[3].lhs_value == doctest::Approx(0.0));
  CHECK(reports[3].rhs);
}

TEST_CASE("epigraph-sum identity on random Slater instances") {
  std::mt19937 rng(20240820u);
  std::uniform_int_distribution<int> coef(-3, 3);
  int rhs_checked = 0;
  for (int rep = 0; rep < 20; ++rep) {
    int n = 1 + static_cast<int>(rng() % 2);
    PiecewiseLinear f;
    int npieces = 2 + static_cast<int>(rng() % 2);
    for (int j = 0; j < npieces; ++j) {
      Vec s(static_cast<std::size_t>(n));
      for (auto& v : s) v = coef(rng);
      f.slopes.push_back(s);
      f.offsets.push_back(static_cast<double>(coef(rng)));
    }
    // C = [-2, 2]^n, G(x) = x - 1 (componentwise), S the orthant: A is a box
    // with the origin strictly inside (Slater point).
    Polytope c;
    for (int i = 0; i < n; ++i) {
      Vec plus(static_cast<std::size_t>(n), 0.0), minus = plus;
      plus[static_cast<std::size_t>(i)] = 1.0;
      minus[static_cast<std::size_t>(i)] = -1.0;
      c.rows.push_back(plus);
      c.rhs.push_back(2.0);
      c.rows.push_back(minus);
      c.rhs.push_back(2.0);
    }
    AffineMap g{LinOp::identity(n), Vec(static_cast<std::size_t>(n), -1.0)};
    ScalarInstance inst(n, f, c, g, PolyhedralCone::orthant(n));
    REQUIRE(slater_point(inst).has_value());

    std::vector<A2Probe> probes;
    for (int p = 0; p < 10; ++p) {
      Vec xs(static_cast<std::size_t>(n));
      for (auto& v : xs) v = coef(rng);
      probes.push_back({xs, static_cast<double>(coef(rng))});
    }
    for (const auto& rep2 : verify_A2(inst, probes)) {
      CHECK(rep2.agree());
      // Split containment: a valid split never undercuts the conjugate.
      CHECK(rep2.rhs_value >= rep2.lhs_value - 1e-7);
      // Bounded feasible set: the conjugate is finite, and under Slater the
      // split reaches it exactly.
      CHECK(std::isfinite(rep2.lhs_value));
      CHECK(rep2.rhs_value == doctest::Approx(rep2.lhs_value).epsilon(1e-7));
      ++rhs_checked;
    }
  }
  CHECK(rhs_checked == 200);
}

TEST_CASE("all dual variants reach the primal value under Slater") {
  // Composite instance: f(x) = |x|, C = [-2, 2], G(x) = x - 1, S = R+,
  // kappa(w) = max(w, 0) on H(x) = x.
  ScalarInstance inst(1, abs_fn(), Polytope{{{1.0}, {-1.0}}, {2.0, 2.0}},
                      AffineMap{LinOp::identity(1), {-1.0}},
                      PolyhedralCone::orthant(1));
  inst.with_composite(PiecewiseLinear{{{1.0}, {0.0}}, {0.0, 0.0}},
                      AffineMap{LinOp::identity(1), {0.0}},
                      PolyhedralCone::orthant(1));
  REQUIRE(slater_point(inst).has_value());
  LPResult primal = scalar_primal(inst);
  REQUIRE(primal.optimal());
  CHECK(primal.value == doctest::Approx(0.0));  // x = 0 minimizes |x|+max(x,0)

  for (auto variant :
       {ScalarDualVariant::CCD1, ScalarDualVariant::CCD1l, ScalarDualVariant::CCD2,
        ScalarDualVariant::CCD2l, ScalarDualVariant::CCD3,
        ScalarDualVariant::CCD3l}) {
    ScalarDualResult d = build_scalar_dual(inst, variant);
    REQUIRE(d.status == LPStatus::Optimal);
    CHECK(d.value == doctest::Approx(primal.value).epsilon(1e-8));
    CHECK(d.value <= primal.value + 1e-8);  // weak duality
    REQUIRE(d.lambda2.size() == 1);
    CHECK(d.lambda2[0] >= -1e-9);  // multiplier in the dual cone
  }
  // Fenchel-Lagrange forms expose the operator split.
  ScalarDualResult d2 = build_scalar_dual(inst, ScalarDualVariant::CCD2);
  CHECK(d2.x_star.size() == 1);
  ScalarDualResult d3 = build_scalar_dual(inst, ScalarDualVariant::CCD3);
  CHECK(d3.x_star.size() == 1);
  CHECK(d3.y_star.size() == 1);
}

TEST_CASE("plain Fenchel-Lagrange forms on a cone-constrained instance") {
  // No composite part: D2/D3 apply; with one: they are rejected.
  ScalarInstance inst = half_interval_instance(abs_fn());
  LPResult primal = scalar_primal(inst);
  REQUIRE(primal.optimal());
  CHECK(primal.value == doctest::Approx(0.0));
  for (auto variant : {ScalarDualVariant::D2, ScalarDualVariant::D3}) {
    ScalarDualResult d = build_scalar_dual(inst, variant);
    REQUIRE(d.status == LPStatus::Optimal);
    CHECK(d.value == doctest::Approx(primal.value).epsilon(1e-8));
  }
  ScalarInstance comp = inst;
  comp.with_composite(PiecewiseLinear{{{0.0}}, {0.0}},
                      AffineMap{LinOp::identity(1), {0.0}},
                      PolyhedralCone::orthant(1));
  CHECK_THROWS(build_scalar_dual(comp, ScalarDualVariant::D2));
  CHECK_THROWS(build_scalar_dual(comp, ScalarDualVariant::D3));
}

TEST_CASE("constant objective: dual equals primal with zero multipliers") {
  ScalarInstance inst = line_instance(PiecewiseLinear{{{0.0}}, {3.0}}, Polytope{});
  LPResult primal = scalar_primal(inst);
  REQUIRE(primal.optimal());
  CHECK(primal.value == doctest::Approx(3.0));
  ScalarDualResult d = build_scalar_dual(inst, ScalarDualVariant::CCD1);
  REQUIRE(d.status == LPStatus::Optimal);
  CHECK(d.value == doctest::Approx(3.0));
  CHECK(d.lambda2[0] == doctest::Approx(0.0));
}

TEST_CASE("feasible set touching the cone boundary keeps weak duality") {
  // A = {0}: no Slater point, duals still sit below the primal.
  Polytope c{{{1.0}, {-1.0}}, {1.0, 0.0}};
  AffineMap g{LinOp::identity(1), {0.0}};
  ScalarInstance inst(1, PiecewiseLinear{{{1.0}}, {1.0}}, c, g,
                      PolyhedralCone::orthant(1));
  CHECK_FALSE(slater_point(inst).has_value());
  LPResult primal = scalar_primal(inst);
  REQUIRE(primal.optimal());
  CHECK(primal.value == doctest::Approx(1.0));
  ScalarDualResult d = build_scalar_dual(inst, ScalarDualVariant::D2);
  REQUIRE(d.status == LPStatus::Optimal);
  CHECK(d.value <= primal.value + 1e-8);
}

TEST_CASE("loose variants stay below their unrestricted forms") {
  // kappa has a negative slope piece, so dom kappa* sticks out of P+ and the
  // loose restriction genuinely bites.
  std::mt19937 rng(9090u);
  std::uniform_int_distribution<int> coef(-2, 2);
  int bites = 0;
  for (int rep = 0; rep < 30; ++rep) {
    ScalarInstance inst = line_instance(
        PiecewiseLinear{{{static_cast<double>(coef(rng))}},
                        {static_cast<double>(coef(rng))}},
        Polytope{{{1.0}, {-1.0}}, {2.0, 2.0}});
    inst.with_composite(
        PiecewiseLinear{{{-1.0}, {1.0}}, {0.0, static_cast<double>(coef(rng))}},
        AffineMap{LinOp::identity(1), {0.0}}, PolyhedralCone::orthant(1));
    LPResult primal = scalar_primal(inst);
    REQUIRE(primal.optimal());
    for (auto [l, u] : {std::pair{ScalarDualVariant::CCD1l, ScalarDualVariant::CCD1},
                        std::pair{ScalarDualVariant::CCD2l, ScalarDualVariant::CCD2},
                        std::pair{ScalarDualVariant::CCD3l, ScalarDualVariant::CCD3}}) {
      ScalarDualResult loose = build_scalar_dual(inst, l);
      ScalarDualResult full = build_scalar_dual(inst, u);
      REQUIRE(full.status == LPStatus::Optimal);
      double lv = loose.status == LPStatus::Optimal ? loose.value : -kPlusInf;
      CHECK(lv <= full.value + 1e-8);
      CHECK(full.value <= primal.value + 1e-8);
      if (lv < full.value - 1e-6) ++bites;
    }
  }
  CHECK(bites > 0);  // the restriction must matter somewhere in the corpus
}

TEST_CASE("slater detection") {
  ScalarInstance box = half_interval_instance(abs_fn());
  auto pt = slater_point(box);
  REQUIRE(pt.has_value());
  CHECK(box.C.contains(*pt));
  CHECK((*pt)[0] < 0.5 - 1e-6);

  // Infeasible instance.
  ScalarInstance bad = line_instance(abs_fn(),
                                     Polytope{{{1.0}, {-1.0}}, {0.0, -1.0}});
  CHECK_FALSE(slater_point(bad).has_value());
}

TEST_CASE("vector-path embedding agrees with the scalar LP oracle") {
  // Three bounded instances re-run through the sampled one-dimensional
  // machinery; grid steps align with every vertex involved.
  ScalarInstance a = half_interval_instance(PiecewiseLinear{{{0.0}}, {0.0}});
  CHECK(scalar_crosscheck(a, {1.0}, 0.05));
  CHECK(scalar_crosscheck(a, {-1.0}, 0.05));

  ScalarInstance b = half_interval_instance(abs_fn());
  CHECK(scalar_crosscheck(b, {0.5}, 0.05));
  CHECK(scalar_crosscheck(b, {0.0}, 0.05));

  ScalarInstance c = line_instance(
      PiecewiseLinear{{{1.0}, {-1.0}}, {0.0, -1.0}},  // max(x, -x-1)
      Polytope{{{1.0}, {-1.0}}, {2.0, 2.0}});
  CHECK(scalar_crosscheck(c, {1.0}, 0.25));
  CHECK(scalar_crosscheck(c, {-0.5}, 0.25));
}

TEST_CASE("weak duality holds across a random corpus") {
  std::mt19937 rng(31337u);
  std::uniform_int_distribution<int> coef(-2, 2);
  int optimal_pairs = 0;
  for (int rep = 0; rep < 40; ++rep) {
    int n = 1 + static_cast<int>(rng() % 2);
    PiecewiseLinear f;
    for (int j = 0; j < 2; ++j) {
      Vec s(static_cast<std::size_t>(n));
      for (auto& v : s) v = coef(rng);
      f.slopes.push_back(s);
      f.offsets.push_back(static_cast<double>(coef(rng)));
    }
    Polytope c;
    for (int i = 0; i < n; ++i) {
      Vec plus(static_cast<std::size_t>(n), 0.0), minus = plus;
      plus[static_cast<std::size_t>(i)] = 1.0;
      minus[static_cast<std::size_t>(i)] = -1.0;
      c.rows.push_back(plus);
      c.rhs.push_back(2.0);
      c.rows.push_back(minus);
      c.rhs.push_back(2.0);
    }
    Vec shift(static_cast<std::size_t>(n));
    for (auto& v : shift) v = 0.5 * coef(rng);
    AffineMap g{LinOp::identity(n), shift};
    ScalarInstance inst(n, f, c, g, PolyhedralCone::orthant(n));
    LPResult primal = scalar_primal(inst);
    if (!primal.optimal()) continue;
    for (auto variant : {ScalarDualVariant::D2, ScalarDualVariant::D3}) {
      ScalarDualResult d = build_scalar_dual(inst, variant);
      if (d.status != LPStatus::Optimal) continue;
      CHECK(d.value <= primal.value + 1e-8);
      ++optimal_pairs;
      if (slater_point(inst).has_value())
        CHECK(d.value == doctest::Approx(primal.value).epsilon(1e-7));
    }
  }
  CHECK(optimal_pairs > 30);
}
