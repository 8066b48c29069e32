#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "vecdual/perturbation.hpp"

namespace vecdual {

namespace {

constexpr double x_lo = -5.0, x_step = 1e-3;
constexpr int x_n = 8001;
constexpr double z_lo = -6.0, z_top = 6.0, z_step = 0.05;
constexpr int z_n = 241;
// Conjugate-side probe axis: covers every reachable c*z - x.
constexpr double u_lo = -21.0, u_step = 0.05;
constexpr int u_n = 881;
constexpr double t_step = 0.1;  // operators (c,d) on [-3,3]^2
constexpr int t_n = 61;
constexpr double neg_inf = -std::numeric_limits<double>::infinity();

double x_at(int i) { return x_lo + i * x_step; }
double u_at(int j) { return u_lo + j * u_step; }
// Dual-side axis is the reflection of the conjugate axis.
double v_at(int j) { return -u_at(u_n - 1 - j); }

// Last probe index whose coordinate is <= p (inclusive on exact hits).
int grid_floor(double p) {
  double r = (p - u_lo) / u_step + 1e-9;
  if (r < 0.0) return -1;
  int j = static_cast<int>(r);
  return j > u_n - 1 ? u_n - 1 : j;
}

// Upper boundary B(u) = max{ (d-1)z - (x^2+2x) : c z - x >= u } of the
// conjugate cloud for one operator T = (c,d), taking z continuous on the
// sampled window [-6, min(6, -2x)] and x on the sample grid. Every per-x
// slice is a plateau followed by a descending line of the T-constant slope
// (d-1)/c, so the envelope needs one suffix maximum for the plateaus and one
// sliding max-heap of line intercepts for the slopes.
void conjugate_staircase(double c, double alpha, std::vector<double>& b,
                         std::vector<double>& plateau,
                         std::vector<std::vector<std::pair<double, int>>>& in) {
  const double sigma = c != 0.0 ? alpha / c : 0.0;
  std::fill(plateau.begin(), plateau.end(), neg_inf);
  for (auto& bucket : in) bucket.clear();

  for (int i = 0; i < x_n; ++i) {
    const double x = x_at(i);
    const double zh = std::min(z_top, -2.0 * x);
    const double wt = x * x + 2.0 * x;
    if (c > 0.0) {
      if (alpha >= 0.0) {
        int jp = grid_floor(c * zh - x);
        if (jp >= 0) plateau[jp] = std::max(plateau[jp], -wt + alpha * zh);
      } else {
        int jk = grid_floor(-6.0 * c - x);
        int jh = grid_floor(c * zh - x);
        if (jk >= 0)
          plateau[jk] = std::max(plateau[jk], -wt - 6.0 * alpha);
        if (jh > jk) in[jk + 1].push_back({-wt + sigma * x, jh});
      }
    } else if (c == 0.0) {
      int jp = grid_floor(-x);
      double v = -wt + (alpha >= 0.0 ? alpha * zh : -6.0 * alpha);
      if (jp >= 0) plateau[jp] = std::max(plateau[jp], v);
    } else {
      // c < 0 reaches the engine only with alpha >= 0 (the admissibility
      // filter rejects c < 0 with d < 1).
      int ja = grid_floor(c * zh - x);
      int jb = grid_floor(-6.0 * c - x);
      if (ja >= 0) plateau[ja] = std::max(plateau[ja], -wt + alpha * zh);
      if (jb > ja) in[ja + 1].push_back({-wt + sigma * x, jb});
    }
  }

  for (int j = u_n - 2; j >= 0; --j)
    plateau[j] = std::max(plateau[j], plateau[j + 1]);

  std::priority_queue<std::pair<double, int>> heap;
  for (int j = 0; j < u_n; ++j) {
    for (const auto& ev : in[j]) heap.push(ev);
    while (!heap.empty() && heap.top().second < j) heap.pop();
    b[j] = plateau[j];
    if (!heap.empty())
      b[j] = std::max(b[j], sigma * u_at(j) + heap.top().first);
  }
}

FrontSet staircase_front(const std::vector<double>& m,
                         const PolyhedralCone& k) {
  std::vector<Vec> gens;
  for (int j = 0; j < u_n; ++j) {
    if (m[j] == neg_inf) continue;
    bool corner = j == u_n - 1 || m[j + 1] == neg_inf || m[j] > m[j + 1];
    if (corner) gens.push_back({v_at(j), m[j]});
  }
  if (gens.empty()) return FrontSet(FrontSet::Kind::MinusInfinity, k, {});
  return FrontSet(FrontSet::Kind::Sup, k, std::move(gens));
}

}  // namespace

bool p1_dom_filter(double c, double d) {
  // T stays admissible exactly when the conjugate cloud's recession ray
  // T(u) - (0, u), u <= 0, leaves the strictly-dominated region: the shifted
  // operator z -> (cz, (d-1)z) must be weakly positive.
  return is_weakly_positive(LinOp::from_rows({{c}, {d - 1.0}}),
                            PolyhedralCone::orthant(1),
                            PolyhedralCone::orthant(2));
}

bool p1_positive_filter(double c, double d) {
  return is_positive_operator(LinOp::from_rows({{c}, {d}}),
                              PolyhedralCone::orthant(1),
                              PolyhedralCone::orthant(2));
}

std::pair<PerturbationProblem, DualReport> example_p1() {
  const PolyhedralCone k = PolyhedralCone::orthant(2);

  // Sampled table of phi(x, z) = (x, x^2+2x+z) on 2x+z <= 0.
  SampledMap phi(k);
  phi.domain_samples.reserve(static_cast<std::size_t>(x_n) * z_n);
  phi.values.reserve(static_cast<std::size_t>(x_n) * z_n);
  for (int i = 0; i < x_n; ++i) {
    const double x = x_at(i);
    for (int kz = 0; kz < z_n; ++kz) {
      const double z = z_lo + kz * z_step;
      phi.domain_samples.push_back({x, z});
      phi.values.push_back(2.0 * x + z <= tol_strict
                               ? ExtendedPoint::finite({x, x * x + 2.0 * x + z})
                               : ExtendedPoint::plus_inf());
    }
  }

  std::vector<LinOp> grid;
  grid.reserve(static_cast<std::size_t>(t_n) * t_n);
  for (int ic = 0; ic < t_n; ++ic)
    for (int id = 0; id < t_n; ++id)
      grid.push_back(
          LinOp::from_rows({{(ic - 30) * t_step}, {(id - 30) * t_step}}));

  // Primal front: winf{(x, x^2+2x) : 2x <= 0} via an ascending strict-min
  // sweep (a point is strictly dominated exactly when an earlier x beats its
  // height).
  std::vector<Vec> primal_gens;
  double run_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < x_n; ++i) {
    const double x = x_at(i);
    if (2.0 * x > tol_strict) break;
    const double q = x * x + 2.0 * x;
    if (q <= run_min) primal_gens.push_back({x, q});
    run_min = std::min(run_min, q);
  }
  FrontSet primal(FrontSet::Kind::Inf, k, primal_gens);

  // Strict prefix minimum of the primal heights over x < v, per dual probe.
  std::vector<double> pmin(u_n, std::numeric_limits<double>::infinity());
  {
    std::size_t at = 0;
    double run = std::numeric_limits<double>::infinity();
    for (int j = 0; j < u_n; ++j) {
      const double v = v_at(j);
      while (at < primal_gens.size() && primal_gens[at][0] < v - 1e-12) {
        run = std::min(run, primal_gens[at][1]);
        ++at;
      }
      pmin[j] = run;
    }
  }

  // Dual staircases per admissible T, pooled into the two envelopes.
  std::vector<double> envelope(u_n, neg_inf), envelope_loose(u_n, neg_inf);
  std::vector<double> b(u_n), plateau(u_n);
  std::vector<std::vector<std::pair<double, int>>> in(u_n);
  std::vector<double> stored;  // dual-side heights of the admissible Ts
  std::vector<std::size_t> stored_t;
  bool weak_ok = true;

  for (std::size_t ti = 0; ti < grid.size(); ++ti) {
    const double c = grid[ti].at(0, 0);
    const double d = grid[ti].at(1, 0);
    if (!p1_dom_filter(c, d)) continue;
    conjugate_staircase(c, d - 1.0, b, plateau, in);
    const bool pos = p1_positive_filter(c, d);
    stored_t.push_back(ti);
    const std::size_t base = stored.size();
    stored.resize(base + u_n);
    for (int j = 0; j < u_n; ++j) {
      const int jd = u_n - 1 - j;  // dual-side index of conjugate index j
      const double h = b[j] == neg_inf ? neg_inf : -b[j];
      stored[base + jd] = h;
      if (h == neg_inf) continue;
      envelope[jd] = std::max(envelope[jd], h);
      if (pos) envelope_loose[jd] = std::max(envelope_loose[jd], h);
      // Per-T weak duality at probe level: no primal point may sit strictly
      // below a dual staircase point.
      if (h > pmin[jd] + 1e-9) weak_ok = false;
    }
  }

  FrontSet dual = staircase_front(envelope, k);
  FrontSet loose = staircase_front(envelope_loose, k);

  if (dual.proper() && !precedes(SetArg(dual), SetArg(primal), k))
    weak_ok = false;
  if (dual.proper() && loose.proper() &&
      !precedes(SetArg(loose), SetArg(dual), k))
    weak_ok = false;

  DualReport report(primal, dual, loose);
  report.weak_duality_ok = weak_ok;
  report.strong_duality_gap = std::numeric_limits<double>::infinity();
  if (dual.proper()) {
    double gap = 0.0;
    for (const Vec& g : primal.generators())
      gap = std::max(gap, std::max(0.0, front_gap(dual, g)));
    report.strong_duality_gap = gap;
  }
  for (std::size_t s = 0; s < stored_t.size(); ++s) {
    const double* h = stored.data() + s * u_n;
    for (int j = 0; j < u_n; ++j) {
      if (envelope[j] == neg_inf || h[j] == neg_inf) continue;
      if (h[j] >= envelope[j] - 1e-7) {
        report.attaining_operators.push_back(grid[stored_t[s]]);
        break;
      }
    }
  }

  PerturbationProblem problem(std::move(phi), 1, 1,
                              PolyhedralCone::orthant(1), std::move(grid));
  return {std::move(problem), std::move(report)};
}

}  // namespace vecdual
