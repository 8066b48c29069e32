#include "vecdual/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "vecdual/farkas.hpp"
#include "vecdual/kernels.hpp"
#include "vecdual/properties.hpp"
#include "vecdual/scalar.hpp"

namespace vecdual {

namespace {

std::pair<int, int> offset_to_line_col(const std::string& text,
                                       std::size_t byte) {
  int line = 1, col = 1;
  const std::size_t limit = std::min(byte, text.size());
  for (std::size_t i = 0; i < limit; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void fail_schema(const std::string& msg) {
  throw ScenarioError("scenario: " + msg);
}

const Json& need(const Json& j, const char* key, const char* ctx) {
  if (!j.is_object()) fail_schema(std::string(ctx) + " must be an object");
  auto it = j.find(key);
  if (it == j.end())
    fail_schema(std::string(ctx) + " is missing required field '" + key + "'");
  return *it;
}

ScenarioTask parse_task(const std::string& t) {
  if (t == "primal") return ScenarioTask::Primal;
  if (t == "dual") return ScenarioTask::Dual;
  if (t == "farkas") return ScenarioTask::Farkas;
  if (t == "representation") return ScenarioTask::Representation;
  if (t == "epigraph_sum") return ScenarioTask::EpigraphSum;
  if (t == "properties") return ScenarioTask::Properties;
  if (t == "example_p1") return ScenarioTask::ExampleP1;
  fail_schema("unknown task '" + t + "'");
}

const char* task_name(ScenarioTask t) {
  switch (t) {
    case ScenarioTask::Primal:
      return "primal";
    case ScenarioTask::Dual:
      return "dual";
    case ScenarioTask::Farkas:
      return "farkas";
    case ScenarioTask::Representation:
      return "representation";
    case ScenarioTask::EpigraphSum:
      return "epigraph_sum";
    case ScenarioTask::Properties:
      return "properties";
    default:
      return "example_p1";
  }
}

std::vector<LinOp> ops_from_json(const Json& j, const char* ctx) {
  if (!j.is_array()) fail_schema(std::string(ctx) + " must be an array");
  std::vector<LinOp> ops;
  ops.reserve(j.size());
  for (const auto& e : j) ops.push_back(linop_from_json(e));
  return ops;
}

// Perturbation problem payload:
//   {"phi": map, "x_dim": n, "z_dim": m,
//    "sign_cone": cone | {"zero_dim": k, "positive": cone},
//    "operators": [op..]}                                  (direct form)
// or
//   {"ccvp": {"F","kappa","H","G","in_C"}, "scheme": 1..4} (composite form)
CCVPInstance ccvp_from_json(const Json& j) {
  SampledMap f = sampled_map_from_json(need(j, "F", "ccvp"));
  SampledMap kap = sampled_map_from_json(need(j, "kappa", "ccvp"));
  SampledMap h = sampled_map_from_json(need(j, "H", "ccvp"));
  SampledMap g = sampled_map_from_json(need(j, "G", "ccvp"));
  const Json& mj = need(j, "in_C", "ccvp");
  if (!mj.is_array()) fail_schema("ccvp.in_C must be an array of 0/1");
  std::vector<char> mask;
  for (const auto& e : mj) {
    if (!e.is_number_integer()) fail_schema("ccvp.in_C entries must be 0/1");
    mask.push_back(static_cast<char>(e.get<int>() != 0));
  }
  return CCVPInstance(std::move(f), std::move(kap), std::move(h), std::move(g),
                      std::move(mask));
}

PerturbationProblem problem_from_json(const Json& inst) {
  if (inst.contains("ccvp")) {
    CCVPInstance c = ccvp_from_json(inst.at("ccvp"));
    int scheme = 1;
    if (inst.contains("scheme")) {
      const Json& sj = inst.at("scheme");
      if (!sj.is_number_integer()) fail_schema("instance.scheme must be 1..4");
      scheme = sj.get<int>();
    }
    PerturbationProblem p = [&]() -> PerturbationProblem {
      switch (scheme) {
        case 1:
          return build_phi1(c);
        case 2:
          return build_phi2(c);
        case 3:
          return build_phi3(c);
        case 4:
          return build_phi4(c);
        default:
          fail_schema("instance.scheme must be 1..4");
      }
    }();
    if (inst.contains("operators"))
      p.operator_grid = ops_from_json(inst.at("operators"), "operators");
    return p;
  }
  SampledMap phi = sampled_map_from_json(need(inst, "phi", "instance"));
  const Json& xj = need(inst, "x_dim", "instance");
  const Json& zj = need(inst, "z_dim", "instance");
  if (!xj.is_number_integer() || !zj.is_number_integer())
    fail_schema("instance x_dim/z_dim must be integers");
  const Json& sj = need(inst, "sign_cone", "instance");
  PerturbationCone s = [&]() -> PerturbationCone {
    if (sj.is_object() && sj.contains("zero_dim")) {
      const Json& zd = sj.at("zero_dim");
      if (!zd.is_number_integer() || zd.get<int>() < 0)
        fail_schema("sign_cone.zero_dim must be a nonnegative integer");
      return PerturbationCone(zd.get<int>(),
                              cone_from_json(need(sj, "positive", "sign_cone")));
    }
    return PerturbationCone(cone_from_json(sj));
  }();
  std::vector<LinOp> grid;
  if (inst.contains("operators"))
    grid = ops_from_json(inst.at("operators"), "operators");
  return PerturbationProblem(std::move(phi), xj.get<int>(), zj.get<int>(),
                             std::move(s), std::move(grid));
}

Window window_for_generators(const std::vector<Vec>& gens) {
  const std::size_t d = gens.empty() ? 0 : gens[0].size();
  Vec lo(d, 0.0), hi(d, 0.0);
  for (std::size_t a = 0; a < d; ++a) {
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    for (const auto& g : gens) {
      mn = std::min(mn, g[a]);
      mx = std::max(mx, g[a]);
    }
    double pad = 0.5 * std::max(1.0, mx - mn);
    lo[a] = mn - pad;
    hi[a] = mx + pad;
  }
  return Window{lo, hi};
}

// CSV dump next to the report; returns the file name recorded in the report
// (empty for improper fronts, which have no probe classification).
std::string dump_front_csv(const FrontSet& f, const std::string& out_dir,
                           const std::string& base, int resolution) {
  if (!f.proper()) return "";
  std::string file = base + ".csv";
  emit_front_csv(f, window_for_generators(f.generators()), resolution,
                 out_dir + "/" + file);
  return file;
}

Json front_summary(const FrontSet& f) {
  Json j;
  switch (f.kind()) {
    case FrontSet::Kind::Sup:
      j["kind"] = "sup";
      break;
    case FrontSet::Kind::Inf:
      j["kind"] = "inf";
      break;
    case FrontSet::Kind::PlusInfinity:
      j["kind"] = "+inf";
      break;
    default:
      j["kind"] = "-inf";
      break;
  }
  j["generators"] = f.generators().size();
  return j;
}

LinOp zero_operator_for(const PerturbationProblem& p) {
  return LinOp(p.K().dim(), p.x_dim);
}

// ---- task handlers --------------------------------------------------------

void run_primal(const Scenario& s, const std::string& out_dir, Json& results,
                std::vector<std::string>& violations) {
  PerturbationProblem p = problem_from_json(need(s.body, "instance", "primal"));
  LinOp l = s.body.contains("L") ? linop_from_json(s.body.at("L"))
                                 : zero_operator_for(p);
  FrontSet front = primal_value(p, l);
  results["primal_front"] = front_to_json(front);
  results["primal_summary"] = front_summary(front);
  std::string csv = dump_front_csv(front, out_dir, s.name + ".primal",
                                   s.probe_res);
  if (!csv.empty()) results["primal_csv"] = csv;
  if (!front.proper())
    violations.push_back("primal front is improper");
}

void run_dual(const Scenario& s, const std::string& out_dir, Json& results,
              std::vector<std::string>& violations) {
  std::optional<DualReport> report;
  if (s.body.contains("variant")) {
    const Json& vj = s.body.at("variant");
    if (!vj.is_number_integer()) fail_schema("dual.variant must be 1..4");
    CCVPInstance inst =
        ccvp_from_json(need(need(s.body, "instance", "dual"), "ccvp", "dual"));
    OperatorGrids grids;
    if (s.body.contains("grids")) {
      const Json& gj = s.body.at("grids");
      if (gj.contains("l1")) grids.l1 = ops_from_json(gj.at("l1"), "grids.l1");
      if (gj.contains("l2")) grids.l2 = ops_from_json(gj.at("l2"), "grids.l2");
      if (gj.contains("l3")) grids.l3 = ops_from_json(gj.at("l3"), "grids.l3");
      if (gj.contains("t1")) grids.t1 = ops_from_json(gj.at("t1"), "grids.t1");
      if (gj.contains("t2")) grids.t2 = ops_from_json(gj.at("t2"), "grids.t2");
    }
    report.emplace(build_ccvd(inst, vj.get<int>(),
                              s.body.value("loose", false), grids));
  } else {
    PerturbationProblem p = problem_from_json(need(s.body, "instance", "dual"));
    LinOp l = s.body.contains("L") ? linop_from_json(s.body.at("L"))
                                   : zero_operator_for(p);
    report.emplace(strong_duality_check(p, l, s.tolerance));
  }
  const DualReport& r = *report;
  results["weak_duality_ok"] = r.weak_duality_ok;
  results["strong_duality_gap"] = r.strong_duality_gap;
  results["attaining_operators"] = r.attaining_operators.size();
  results["primal_front"] = front_summary(r.primal_front);
  results["dual_front"] = front_summary(r.dual_front);
  results["loose_dual_front"] = front_summary(r.loose_dual_front);
  for (auto [front, base] :
       {std::pair<const FrontSet*, const char*>{&r.primal_front, "primal"},
        {&r.dual_front, "dual"},
        {&r.loose_dual_front, "loose_dual"}}) {
    std::string csv = dump_front_csv(*front, out_dir,
                                     s.name + "." + base, s.probe_res);
    if (!csv.empty()) results[std::string(base) + "_csv"] = csv;
  }
  if (!r.weak_duality_ok) violations.push_back("weak duality failed");
}

void run_farkas(const Scenario& s, const std::string& out_dir, Json& results,
                std::vector<std::string>& violations) {
  (void)out_dir;
  PerturbationProblem p = problem_from_json(need(s.body, "instance", "farkas"));
  std::vector<LinOp> l_grid;
  if (s.body.contains("L_grid"))
    l_grid = ops_from_json(s.body.at("L_grid"), "L_grid");
  else if (s.body.contains("L"))
    l_grid.push_back(linop_from_json(s.body.at("L")));
  else
    l_grid.push_back(zero_operator_for(p));
  std::vector<Vec> y_grid =
      point_list_from_json(need(s.body, "y_grid", "farkas"));
  FarkasMode mode = FarkasMode::AnyOperator;
  if (s.body.contains("mode")) {
    std::string m = s.body.at("mode").get<std::string>();
    if (m == "positive")
      mode = FarkasMode::PositiveOperator;
    else if (m != "any")
      fail_schema("farkas.mode must be 'any' or 'positive'");
  }
  FarkasEquivalenceReport rep = check_farkas_equivalence(p, l_grid, y_grid, mode);
  results["probes"] = rep.probes;
  results["alpha_count"] = rep.alpha_count;
  results["witness_count"] = rep.witness_count;
  results["grid_witness_count"] = rep.grid_witness_count;
  results["certificate_witness_count"] = rep.certificate_witness_count;
  results["alpha_without_witness"] = rep.alpha_without_witness;
  results["witness_without_alpha"] = rep.witness_without_alpha;
  results["equivalent"] = rep.equivalent();
  Json mism = Json::array();
  for (const auto& [li, yi] : rep.mismatches)
    mism.push_back(Json{{"l_index", li}, {"y_index", yi}});
  results["mismatches"] = std::move(mism);
  // Certificates for probes the operator grid misses: the constructive
  // fallback's artifacts, recorded for audit.
  Json certs = Json::array();
  for (std::size_t li = 0; li < l_grid.size(); ++li)
    for (std::size_t yi = 0; yi < y_grid.size(); ++yi) {
      FarkasInstance fi(p, l_grid[li], y_grid[yi]);
      if (!verify_alpha(fi)) continue;
      if (search_certificate(fi, p.operator_grid,
                             mode == FarkasMode::PositiveOperator))
        continue;
      try {
        Certificate c = construct_certificate(fi);
        Json cj = certificate_to_json(c);
        cj["l_index"] = li;
        cj["y_index"] = yi;
        certs.push_back(std::move(cj));
      } catch (const std::exception&) {
        // Already tabulated as alpha_without_witness.
      }
    }
  results["certificates"] = std::move(certs);
  if (rep.witness_without_alpha > 0)
    violations.push_back("a witnessed statement failed the unperturbed check");
}

void run_representation(const Scenario& s, const std::string& out_dir,
                        Json& results, std::vector<std::string>& violations) {
  (void)out_dir;
  PerturbationProblem p =
      problem_from_json(need(s.body, "instance", "representation"));
  std::vector<LinOp> l_grid =
      ops_from_json(need(s.body, "L_grid", "representation"), "L_grid");
  std::vector<Vec> y_grid =
      point_list_from_json(need(s.body, "y_grid", "representation"));
  bool positive_only = s.body.value("positive_only", false);
  RepresentationReport rep =
      verify_M_representation(p, l_grid, y_grid, positive_only);
  results["holds_on_probes"] = rep.holds_on_probes;
  results["probes"] = rep.probes;
  results["rescued"] = rep.rescued;
  Json cex = Json::array();
  for (const auto& c : rep.counterexamples) {
    cex.push_back(Json{{"l_index", c.l_index},
                       {"y_index", c.y_index},
                       {"in_unperturbed_epi", c.in_unperturbed_epi},
                       {"in_operator_union", c.in_operator_union},
                       {"certificate_covers", c.certificate_covers}});
    if (c.in_operator_union && !c.in_unperturbed_epi)
      violations.push_back("operator union escaped the unperturbed epigraph");
  }
  results["counterexamples"] = std::move(cex);
}

void run_epigraph_sum(const Scenario& s, const std::string& out_dir,
                      Json& results, std::vector<std::string>& violations) {
  (void)out_dir;
  ScalarInstance inst = scalar_instance_from_json(
      need(s.body, "scalar_instance", "epigraph_sum"));
  std::vector<A2Probe> probes;
  const Json& pj = need(s.body, "probes", "epigraph_sum");
  if (!pj.is_array()) fail_schema("epigraph_sum.probes must be an array");
  for (const auto& e : pj) {
    A2Probe probe;
    probe.x_star = vec_from_json(need(e, "x_star", "probe"));
    const Json& rj = need(e, "r", "probe");
    if (!rj.is_number()) fail_schema("probe.r must be a number");
    probe.r = rj.get<double>();
    probes.push_back(std::move(probe));
  }

  auto reports = verify_A2(inst, probes);
  Json pr = Json::array();
  int disagreements = 0;
  for (const auto& r : reports) {
    pr.push_back(Json{{"lhs_value", r.lhs_value},
                      {"rhs_value", r.rhs_value},
                      {"lhs", r.lhs},
                      {"rhs", r.rhs},
                      {"agree", r.agree()}});
    if (!r.agree()) ++disagreements;
  }
  results["probe_reports"] = std::move(pr);
  results["agreement"] = disagreements == 0;
  if (disagreements > 0)
    violations.push_back(std::to_string(disagreements) +
                         " epigraph-sum probes disagree");

  std::optional<Vec> slater = slater_point(inst);
  results["slater"] = slater.has_value();
  LPResult primal = scalar_primal(inst);
  results["primal_status"] = primal.optimal() ? "optimal" : "not optimal";
  if (primal.optimal()) results["primal_value"] = primal.value;

  const bool composite = inst.kappa.has_value();
  std::vector<std::pair<const char*, ScalarDualVariant>> variants{
      {"CCD1", ScalarDualVariant::CCD1},   {"CCD1l", ScalarDualVariant::CCD1l},
      {"CCD2", ScalarDualVariant::CCD2},   {"CCD2l", ScalarDualVariant::CCD2l},
      {"CCD3", ScalarDualVariant::CCD3},   {"CCD3l", ScalarDualVariant::CCD3l}};
  if (!composite) {
    variants.push_back({"D2", ScalarDualVariant::D2});
    variants.push_back({"D3", ScalarDualVariant::D3});
  }
  Json duals;
  for (const auto& [name, v] : variants) {
    ScalarDualResult d = build_scalar_dual(inst, v);
    Json dj;
    dj["status"] = d.status == LPStatus::Optimal ? "optimal" : "not optimal";
    if (d.status == LPStatus::Optimal) {
      dj["value"] = d.value;
      if (primal.optimal()) {
        if (d.value > primal.value + 1e-7)
          violations.push_back(std::string(name) + " exceeds the primal value");
        if (slater.has_value() &&
            std::abs(d.value - primal.value) > s.tolerance)
          violations.push_back(std::string(name) +
                               " misses the primal value under strict "
                               "feasibility");
      }
    }
    duals[name] = std::move(dj);
  }
  results["duals"] = std::move(duals);
}

void run_properties(const Scenario& s, const std::string& out_dir,
                    Json& results, std::vector<std::string>& violations) {
  (void)out_dir;
  SuiteCounts counts;
  if (s.body.contains("counts")) {
    const Json& c = s.body.at("counts");
    if (!c.is_object()) fail_schema("properties.counts must be an object");
    auto get = [&](const char* key, int fallback) {
      if (!c.contains(key)) return fallback;
      const Json& v = c.at(key);
      if (!v.is_number_integer() || v.get<int>() < 0)
        fail_schema(std::string("properties.counts.") + key +
                    " must be a nonnegative integer");
      return v.get<int>();
    };
    counts.weak_sets_r2 = get("weak_sets_r2", counts.weak_sets_r2);
    counts.weak_sets_r3 = get("weak_sets_r3", counts.weak_sets_r3);
    counts.bridge_maps = get("bridge_maps", counts.bridge_maps);
    counts.farkas_instances = get("farkas_instances", counts.farkas_instances);
    counts.farkas_probes = get("farkas_probes", counts.farkas_probes);
    counts.certificate_fixtures =
        get("certificate_fixtures", counts.certificate_fixtures);
    counts.split_instances = get("split_instances", counts.split_instances);
    counts.scalar_slater = get("scalar_slater", counts.scalar_slater);
    counts.scalar_nonslater = get("scalar_nonslater", counts.scalar_nonslater);
  }
  std::vector<std::string> selected;
  if (s.body.contains("suites")) {
    const Json& sj = s.body.at("suites");
    if (!sj.is_array()) fail_schema("properties.suites must be an array");
    for (const auto& e : sj) selected.push_back(e.get<std::string>());
  }
  auto wanted = [&](const char* name) {
    return selected.empty() ||
           std::find(selected.begin(), selected.end(), name) != selected.end();
  };

  std::vector<PropertyReport> reports;
  if (wanted("weak_sets"))
    reports.push_back(
        weak_sets_suite(s.seed, counts.weak_sets_r2, counts.weak_sets_r3));
  if (wanted("bridge")) reports.push_back(bridge_suite(s.seed, counts.bridge_maps));
  if (wanted("farkas_soundness"))
    reports.push_back(farkas_soundness_suite(s.seed, counts.farkas_instances,
                                             counts.farkas_probes));
  if (wanted("certificates"))
    reports.push_back(certificate_suite(s.seed, counts.certificate_fixtures));
  if (wanted("conjugate_split"))
    reports.push_back(conjugate_split_suite(s.seed, counts.split_instances));
  if (wanted("scalar"))
    reports.push_back(scalar_suite(s.seed, counts.scalar_slater,
                                   counts.scalar_nonslater));
  if (reports.empty()) fail_schema("properties.suites selected nothing");

  Json suites = Json::array();
  for (const auto& r : reports) {
    Json sj;
    sj["name"] = r.name;
    sj["checks"] = r.checks;
    sj["failures"] = r.failures;
    sj["details"] = r.details;
    suites.push_back(std::move(sj));
    if (!r.passed())
      violations.push_back("suite '" + r.name + "' failed " +
                           std::to_string(r.failures) + " of " +
                           std::to_string(r.checks) + " checks");
  }
  results["suites"] = std::move(suites);
}

void run_example_p1(const Scenario& s, const std::string& out_dir,
                    Json& results, std::vector<std::string>& violations) {
  auto [p, rep] = example_p1();
  (void)p;
  results["weak_duality_ok"] = rep.weak_duality_ok;
  results["strong_duality_gap"] = rep.strong_duality_gap;
  results["attaining_operators"] = rep.attaining_operators.size();
  results["primal_front"] = front_summary(rep.primal_front);
  results["dual_front"] = front_summary(rep.dual_front);
  results["loose_dual_front"] = front_summary(rep.loose_dual_front);
  if (!rep.weak_duality_ok) violations.push_back("weak duality failed");

  // The domain and positivity filters must match their closed forms on the
  // whole operator lattice.
  bool dom_ok = true, pos_ok = true;
  for (int i = 0; i < 61; ++i)
    for (int j = 0; j < 61; ++j) {
      double c = -3.0 + 0.1 * i;
      double d = -3.0 + 0.1 * j;
      bool dom_expected = c >= -1e-9 || d >= 1.0 - 1e-9;
      bool pos_expected = c >= -1e-9 && d >= -1e-9;
      if (p1_dom_filter(c, d) != dom_expected) dom_ok = false;
      if (p1_positive_filter(c, d) != pos_expected) pos_ok = false;
    }
  results["dom_filter_matches"] = dom_ok;
  results["positive_filter_matches"] = pos_ok;
  if (!dom_ok) violations.push_back("domain filter deviates from closed form");
  if (!pos_ok)
    violations.push_back("positivity filter deviates from closed form");

  if (s.body.value("verify_closed_form", true)) {
    Window w{{-5.0, -1.0}, {0.0, 15.0}};
    auto walk = walk_front_r2(rep.primal_front, w, 1e-3);
    std::vector<Vec> curve;
    curve.reserve(5001);
    for (int i = 0; i <= 5000; ++i) {
      double x = -5.0 + 1e-3 * i;
      curve.push_back({x, x >= -1.0 ? -1.0 : x * x + 2.0 * x});
    }
    double h = hausdorff(walk, curve);
    results["closed_form_hausdorff"] = h;
    if (!(h <= 2e-3))
      violations.push_back("primal front strays from the closed form");
  }

  for (auto [front, base] :
       {std::pair<const FrontSet*, const char*>{&rep.primal_front, "primal"},
        {&rep.dual_front, "dual"},
        {&rep.loose_dual_front, "loose_dual"}}) {
    std::string csv = dump_front_csv(*front, out_dir, s.name + "." + base,
                                     s.probe_res);
    if (!csv.empty()) results[std::string(base) + "_csv"] = csv;
  }
}

// ---- expectation block ----------------------------------------------------

void apply_expect(const Json& body, const Json& results,
                  std::vector<std::string>& violations) {
  if (!body.contains("expect")) return;
  const Json& e = body.at("expect");
  if (!e.is_object()) fail_schema("expect must be an object");
  for (auto it = e.begin(); it != e.end(); ++it) {
    const std::string& key = it.key();
    auto bool_key = [&](const char* result_key) {
      if (!it.value().is_boolean()) fail_schema("expect." + key + " must be a boolean");
      if (!results.contains(result_key))
        fail_schema("expect." + key + " does not apply to this task");
      if (results.at(result_key).get<bool>() != it.value().get<bool>())
        violations.push_back("expectation '" + key + "' not met");
    };
    if (key == "weak_duality") {
      bool_key("weak_duality_ok");
    } else if (key == "equivalent") {
      bool_key("equivalent");
    } else if (key == "holds") {
      bool_key("holds_on_probes");
    } else if (key == "agreement") {
      bool_key("agreement");
    } else if (key == "gap_max") {
      if (!it.value().is_number()) fail_schema("expect.gap_max must be a number");
      if (!results.contains("strong_duality_gap"))
        fail_schema("expect.gap_max does not apply to this task");
      if (results.at("strong_duality_gap").get<double>() >
          it.value().get<double>())
        violations.push_back("expectation 'gap_max' not met");
    } else if (key == "value_min" || key == "value_max") {
      if (!it.value().is_number())
        fail_schema("expect." + key + " must be a number");
      if (!results.contains("primal_value"))
        fail_schema("expect." + key + " does not apply to this task");
      double v = results.at("primal_value").get<double>();
      bool ok = key == "value_min" ? v >= it.value().get<double>()
                                   : v <= it.value().get<double>();
      if (!ok) violations.push_back("expectation '" + key + "' not met");
    } else {
      fail_schema("unknown expect key '" + key + "'");
    }
  }
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] =
        offset_to_line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ScenarioError(std::string("invalid scenario JSON: ") + e.what(),
                        line, col);
  }
  if (!doc.is_object()) fail_schema("top level must be an object");

  Scenario s;
  const Json& nj = need(doc, "name", "scenario");
  if (!nj.is_string()) fail_schema("name must be a string");
  s.name = nj.get<std::string>();
  if (s.name.empty()) fail_schema("name must not be empty");
  for (char c : s.name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '-' || c == '.'))
      fail_schema("name may use letters, digits, '_', '-', '.' only");

  const Json& tj = need(doc, "task", "scenario");
  if (!tj.is_string()) fail_schema("task must be a string");
  s.task = parse_task(tj.get<std::string>());

  if (doc.contains("seed")) {
    const Json& sj = doc.at("seed");
    if (!sj.is_number_integer() && !sj.is_number_unsigned())
      fail_schema("seed must be a nonnegative integer");
    if (!sj.is_number_unsigned() && sj.get<long long>() < 0)
      fail_schema("seed must be a nonnegative integer");
    s.seed = sj.get<std::uint64_t>();
  }
  if (doc.contains("probe_res")) {
    const Json& rj = doc.at("probe_res");
    if (!rj.is_number_integer() || rj.get<int>() < 2)
      fail_schema("probe_res must be an integer >= 2");
    s.probe_res = rj.get<int>();
  }
  if (doc.contains("tolerance")) {
    const Json& tolj = doc.at("tolerance");
    if (!tolj.is_number() || !(tolj.get<double>() > 0))
      fail_schema("tolerance must be a positive number");
    s.tolerance = tolj.get<double>();
  }
  s.body = std::move(doc);
  return s;
}

int run_scenario(const Scenario& s, const RunOptions& options) {
  Scenario eff = s;
  if (options.seed) eff.seed = *options.seed;
  if (options.probe_res) eff.probe_res = *options.probe_res;

  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec)
    throw ScenarioError("cannot create output directory '" + options.out_dir +
                        "': " + ec.message());

  Json report;
  report["name"] = eff.name;
  report["task"] = task_name(eff.task);
  report["seed"] = eff.seed;
  report["probe_res"] = eff.probe_res;
  report["tolerance"] = eff.tolerance;
  Json results;
  std::vector<std::string> violations;
  try {
    switch (eff.task) {
      case ScenarioTask::Primal:
        run_primal(eff, options.out_dir, results, violations);
        break;
      case ScenarioTask::Dual:
        run_dual(eff, options.out_dir, results, violations);
        break;
      case ScenarioTask::Farkas:
        run_farkas(eff, options.out_dir, results, violations);
        break;
      case ScenarioTask::Representation:
        run_representation(eff, options.out_dir, results, violations);
        break;
      case ScenarioTask::EpigraphSum:
        run_epigraph_sum(eff, options.out_dir, results, violations);
        break;
      case ScenarioTask::Properties:
        run_properties(eff, options.out_dir, results, violations);
        break;
      case ScenarioTask::ExampleP1:
        run_example_p1(eff, options.out_dir, results, violations);
        break;
    }
    apply_expect(eff.body, results, violations);
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScenarioError("scenario '" + eff.name + "': " + e.what());
  }

  report["results"] = std::move(results);
  report["violations"] = violations;
  report["ok"] = violations.empty();

  const std::string report_path =
      options.out_dir + "/" + eff.name + ".report.json";
  std::ofstream out(report_path, std::ios::binary);
  if (!out) throw ScenarioError("cannot write report: " + report_path);
  out << report.dump(2) << "\n";
  out.flush();
  if (!out) throw ScenarioError("report write failed: " + report_path);

  if (!options.quiet) {
    std::cout << eff.name << ": " << (violations.empty() ? "ok" : "FAIL");
    if (!violations.empty()) {
      std::cout << " (" << violations.size() << " violation"
                << (violations.size() == 1 ? "" : "s") << ")";
      for (const auto& v : violations) std::cout << "\n  - " << v;
    }
    std::cout << " -> " << report_path << "\n";
  }
  return violations.empty() ? 0 : 2;
}

}  // namespace vecdual
