#include "vecdual/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace vecdual {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("serialize: " + what);
}

const Json& field(const Json& j, const char* key, const char* ctx) {
  if (!j.is_object()) bad(std::string(ctx) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end())
    bad(std::string(ctx) + ": missing required field '" + key + "'");
  return *it;
}

Vec vec_from_json(const Json& j, const char* ctx) {
  if (!j.is_array()) bad(std::string(ctx) + ": expected an array of numbers");
  Vec v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) bad(std::string(ctx) + ": non-numeric entry");
    v.push_back(e.get<double>());
  }
  return v;
}

Json vecs_to_json(const std::vector<Vec>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(vec_to_json(r));
  return a;
}

std::vector<Vec> vecs_from_json(const Json& j, const char* ctx) {
  if (!j.is_array()) bad(std::string(ctx) + ": expected an array of rows");
  std::vector<Vec> rows;
  rows.reserve(j.size());
  for (const auto& e : j) rows.push_back(vec_from_json(e, ctx));
  return rows;
}

}  // namespace

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Vec vec_from_json(const Json& j) { return vec_from_json(j, "vector"); }

std::vector<Vec> point_list_from_json(const Json& j) {
  return vecs_from_json(j, "points");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) bad("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

Json cone_to_json(const PolyhedralCone& k) {
  Json j;
  j["dim"] = k.dim();
  j["generators"] = vecs_to_json(k.generators());
  j["normals"] = vecs_to_json(k.normals());
  return j;
}

PolyhedralCone cone_from_json(const Json& j) {
  if (!j.is_object()) bad("cone: expected an object");
  if (j.contains("orthant")) {
    const Json& o = j.at("orthant");
    if (!o.is_number_integer() || o.get<int>() < 1)
      bad("cone: 'orthant' must be a positive integer dimension");
    return PolyhedralCone::orthant(o.get<int>());
  }
  const Json& d = field(j, "dim", "cone");
  if (!d.is_number_integer() || d.get<int>() < 1)
    bad("cone: 'dim' must be a positive integer");
  int dim = d.get<int>();
  bool has_g = j.contains("generators");
  bool has_n = j.contains("normals");
  if (!has_g && !has_n) bad("cone: need 'generators' or 'normals'");
  std::vector<Vec> gens, norms;
  if (has_g) gens = vecs_from_json(j.at("generators"), "cone.generators");
  if (has_n) norms = vecs_from_json(j.at("normals"), "cone.normals");
  for (const auto& g : gens)
    if (g.size() != static_cast<std::size_t>(dim))
      bad("cone: generator dimension mismatch");
  for (const auto& n : norms)
    if (n.size() != static_cast<std::size_t>(dim))
      bad("cone: normal dimension mismatch");
  if (has_g && has_n) return PolyhedralCone::from_both(dim, gens, norms);
  if (has_g) return PolyhedralCone::from_generators(dim, gens);
  return PolyhedralCone::from_normals(dim, norms);
}

namespace {

const char* kind_name(FrontSet::Kind k) {
  switch (k) {
    case FrontSet::Kind::Sup:
      return "sup";
    case FrontSet::Kind::Inf:
      return "inf";
    case FrontSet::Kind::PlusInfinity:
      return "+inf";
    default:
      return "-inf";
  }
}

}  // namespace

Json front_to_json(const FrontSet& f) {
  Json j;
  j["kind"] = kind_name(f.kind());
  j["cone"] = cone_to_json(f.cone());
  j["generators"] = vecs_to_json(f.generators());
  return j;
}

FrontSet front_from_json(const Json& j) {
  const Json& kj = field(j, "kind", "front");
  if (!kj.is_string()) bad("front: 'kind' must be a string");
  std::string k = kj.get<std::string>();
  FrontSet::Kind kind;
  if (k == "sup")
    kind = FrontSet::Kind::Sup;
  else if (k == "inf")
    kind = FrontSet::Kind::Inf;
  else if (k == "+inf")
    kind = FrontSet::Kind::PlusInfinity;
  else if (k == "-inf")
    kind = FrontSet::Kind::MinusInfinity;
  else
    bad("front: unknown kind '" + k + "'");
  PolyhedralCone cone = cone_from_json(field(j, "cone", "front"));
  std::vector<Vec> gens;
  if (j.contains("generators"))
    gens = vecs_from_json(j.at("generators"), "front.generators");
  return FrontSet(kind, std::move(cone), std::move(gens));
}

Json sampled_map_to_json(const SampledMap& f) {
  Json j;
  j["samples"] = vecs_to_json(f.domain_samples);
  Json vals = Json::array();
  for (const auto& v : f.values) {
    if (v.is_plus_inf())
      vals.push_back("+inf");
    else if (v.is_minus_inf())
      vals.push_back("-inf");
    else
      vals.push_back(vec_to_json(v.value()));
  }
  j["values"] = std::move(vals);
  j["cone"] = cone_to_json(f.cone);
  return j;
}

SampledMap sampled_map_from_json(const Json& j) {
  SampledMap f(cone_from_json(field(j, "cone", "sampled map")));
  f.domain_samples = vecs_from_json(field(j, "samples", "sampled map"),
                                    "sampled map.samples");
  const Json& vals = field(j, "values", "sampled map");
  if (!vals.is_array()) bad("sampled map: 'values' must be an array");
  if (vals.size() != f.domain_samples.size())
    bad("sampled map: samples/values length mismatch");
  for (const auto& e : vals) {
    if (e.is_string()) {
      std::string s = e.get<std::string>();
      if (s == "+inf")
        f.values.push_back(ExtendedPoint::plus_inf());
      else if (s == "-inf")
        f.values.push_back(ExtendedPoint::minus_inf());
      else
        bad("sampled map: unknown extended value '" + s + "'");
    } else {
      Vec v = vec_from_json(e, "sampled map.values");
      if (v.size() != static_cast<std::size_t>(f.cone.dim()))
        bad("sampled map: value dimension mismatch");
      f.values.push_back(ExtendedPoint::finite(std::move(v)));
    }
  }
  return f;
}

Json linop_to_json(const LinOp& t) {
  Json j;
  j["rows"] = t.rows;
  j["cols"] = t.cols;
  Json e = Json::array();
  for (double x : t.a) e.push_back(x);
  j["entries"] = std::move(e);
  return j;
}

LinOp linop_from_json(const Json& j) {
  if (j.is_array()) {
    std::vector<Vec> rows = vecs_from_json(j, "operator");
    if (rows.empty()) bad("operator: empty row list");
    return LinOp::from_rows(rows);
  }
  const Json& rj = field(j, "rows", "operator");
  const Json& cj = field(j, "cols", "operator");
  if (!rj.is_number_integer() || !cj.is_number_integer())
    bad("operator: 'rows'/'cols' must be integers");
  int r = rj.get<int>(), c = cj.get<int>();
  if (r < 0 || c < 0) bad("operator: negative shape");
  Vec entries = vec_from_json(field(j, "entries", "operator"),
                              "operator.entries");
  if (entries.size() != static_cast<std::size_t>(r) * static_cast<std::size_t>(c))
    bad("operator: entry count does not match rows*cols");
  LinOp t(r, c);
  t.a.assign(entries.begin(), entries.end());
  return t;
}

Json affine_to_json(const AffineMap& m) {
  Json j;
  j["A"] = linop_to_json(m.lin);
  j["b"] = vec_to_json(m.shift);
  return j;
}

AffineMap affine_from_json(const Json& j) {
  AffineMap m{linop_from_json(field(j, "A", "affine map")), {}};
  if (j.contains("b"))
    m.shift = vec_from_json(j.at("b"), "affine map.b");
  else
    m.shift = Vec(static_cast<std::size_t>(m.lin.rows), 0.0);
  if (m.shift.size() != static_cast<std::size_t>(m.lin.rows))
    bad("affine map: shift dimension mismatch");
  return m;
}

namespace {

PiecewiseLinear pieces_from_json(const Json& j, const char* ctx) {
  std::vector<Vec> rows = vecs_from_json(j, ctx);
  if (rows.empty()) bad(std::string(ctx) + ": need at least one piece");
  PiecewiseLinear f;
  std::size_t width = rows[0].size();
  if (width < 2) bad(std::string(ctx) + ": piece rows are slopes + offset");
  for (auto& r : rows) {
    if (r.size() != width) bad(std::string(ctx) + ": ragged piece rows");
    f.offsets.push_back(r.back());
    r.pop_back();
    f.slopes.push_back(std::move(r));
  }
  return f;
}

Json pieces_to_json(const PiecewiseLinear& f) {
  Json a = Json::array();
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    Vec row = f.slopes[i];
    row.push_back(f.offsets[i]);
    a.push_back(vec_to_json(row));
  }
  return a;
}

}  // namespace

Json scalar_instance_to_json(const ScalarInstance& inst) {
  Json j;
  j["pieces"] = pieces_to_json(inst.f);
  Json hs = Json::array();
  for (std::size_t i = 0; i < inst.C.rows.size(); ++i) {
    Vec row = inst.C.rows[i];
    row.push_back(inst.C.rhs[i]);
    hs.push_back(vec_to_json(row));
  }
  j["C_halfspaces"] = std::move(hs);
  j["G"] = affine_to_json(inst.G);
  j["S"] = cone_to_json(inst.S);
  if (inst.kappa) {
    j["kappa"] = pieces_to_json(*inst.kappa);
    j["H"] = affine_to_json(*inst.H);
    j["P"] = cone_to_json(*inst.P);
  }
  return j;
}

ScalarInstance scalar_instance_from_json(const Json& j) {
  PiecewiseLinear f =
      pieces_from_json(field(j, "pieces", "scalar instance"), "pieces");
  int n = f.dim();
  Polytope c;
  if (j.contains("C_halfspaces")) {
    std::vector<Vec> rows = vecs_from_json(j.at("C_halfspaces"), "C_halfspaces");
    for (auto& r : rows) {
      if (r.size() != static_cast<std::size_t>(n) + 1)
        bad("C_halfspaces: rows are coefficients + rhs");
      c.rhs.push_back(r.back());
      r.pop_back();
      c.rows.push_back(std::move(r));
    }
  }
  AffineMap g = affine_from_json(field(j, "G", "scalar instance"));
  if (g.lin.cols != n) bad("G: column count must match the variable count");
  PolyhedralCone s = cone_from_json(field(j, "S", "scalar instance"));
  if (s.dim() != g.lin.rows) bad("S: dimension must match G's row count");
  ScalarInstance inst(n, std::move(f), std::move(c), std::move(g),
                      std::move(s));
  bool has_k = j.contains("kappa"), has_h = j.contains("H"),
       has_p = j.contains("P");
  if (has_k != has_h || has_k != has_p)
    bad("composite part: 'kappa', 'H' and 'P' come together");
  if (has_k) {
    PiecewiseLinear kappa = pieces_from_json(j.at("kappa"), "kappa");
    AffineMap h = affine_from_json(j.at("H"));
    if (h.lin.cols != n) bad("H: column count must match the variable count");
    if (kappa.dim() != h.lin.rows)
      bad("kappa: variable count must match H's row count");
    PolyhedralCone p = cone_from_json(j.at("P"));
    if (p.dim() != kappa.dim()) bad("P: dimension must match kappa's domain");
    inst.with_composite(std::move(kappa), std::move(h), std::move(p));
  }
  return inst;
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["T_bar"] = linop_to_json(c.T_bar);
  j["y_star"] = vec_to_json(c.y_star);
  j["z_star"] = vec_to_json(c.z_star);
  j["k0"] = vec_to_json(c.k0);
  j["verified"] = c.verified;
  j["positive"] = c.positive;
  j["heuristic"] = c.heuristic;
  return j;
}

void emit_front_csv(const FrontSet& f, const Window& window, int resolution,
                    const std::string& path) {
  require(f.proper(), "emit_front_csv: improper front has no probe labels");
  require(resolution >= 2, "emit_front_csv: resolution must be at least 2");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_front_csv: cannot open " + path);
  const int dim = f.cone().dim();
  for (int d = 0; d < dim; ++d) out << "y" << d << ",";
  out << "label\n";

  bool degenerate = window.lo.size() != static_cast<std::size_t>(dim) ||
                    window.hi.size() != static_cast<std::size_t>(dim);
  for (std::size_t d = 0; !degenerate && d < window.lo.size(); ++d)
    if (!(window.hi[d] > window.lo[d])) degenerate = true;
  if (degenerate) return;

  ProbeGrid grid = make_grid(window.lo, window.hi, resolution);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Vec y = grid.point(i);
    for (double c : y) out << format_double(c) << ",";
    switch (classify(f, y)) {
      case Label::Below:
        out << "Below\n";
        break;
      case Label::On:
        out << "On\n";
        break;
      default:
        out << "Above\n";
        break;
    }
  }
  if (!out) throw std::runtime_error("emit_front_csv: write failed: " + path);
}

}  // namespace vecdual
