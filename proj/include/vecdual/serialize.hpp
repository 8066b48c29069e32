#pragma once

#include <string>

#include "json.hpp"
#include "vecdual/farkas.hpp"
#include "vecdual/front.hpp"
#include "vecdual/grid.hpp"
#include "vecdual/sampled_map.hpp"
#include "vecdual/scalar.hpp"

namespace vecdual {

using Json = nlohmann::json;

// Shortest round-trip decimal text for a double, locale independent. Used
// everywhere a report file carries a number outside the JSON writer, so the
// same inputs always produce byte-identical files.
std::string format_double(double v);

// --- JSON codecs -----------------------------------------------------------
//
// Malformed input throws std::invalid_argument with a message naming the
// offending field. Numeric matrices are nested arrays (rows of numbers);
// extended values spell infinities as the strings "+inf" / "-inf".

// Plain numeric vectors and point lists.
Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);
std::vector<Vec> point_list_from_json(const Json& j);

// Cone: {"dim": m, "generators": [[..]], "normals": [[..]]}. Either list may
// be omitted on input (the other representation is derived); the shorthand
// {"orthant": m} is also accepted. Output always carries both lists.
Json cone_to_json(const PolyhedralCone& k);
PolyhedralCone cone_from_json(const Json& j);

// Front: {"kind": "sup"|"inf"|"+inf"|"-inf", "cone": {..}, "generators": [[..]]}.
Json front_to_json(const FrontSet& f);
FrontSet front_from_json(const Json& j);

// Sampled map: {"samples": [[..]], "values": [[..] | "+inf"], "cone": {..}}.
Json sampled_map_to_json(const SampledMap& f);
SampledMap sampled_map_from_json(const Json& j);

// Linear operator: {"rows": r, "cols": c, "entries": [..row-major..]} or the
// nested-array shorthand [[row], [row], ..].
Json linop_to_json(const LinOp& t);
LinOp linop_from_json(const Json& j);

// Affine map: {"A": [[..]], "b": [..]} with "b" defaulting to zero.
Json affine_to_json(const AffineMap& m);
AffineMap affine_from_json(const Json& j);

// Scalar instance:
//   {"pieces": [[a.., b]..], "C_halfspaces": [[d.., e]..], "G": {"A","b"},
//    "S": cone, "kappa": [[..]], "H": {"A","b"}, "P": cone}
// where each piece row is a slope vector followed by its offset, each
// halfspace row is d . x <= e, and the composite triple is optional (all
// three fields or none).
Json scalar_instance_to_json(const ScalarInstance& inst);
ScalarInstance scalar_instance_from_json(const Json& j);

// Operator certificate produced by the constructive separation path.
Json certificate_to_json(const Certificate& c);

// --- CSV front dumps -------------------------------------------------------
//
// Writes "y0,..,y<m-1>,label" then one row per probe of the regular grid
// spanning the window at `resolution` points per axis, with the probe's
// classification against the front (Below / On / Above). A degenerate window
// (any hi <= lo, or dimension mismatch with the front) yields the header
// only. Bytes are deterministic: '.' decimal point, '\n' line endings.
void emit_front_csv(const FrontSet& f, const Window& window, int resolution,
                    const std::string& path);

}  // namespace vecdual
