#pragma once

#include <json.hpp>

#include "kp/algebras.hpp"
#include "kp/hfd.hpp"

// JSON forms of the objects that cross the CLI boundary. Scalars travel as
// field literals, so everything round-trips exactly. Readers throw
// ParseError on malformed input.

namespace kp {

using Json = nlohmann::ordered_json;

Json to_json(const FieldSpec& f);
FieldSpec field_from_json(const Json& j);
/// Accepts "Q", "gf2", "gf3", ..., "f2st".
FieldSpec field_from_name(std::string_view name);
std::string field_name(const FieldSpec& f);

Json to_json(const Vec& v);
Vec vec_from_json(const FieldSpec& f, const Json& j);

/// {"n": n, "rows": [[literal, ...], ...]}
Json to_json(const ProjSubspace& s);
ProjSubspace subspace_from_json(const FieldSpec& f, const Json& j);

Json to_json(const Algebra& h);
Algebra algebra_from_json(const FieldSpec& f, const Json& j);

Json to_json(const AnisotropyCertificate& c);
AnisotropyCertificate certificate_from_json(const FieldSpec& f, const Json& j);

Json to_json(const HfdDescriptor& d);
/// Structure only (check_structure); call validate separately.
HfdDescriptor descriptor_from_json(const Json& j);

}  // namespace kp
