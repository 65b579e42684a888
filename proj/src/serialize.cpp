#include "kp/serialize.hpp"

#include <charconv>

#include "kp/error.hpp"

namespace kp {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& at(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

Scalar scalar_from_json(const FieldSpec& f, const Json& j) {
  if (j.is_string()) return f.parse(j.get<std::string>());
  if (j.is_number_integer()) return f.from_int(j.get<long>());
  bad("scalar must be a string literal or an integer");
}

std::size_t index_from_json(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long>() >= 0))
    bad(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

Mat rows_from_json(const FieldSpec& f, const Json& j, std::size_t width) {
  if (!j.is_array()) bad("rows must be an array");
  Mat rows;
  for (const auto& r : j) {
    Vec v = vec_from_json(f, r);
    if (v.size() != width) bad("row of length " + std::to_string(v.size()) + ", expected " + std::to_string(width));
    rows.push_back(std::move(v));
  }
  return rows;
}

}  // namespace

Json to_json(const FieldSpec& f) {
  switch (f.kind) {
    case FieldKind::Rationals: return Json{{"kind", "rationals"}};
    case FieldKind::PrimeField: return Json{{"kind", "prime"}, {"p", f.p}};
    default: return Json{{"kind", "f2st"}};
  }
}

FieldSpec field_from_json(const Json& j) {
  const Json& k = at(j, "kind");
  if (!k.is_string()) bad("field kind must be a string");
  const auto kind = k.get<std::string>();
  if (kind == "rationals") return FieldSpec::rationals();
  if (kind == "f2st") return FieldSpec::f2st();
  if (kind == "prime") return FieldSpec::prime(static_cast<std::uint32_t>(index_from_json(at(j, "p"), "p")));
  bad("unknown field kind \"" + kind + "\"");
}

FieldSpec field_from_name(std::string_view name) {
  if (name == "Q") return FieldSpec::rationals();
  if (name == "f2st") return FieldSpec::f2st();
  if (name.size() > 2 && name.substr(0, 2) == "gf") {
    std::uint32_t p = 0;
    const auto tail = name.substr(2);
    const auto [end, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), p);
    if (ec == std::errc() && end == tail.data() + tail.size()) return FieldSpec::prime(p);
  }
  bad("unknown field \"" + std::string(name) + "\"");
}

std::string field_name(const FieldSpec& f) {
  switch (f.kind) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::PrimeField: return "gf" + std::to_string(f.p);
    default: return "f2st";
  }
}

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

Vec vec_from_json(const FieldSpec& f, const Json& j) {
  if (!j.is_array()) bad("vector must be an array");
  Vec v;
  for (const auto& x : j) v.push_back(scalar_from_json(f, x));
  return v;
}

Json to_json(const ProjSubspace& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows()) rows.push_back(to_json(r));
  return Json{{"n", s.ambient()}, {"rows", rows}};
}

ProjSubspace subspace_from_json(const FieldSpec& f, const Json& j) {
  const std::size_t n = index_from_json(at(j, "n"), "n");
  return ProjSubspace::from_rows(f, static_cast<int>(n), rows_from_json(f, at(j, "rows"), n + 1));
}

Json to_json(const Algebra& h) {
  if (h.kind() == AlgebraKind::Tower) return Json{{"kind", "tower"}};
  return Json{{"kind", "quaternion"}, {"a", h.a().to_string()}, {"b", h.b().to_string()}};
}

Algebra algebra_from_json(const FieldSpec& f, const Json& j) {
  const Json& k = at(j, "kind");
  if (k == "tower") return Algebra::tower();
  if (k == "quaternion") return Algebra::quaternion(f, scalar_from_json(f, at(j, "a")), scalar_from_json(f, at(j, "b")));
  bad("unknown algebra kind");
}

Json to_json(const AnisotropyCertificate& c) {
  Json rows = Json::array();
  for (const auto& r : c.source_rows) rows.push_back(to_json(r));
  return Json{{"centre", to_json(c.centre)}, {"source_rows", rows}};
}

AnisotropyCertificate certificate_from_json(const FieldSpec& f, const Json& j) {
  Vec centre = vec_from_json(f, at(j, "centre"));
  if (centre.size() != 6) bad("certificate centre must have 6 entries");
  return {std::move(centre), rows_from_json(f, at(j, "source_rows"), 6)};
}

Json to_json(const HfdDescriptor& d) {
  Json planes = Json::array();
  for (const auto& p : d.planes) planes.push_back(to_json(p));
  Json exceptions = Json::array();
  for (const auto& e : d.exceptions)
    exceptions.push_back(Json{{"param", {e.param.t0.to_string(), e.param.t1.to_string()}}, {"plane", e.plane}});
  Json certs = Json::array();
  for (const auto& c : d.certificates) certs.push_back(c ? to_json(*c) : Json(nullptr));
  return Json{{"field", to_json(d.d.field())}, {"D", to_json(d.d)},          {"planes", planes},
              {"default", d.default_plane},    {"exceptions", exceptions}, {"certificates", certs}};
}

HfdDescriptor descriptor_from_json(const Json& j) {
  try {
    const FieldSpec f = field_from_json(at(j, "field"));
    HfdDescriptor d{subspace_from_json(f, at(j, "D")), {}, 0, {}, {}};
    const Json& planes = at(j, "planes");
    if (!planes.is_array()) bad("planes must be an array");
    for (const auto& p : planes) d.planes.push_back(subspace_from_json(f, p));
    d.default_plane = j.contains("default") ? index_from_json(j.at("default"), "default") : 0;
    if (j.contains("exceptions")) {
      const Json& ex = j.at("exceptions");
      if (!ex.is_array()) bad("exceptions must be an array");
      for (const auto& e : ex) {
        const Json& param = at(e, "param");
        if (!param.is_array() || param.size() != 2) bad("exception param must be a pair");
        d.exceptions.push_back({LineParam{scalar_from_json(f, param[0]), scalar_from_json(f, param[1])},
                                index_from_json(at(e, "plane"), "plane")});
      }
    }
    if (j.contains("certificates")) {
      const Json& cs = j.at("certificates");
      if (!cs.is_array()) bad("certificates must be an array");
      for (const auto& c : cs)
        d.certificates.push_back(c.is_null() ? std::nullopt : std::optional(certificate_from_json(f, c)));
    }
    check_structure(d);
    return d;
  } catch (const Json::exception& e) {
    bad(e.what());
  }
}

}  // namespace kp
