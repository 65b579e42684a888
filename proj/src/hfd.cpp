#include "kp/hfd.hpp"

#include "kp/error.hpp"

namespace kp {

namespace {

bool is_line5(const ProjSubspace& s) { return s.ambient() == 5 && s.dim() == 1; }

void require_external(const HfdDescriptor& d, std::size_t i, ErrorCode on_fail) {
  bool external = false;
  try {
    external = is_external_plane(d.planes[i], d.certificate(i));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UndecidedWithoutCertificate)
      throw Error(ErrorCode::Undecided, "plane " + std::to_string(i) + ": " + e.what());
    throw;
  }
  if (!external) throw Error(on_fail, "plane " + std::to_string(i) + " meets H5");
}

}  // namespace

const AnisotropyCertificate* HfdDescriptor::certificate(std::size_t i) const {
  if (i >= certificates.size() || !certificates[i]) return nullptr;
  return &*certificates[i];
}

void check_structure(const HfdDescriptor& d) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidDescriptor, what); };
  if (!is_line5(d.d)) bad("D must be a line of PG(5)");
  if (d.planes.empty()) bad("no planes");
  for (const auto& p : d.planes) {
    if (p.ambient() != 5 || p.dim() != 2) bad("carrier planes must be planes of PG(5)");
    if (!(p.field() == d.d.field())) bad("planes over a different field");
  }
  if (d.default_plane >= d.planes.size()) bad("default plane index out of range");
  if (!d.certificates.empty() && d.certificates.size() != d.planes.size()) bad("one certificate slot per plane");
  for (std::size_t i = 0; i < d.exceptions.size(); ++i) {
    const auto& e = d.exceptions[i];
    if (e.plane >= d.planes.size()) bad("exception plane index out of range");
    if (e.param.t0.is_zero() && e.param.t1.is_zero()) bad("zero exception parameter");
    for (std::size_t j = 0; j < i; ++j)
      if (same_param(e.param, d.exceptions[j].param)) bad("repeated exception parameter");
  }
}

void validate(const HfdDescriptor& d) {
  check_structure(d);
  for (std::size_t i = 0; i < d.planes.size(); ++i)
    if (!d.planes[i].contains(d.d))
      throw Error(ErrorCode::PlaneNotThroughD, "plane " + std::to_string(i) + " does not contain D");
  for (std::size_t i = 0; i < d.planes.size(); ++i) require_external(d, i, ErrorCode::PlaneNotExternal);
  if (classify_line(d.d) != LineClass::Secant0) throw Error(ErrorCode::PlaneNotExternal, "D meets H5");
}

std::size_t f_index(const HfdDescriptor& d, const Vec& v) {
  if (is_zero(v) || !d.d.contains(v)) throw Error(ErrorCode::PointNotOnD, "point is not on D");
  const LineParam p = param_of(d.d, v);
  for (const auto& e : d.exceptions)
    if (same_param(p, e.param)) return e.plane;
  return d.default_plane;
}

const ProjSubspace& f_of(const HfdDescriptor& d, const Vec& v) { return d.planes.at(f_index(d, v)); }

std::optional<PencilRef> hfd_membership(const HfdDescriptor& d, const ProjSubspace& x) {
  if (!is_line5(x)) return std::nullopt;
  if (x == d.d) return PencilRef{d.d.row(0), f_of(d, d.d.row(0))};
  const auto m = meet(x, d.d);
  if (m.dim() != 0) return std::nullopt;
  const Vec& v = m.row(0);
  const auto& carrier = f_of(d, v);
  if (!carrier.contains(x)) return std::nullopt;
  return PencilRef{v, carrier};
}

ProjSubspace line_in_tangent_hyperplane(const HfdDescriptor& d, const ProjSubspace& tau) {
  if (tau.ambient() != 5 || tau.dim() != 4) throw Error(ErrorCode::NotTangent, "expected a hyperplane of PG(5)");
  if (!on_quadric(polar(tau).row(0))) throw Error(ErrorCode::NotTangent, "pole of the hyperplane is off H5");
  if (tau.contains(d.d)) return d.d;
  const auto p = meet(tau, d.d);
  const auto m = meet(tau, f_of(d, p.row(0)));
  if (m.dim() != 1) throw Error(ErrorCode::VerificationFailed, "carrier plane lies in a tangent hyperplane");
  return m;
}

HfdCheck verify_hfd_at(const HfdDescriptor& d, const Vec& x) {
  HfdCheck r;
  if (is_zero(x) || !on_quadric(x)) {
    r.detail = "sample point is not on H5";
    return r;
  }
  const auto tau = polar(ProjSubspace::point(x));
  std::vector<ProjSubspace> candidates;
  for (std::size_t i = 0; i < d.planes.size(); ++i) {
    auto m = meet(tau, d.planes[i]);
    if (m.dim() != 1) {
      r.detail = "plane " + std::to_string(i) + " lies in the tangent hyperplane";
      return r;
    }
    bool seen = false;
    for (const auto& c : candidates) seen = seen || c == m;
    if (!seen) candidates.push_back(std::move(m));
  }
  const ProjSubspace* member = nullptr;
  for (const auto& c : candidates) {
    if (hfd_membership(d, c)) {
      ++r.members;
      member = &c;
    }
  }
  if (r.members != 1) {
    r.detail = std::to_string(r.members) + " member lines in the tangent hyperplane";
    return r;
  }
  try {
    if (!(*member == line_in_tangent_hyperplane(d, tau))) {
      r.detail = "member differs from the constructed line";
      return r;
    }
    if (classify_line(*member) != LineClass::Secant0) {
      r.detail = "member line meets H5";
      return r;
    }
  } catch (const Error& e) {
    r.detail = e.what();
    return r;
  }
  r.pass = true;
  return r;
}

std::string_view to_string(HfdCase c) {
  return c == HfdCase::PlaneOfLines ? "plane_of_lines" : "collinear_vertices";
}

HfdClassification classify(const HfdDescriptor& d) {
  check_structure(d);
  auto fail = [](const std::string& what) { throw Error(ErrorCode::ClassificationInconsistency, what); };
  HfdClassification c{HfdCase::PlaneOfLines, d.d, {}, {}, 2};
  std::vector<std::size_t> used{d.default_plane};
  for (const auto& e : d.exceptions) used.push_back(e.plane);
  for (std::size_t i : used) {
    bool seen = false;
    for (const auto& k : c.k) seen = seen || k == d.planes[i];
    if (seen) continue;
    c.k.push_back(d.planes[i]);
    c.attained.push_back(i);
  }
  for (std::size_t i : c.attained) require_external(d, i, ErrorCode::ClassificationInconsistency);
  ProjSubspace v = c.k.front();
  for (const auto& k : c.k) v = meet(v, k);
  c.v = v;
  c.dimension = span(c.k).dim();
  if (c.k.size() == 1) {
    c.kind = HfdCase::PlaneOfLines;
    if (c.dimension != 2) fail("plane of lines must span a plane");
    return c;
  }
  c.kind = HfdCase::CollinearVertices;
  if (!(v == d.d)) fail("attained planes do not meet exactly in D");
  if (!hfd_membership(d, d.d)) fail("D is not a member line");
  if (c.dimension < 3 || c.dimension > 5) fail("dimension out of range");
  return c;
}

bool is_clifford(const HfdDescriptor& d) { return classify(d).kind == HfdCase::PlaneOfLines; }

HfdDescriptor constant_descriptor(const ProjSubspace& kappa, const AnisotropyCertificate* cert) {
  if (kappa.ambient() != 5 || kappa.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "expected a plane");
  HfdDescriptor d{ProjSubspace::from_rows(kappa.field(), 5, Mat{kappa.row(0), kappa.row(1)}), {kappa}, 0, {}, {}};
  if (cert) d.certificates = {*cert};
  validate(d);
  return d;
}

HfdDescriptor two_plane_descriptor(const ProjSubspace& kappa1, Rng& rng, std::size_t exceptions,
                                   const AnisotropyCertificate* cert) {
  auto second = second_external_plane(kappa1, rng, cert);
  const FieldSpec& f = kappa1.field();
  HfdDescriptor d{meet(kappa1, second.plane), {kappa1, second.plane}, 1, {}, {}};
  d.certificates = {cert ? std::optional(*cert) : std::nullopt, second.certificate};
  for (std::size_t i = 0; i < exceptions; ++i) {
    if (i == 0) {
      d.exceptions.push_back({LineParam{f.one(), f.zero()}, 0});
      continue;
    }
    // [c : 1] for distinct c = 0, 1, 2, ... (0, 1, s, s^2, ... in char 2).
    Scalar c = f.from_int(static_cast<long>(i - 1));
    if (f.characteristic() == 2 && i > 2) {
      c = f.one();
      for (std::size_t k = 2; k < i; ++k) c *= f.kind == FieldKind::F2RationalFunctions ? f.s() : f.one();
    }
    d.exceptions.push_back({LineParam{c, f.one()}, 0});
  }
  validate(d);
  return d;
}

std::vector<Vec> tangent_plane_witnesses(const HfdDescriptor& d) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < d.planes.size(); ++i) {
    const auto p = polar(d.planes[i]);
    std::optional<AnisotropyCertificate> cert;
    if (const auto* c = d.certificate(i))
      cert = AnisotropyCertificate{c->centre, polar(ProjSubspace::from_rows(p.field(), 5, c->source_rows)).rows()};
    try {
      const auto v = section_isotropy(p, cert ? &*cert : nullptr);
      if (!v.is_isotropic()) continue;
      Vec x = zero_vec(p.field(), 6);
      for (std::size_t j = 0; j < v.witness()->size(); ++j) axpy(x, (*v.witness())[j], p.row(j));
      out.push_back(std::move(x));
    } catch (const Error&) {
      // A search aid only: undecidable or unfactorable sections are skipped.
    }
  }
  return out;
}

}  // namespace kp
