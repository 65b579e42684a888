#include "kp/klein.hpp"

#include "kp/error.hpp"

namespace kp {

namespace {

void require_pg5(const ProjSubspace& s, const char* what) {
  if (s.ambient() != 5) throw Error(ErrorCode::AmbientMismatch, std::string(what) + " expects a subspace of PG(5)");
}

void require_len(const Vec& v, std::size_t n, const char* what) {
  if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": wrong vector length");
}

Vec combine(const ProjSubspace& s, const Vec& coords) {
  Vec v = zero_vec(s.field(), static_cast<std::size_t>(s.ambient() + 1));
  for (std::size_t i = 0; i < coords.size(); ++i) axpy(v, coords[i], s.row(i));
  return v;
}

bool certificate_matches(const ProjSubspace& s, const AnisotropyCertificate& cert) {
  if (cert.centre.size() != 6 || cert.source_rows.empty()) return false;
  for (const auto& r : cert.source_rows)
    if (r.size() != 6) return false;
  if (klein_q(cert.centre).is_zero()) return false;
  const auto source = ProjSubspace::from_rows(s.field(), 5, cert.source_rows);
  return source.dim() == s.dim() && reflect(cert.centre, source) == s;
}

// An anisotropic verdict from a certificate is only as good as the check below.
bool certificate_applies(const ProjSubspace& s, const AnisotropyCertificate& cert) {
  if (!certificate_matches(s, cert)) return false;
  return section_isotropy(ProjSubspace::from_rows(s.field(), 5, cert.source_rows)).is_anisotropic();
}

// Factors k_i turning the basis rows of a rational subspace into primitive
// integer vectors.
Vec integral_scales(const ProjSubspace& s) {
  Vec k;
  for (const auto& r : s.rows()) {
    mpz_class l = 1, g = 0;
    for (const auto& c : r) l = lcm(l, c.rational().get_den());
    for (const auto& c : r) g = gcd(g, mpz_class(c.rational() * l));
    k.emplace_back(mpq_class(l, g));
  }
  return k;
}

}  // namespace

QuadraticForm klein_form(const FieldSpec& field) {
  Mat m(6, zero_vec(field, 6));
  m[0][5] = field.one();
  m[1][4] = -field.one();
  m[2][3] = field.one();
  return QuadraticForm::from_upper(field, std::move(m));
}

Scalar klein_q(const Vec& p) {
  require_len(p, 6, "klein_q");
  return p[0] * p[5] - p[1] * p[4] + p[2] * p[3];
}

Scalar klein_b(const Vec& p, const Vec& q) {
  require_len(p, 6, "klein_b");
  require_len(q, 6, "klein_b");
  return p[0] * q[5] + p[5] * q[0] - p[1] * q[4] - p[4] * q[1] + p[2] * q[3] + p[3] * q[2];
}

Vec polar_row(const Vec& x) {
  require_len(x, 6, "polar_row");
  return {x[5], -x[4], x[3], x[2], -x[1], x[0]};
}

bool on_quadric(const Vec& p) { return klein_q(p).is_zero(); }

Vec plucker(const Vec& x, const Vec& y) {
  require_len(x, 4, "plucker");
  require_len(y, 4, "plucker");
  static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  Vec p;
  p.reserve(6);
  for (const auto& ij : kPairs) p.push_back(x[ij[0]] * y[ij[1]] - x[ij[1]] * y[ij[0]]);
  return p;
}

Vec lambda(const ProjSubspace& line3) {
  if (line3.ambient() != 3 || line3.dim() != 1) throw Error(ErrorCode::NotALine, "lambda expects a line of PG(3)");
  return plucker(line3.row(0), line3.row(1));
}

ProjSubspace lambda_point(const ProjSubspace& line3) { return ProjSubspace::point(lambda(line3)); }

ProjSubspace lambda_inv(const Vec& p) {
  require_len(p, 6, "lambda_inv");
  if (is_zero(p) || !on_quadric(p)) throw Error(ErrorCode::NotOnQuadric, "point is not on the Klein quadric");
  // The Plucker matrix x y^T - y x^T has column space span(x, y).
  const Scalar zero = p[0].field().zero();
  Mat m{{zero, p[0], p[1], p[2]}, {-p[0], zero, p[3], p[4]}, {-p[1], -p[3], zero, p[5]}, {-p[2], -p[4], -p[5], zero}};
  auto line = ProjSubspace::from_rows(p[0].field(), 3, std::move(m));
  if (line.dim() != 1) throw Error(ErrorCode::Internal, "Plucker matrix of a quadric point must have rank 2");
  return line;
}

ProjSubspace lambda_inv(const ProjSubspace& point) {
  if (point.ambient() != 5 || point.dim() != 0) throw Error(ErrorCode::NotOnQuadric, "lambda_inv expects a point");
  return lambda_inv(point.row(0));
}

ProjSubspace polar(const ProjSubspace& s) {
  require_pg5(s, "polar");
  Mat forms;
  for (const auto& r : s.rows()) forms.push_back(polar_row(r));
  return zero_set(s.field(), 5, forms);
}

ProjSubspace star_plane(const Vec& point3) {
  require_len(point3, 4, "star_plane");
  if (is_zero(point3)) throw Error(ErrorCode::ZeroParameter, "zero vector is not a point");
  const FieldSpec f = point3[0].field();
  Mat rows;
  for (std::size_t i = 0; i < 4; ++i) {
    Vec p = plucker(point3, unit_vec(f, 4, i));
    if (!is_zero(p)) rows.push_back(std::move(p));
  }
  return ProjSubspace::from_rows(f, 5, std::move(rows));
}

ProjSubspace random_line3(const FieldSpec& field, Rng& rng, int height) {
  return random_subspace(field, 3, 1, rng, height);
}

Vec random_quadric_point(const FieldSpec& field, Rng& rng, int height) {
  return lambda(random_line3(field, rng, height));
}

std::string_view to_string(LineClass c) {
  switch (c) {
    case LineClass::Secant0: return "secant_0";
    case LineClass::Tangent: return "secant_1_tangent";
    case LineClass::Secant2: return "secant_2";
    case LineClass::Contained: return "contained_in_H5";
  }
  return "?";
}

LineClass classify_line(const ProjSubspace& g) {
  require_pg5(g, "classify_line");
  if (g.dim() != 1) throw Error(ErrorCode::NotALine, "classify_line expects a line");
  const auto r = restrict_form(klein_form(g.field()), g);
  if (r.is_zero()) return LineClass::Contained;
  const auto v = binary_anisotropic(r);
  if (v.status() == IsotropyStatus::Unknown)
    throw Error(ErrorCode::Undecided, "secancy of a line over F2(s,t) not settled by the bounded search");
  if (v.is_anisotropic()) return LineClass::Secant0;
  const Scalar& a = r.coeff(0, 0);
  const Scalar& b = r.coeff(0, 1);
  const Scalar& c = r.coeff(1, 1);
  // One zero exactly when Q restricted to the line is a square of a linear form.
  const bool double_root =
      g.field().characteristic() == 2 ? b.is_zero() : (b * b - g.field().from_int(4) * a * c).is_zero();
  return double_root ? LineClass::Tangent : LineClass::Secant2;
}

bool is_zero_secant(const ProjSubspace& g) { return classify_line(g) == LineClass::Secant0; }

Vec reflect(const Vec& q, const Vec& x) {
  const Scalar qq = klein_q(q);
  if (qq.is_zero()) throw Error(ErrorCode::CentreOnQuadric, "reflection centre lies on H5");
  Vec out = x;
  axpy(out, -(klein_b(x, q) / qq), q);
  return out;
}

ProjSubspace reflect(const Vec& q, const ProjSubspace& s) {
  require_pg5(s, "reflect");
  Mat rows;
  for (const auto& r : s.rows()) rows.push_back(reflect(q, r));
  return ProjSubspace::from_rows(s.field(), 5, std::move(rows));
}

IsotropyVerdict section_isotropy(const ProjSubspace& s, const AnisotropyCertificate* cert) {
  require_pg5(s, "section_isotropy");
  if (s.is_empty()) return IsotropyVerdict::anisotropic(ProofTag::BruteForce);
  const FieldSpec& f = s.field();
  const auto r = restrict_form(klein_form(f), s);
  if (f.is_finite()) return brute_force_isotropic(r);
  if (s.dim() == 0) {
    if (r.coeff(0, 0).is_zero()) return IsotropyVerdict::isotropic(r, Vec{f.one()});
    return IsotropyVerdict::anisotropic(ProofTag::BruteForce);
  }
  if (s.dim() == 1) return binary_anisotropic(r);
  if (f.kind == FieldKind::Rationals && s.dim() == 2) {
    if (cert) {
      // Q pulled back along the reflected source rows equals Q on the source,
      // so Hasse-Minkowski runs on the small source coefficients.
      if (!certificate_matches(s, *cert))
        throw Error(ErrorCode::VerificationFailed, "anisotropy certificate does not match the subspace");
      Mat rows;
      for (const auto& x : cert->source_rows) rows.push_back(reflect(cert->centre, x));
      auto v = ternary_isotropic(restrict_to_rows(klein_form(f), rows));
      if (!v.is_isotropic()) return v;
    }
    const Vec k = integral_scales(s);
    Mat rows = s.rows();
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = k[i] * rows[i];
    auto v = ternary_isotropic(restrict_to_rows(klein_form(f), rows));
    if (!v.is_isotropic()) return v;
    Vec w = *v.witness();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= k[i];
    return IsotropyVerdict::isotropic(r, std::move(w));
  }
  if (f.characteristic() == 2) {
    if (r.polar_is_zero()) return additive_isotropic(r);
    if (cert) {
      if (!certificate_applies(s, *cert))
        throw Error(ErrorCode::VerificationFailed, "anisotropy certificate does not match the subspace");
      return IsotropyVerdict::anisotropic(ProofTag::Certificate);
    }
  }
  if (auto w = bounded_zero_search(r, 1)) return IsotropyVerdict::isotropic(r, *w);
  return IsotropyVerdict::unknown();
}

bool is_external_plane(const ProjSubspace& eps, const AnisotropyCertificate* cert) {
  require_pg5(eps, "is_external_plane");
  if (eps.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "is_external_plane expects a plane");
  const auto v = section_isotropy(eps, cert);
  if (v.status() == IsotropyStatus::Unknown)
    throw Error(ErrorCode::UndecidedWithoutCertificate, "externality over F2(s,t) needs a certificate");
  return v.is_anisotropic();
}

std::string_view to_string(PlaneClass c) {
  switch (c) {
    case PlaneClass::External: return "external";
    case PlaneClass::TangentConeSection: return "tangent_cone_section";
    case PlaneClass::ConicSection: return "conic_section";
    case PlaneClass::DegenerateSection: return "degenerate_section";
    case PlaneClass::ContainsLines: return "contains_lines";
  }
  return "?";
}

PlaneClass classify_plane(const ProjSubspace& eps, const AnisotropyCertificate* cert) {
  if (is_external_plane(eps, cert)) return PlaneClass::External;
  const FieldSpec& f = eps.field();
  const auto r = restrict_form(klein_form(f), eps);
  if (r.is_zero()) return PlaneClass::ContainsLines;
  if (f.characteristic() == 2) return PlaneClass::DegenerateSection;
  const auto radical = kernel(r.polar_matrix(), 3, f);
  if (radical.empty()) return PlaneClass::ConicSection;
  if (radical.size() >= 2) return PlaneClass::ContainsLines;  // Q is a nonzero multiple of L^2
  // Q is a binary form on a complement of the radical point, pulled back.
  Mat complement;
  for (std::size_t i = 0; i < 3 && complement.size() < 2; ++i) {
    Mat trial = complement;
    trial.push_back(unit_vec(f, 3, i));
    Mat with_radical = trial;
    with_radical.push_back(radical[0]);
    if (rank(with_radical) == with_radical.size()) complement = std::move(trial);
  }
  const auto v = binary_anisotropic(restrict_to_rows(r, complement));
  return v.is_anisotropic() ? PlaneClass::TangentConeSection : PlaneClass::ContainsLines;
}

std::optional<TangentWitness> tangent_hyperplane_containing(const ProjSubspace& s) {
  require_pg5(s, "tangent_hyperplane_containing");
  const FieldSpec& f = s.field();
  const ProjSubspace p = polar(s);
  if (p.is_empty()) return std::nullopt;
  Vec x;
  if (p.dim() >= 3) {
    // A solid meets every plane of PG(5); this one lies on H5.
    const auto alpha = ProjSubspace::from_rows(f, 5, {unit_vec(f, 6, 0), unit_vec(f, 6, 1), unit_vec(f, 6, 2)});
    x = meet(p, alpha).row(0);
  } else {
    const auto v = section_isotropy(p);
    if (v.status() == IsotropyStatus::Unknown)
      throw Error(ErrorCode::Undecided, "cannot decide whether pi_5(S) meets H5 over F2(s,t)");
    if (v.is_anisotropic()) return std::nullopt;
    x = combine(p, *v.witness());
  }
  const auto pole = ProjSubspace::point(x);
  const auto line = lambda_inv(x);
  ProjSubspace m = meet(s, star_plane(line.row(0)));
  if (!m.is_empty() && !restrict_form(klein_form(f), m).is_zero())
    throw Error(ErrorCode::Internal, "witness subspace M leaves H5");
  if (m.dim() < s.dim() - 2) throw Error(ErrorCode::Internal, "witness subspace M too small");
  return TangentWitness{x, polar(pole), std::move(m)};
}

Vec tangent_through_point_avoiding(const Vec& p, const ProjSubspace& g, Rng& rng, int budget) {
  require_pg5(g, "tangent_through_point_avoiding");
  if (on_quadric(p)) throw Error(ErrorCode::PointOnQuadric, "p must lie off H5");
  if (!g.contains(p)) throw Error(ErrorCode::DimensionMismatch, "p must lie on G");
  const FieldSpec& f = g.field();
  const auto tangent_at_p = polar(ProjSubspace::point(p));
  for (int k = 0; k < budget; ++k) {
    Vec a = random_vector(f, 4, rng);
    if (is_zero(a)) continue;
    const auto l = meet(star_plane(a), tangent_at_p);
    const Vec x = random_vector_in(l, rng);
    bool contains_g = true;
    for (const auto& r : g.rows()) contains_g = contains_g && klein_b(x, r).is_zero();
    if (contains_g) continue;
    if (!on_quadric(x) || !klein_b(x, p).is_zero()) throw Error(ErrorCode::Internal, "tangent search postcondition");
    return x;
  }
  throw Error(ErrorCode::SearchExhausted, "no tangent hyperplane through p avoiding G found");
}

SecondPlane second_external_plane(const ProjSubspace& eps1, Rng& rng, const AnisotropyCertificate* cert, int budget) {
  require_pg5(eps1, "second_external_plane");
  const FieldSpec& f = eps1.field();
  if (f.is_finite()) throw Error(ErrorCode::FiniteField, "external planes need an infinite field");
  if (!is_external_plane(eps1, cert)) throw Error(ErrorCode::NotExternal, "eps1 meets H5");
  const auto pe = polar(eps1);
  for (int k = 0; k < budget; ++k) {
    // Tangent line T = y z at y: Q(y + c z) = c^2 Q(z) vanishes only at c = 0.
    const Vec y = random_quadric_point(f, rng);
    const Vec z = random_vector_in(polar(ProjSubspace::point(y)), rng);
    if (klein_q(z).is_zero()) continue;
    Vec q = y;
    axpy(q, random_nonzero_scalar(f, rng), z);
    if (eps1.contains(q) || pe.contains(q)) continue;
    auto eps2 = reflect(q, eps1);
    const auto common = meet(eps1, eps2);
    if (common.dim() != 1 || eps2 == eps1 || !(common == meet(eps1, polar(ProjSubspace::point(q)))))
      throw Error(ErrorCode::Internal, "reflected plane does not meet eps1 in its axis line");
    AnisotropyCertificate c{q, eps1.rows()};
    if (!is_external_plane(eps2, &c)) throw Error(ErrorCode::Internal, "isometric image of an external plane meets H5");
    return SecondPlane{std::move(eps2), std::move(q), std::move(c)};
  }
  throw Error(ErrorCode::SearchExhausted, "no admissible reflection centre found");
}

std::string_view to_string(PolarType t) {
  switch (t) {
    case PolarType::Skew: return "skew";
    case PolarType::MeetsInPoint: return "meets_in_point";
    case PolarType::MeetsInLine: return "meets_in_line";
    case PolarType::SelfPolar: return "self_polar";
  }
  return "?";
}

PolarType plane_polar_type(const ProjSubspace& eps) {
  require_pg5(eps, "plane_polar_type");
  if (eps.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "plane_polar_type expects a plane");
  switch (meet(eps, polar(eps)).dim()) {
    case -1: return PolarType::Skew;
    case 0: return PolarType::MeetsInPoint;
    case 1: return PolarType::MeetsInLine;
    default: return PolarType::SelfPolar;
  }
}

bool is_nucleus_line(const ProjSubspace& n) {
  require_pg5(n, "is_nucleus_line");
  if (n.dim() != 1) throw Error(ErrorCode::NotALine, "is_nucleus_line expects a line");
  return polar(n).contains(n);
}

bool in_polar_pencil(const ProjSubspace& g, const ProjSubspace& eps) {
  const auto m = meet(eps, polar(eps));
  if (m.dim() != 0) throw Error(ErrorCode::DimensionMismatch, "plane does not meet its polar in a single point");
  return g.dim() == 1 && eps.contains(g) && g.contains(m);
}

}  // namespace kp
