#include "kp/flocks.hpp"

#include "kp/error.hpp"

namespace kp {

namespace {

Vec random_point3(const FieldSpec& f, Rng& rng) {
  Vec v;
  do v = random_vector(f, 4, rng); while (is_zero(v));
  return v;
}

bool conjugate_to(const Vec& x, const ProjSubspace& s) {
  for (const auto& r : s.rows())
    if (!klein_b(x, r).is_zero()) return false;
  return true;
}

}  // namespace

LinearComplex::LinearComplex(Vec pole) : pole_(std::move(pole)) {
  if (pole_.size() != 6 || is_zero(pole_)) throw Error(ErrorCode::DimensionMismatch, "pole must be a point of PG(5)");
  if (on_quadric(pole_)) throw Error(ErrorCode::PointOnQuadric, "special linear complexes are not supported");
}

bool LinearComplex::contains(const ProjSubspace& line3) const { return klein_b(lambda(line3), pole_).is_zero(); }

bool complex_contains(const LinearComplex& c, const ProjSubspace& line3) { return c.contains(line3); }

LinearFlock::LinearFlock(Vec pole, ProjSubspace carrier, const AnisotropyCertificate* cert)
    : complex_(std::move(pole)), carrier_(std::move(carrier)) {
  if (!carrier_.contains(complex_.pole())) throw Error(ErrorCode::DimensionMismatch, "pole must lie on the carrier");
  if (!is_external_plane(carrier_, cert)) throw Error(ErrorCode::NotExternal, "carrier plane meets H5");
}

bool LinearFlock::in_pencil(const ProjSubspace& x) const {
  return x.ambient() == 5 && x.dim() == 1 && carrier_.contains(x) && x.contains(complex_.pole());
}

FlockMember flock_spread_through(const LinearFlock& fl, const ProjSubspace& line3) {
  if (!fl.complex().contains(line3)) throw Error(ErrorCode::NotInComplex, "line is not in the linear complex");
  const Vec x = lambda(line3);
  const auto solid = join(polar(fl.carrier()), ProjSubspace::point(x));
  if (solid.dim() != 3) throw Error(ErrorCode::VerificationFailed, "line image lies in the polar of the carrier");
  auto member = polar(solid);
  if (!fl.in_pencil(member)) throw Error(ErrorCode::VerificationFailed, "flock member is off the pencil");
  if (!conjugate_to(x, member)) throw Error(ErrorCode::VerificationFailed, "line is not in the member's spread");
  auto spread = spread_from_secant(member);
  return FlockMember{std::move(member), std::move(spread)};
}

SpreadDescriptor distinguished_class(const HfdDescriptor& d) {
  if (classify(d).kind == HfdCase::PlaneOfLines)
    throw Error(ErrorCode::CliffordCase, "Clifford parallelisms have no distinguished class");
  return spread_from_secant(d.d);
}

PartitionReport check_distinguished_class(const HfdDescriptor& d, std::size_t vertices, std::size_t lines,
                                          std::uint64_t seed) {
  const auto spread = distinguished_class(d);
  PartitionReport r;
  r.seed = seed;
  Rng rng(seed);
  const FieldSpec& f = d.d.field();
  std::vector<LinearComplex> complexes;
  Mat forms;
  while (complexes.size() < vertices) {
    const Vec v = random_vector_in(d.d, rng);
    complexes.emplace_back(v);
    forms.push_back(polar_row(v));
  }
  const auto common = zero_set(f, 5, forms);
  for (std::size_t i = 0; i < lines; ++i, ++r.checked) {
    const std::string tag = "line " + std::to_string(i) + ": ";
    const Vec a = random_point3(f, rng);
    const auto l = line_through_point(spread, a);
    for (const auto& c : complexes)
      if (!c.contains(l)) r.failures.push_back(tag + "spread line outside G(v)");
    // Lines through a lying in every G(v).
    const auto m = meet(star_plane(a), common);
    if (m.dim() != 0) {
      r.failures.push_back(tag + "complexes share " + std::to_string(m.dim() + 1) + " dimensions of lines through a");
      continue;
    }
    const auto back = lambda_inv(m);
    if (!(back == l) || !spread_contains(spread, back)) r.failures.push_back(tag + "common line not a spread line");
  }
  return r;
}

SpreadDescriptor parallelism_from_hfd(const HfdDescriptor& d, const ProjSubspace& line3) {
  const Vec x = lambda(line3);
  const auto g = line_in_tangent_hyperplane(d, polar(ProjSubspace::point(x)));
  if (!conjugate_to(x, g)) throw Error(ErrorCode::VerificationFailed, "line not in its parallel class");
  return spread_from_secant(g);
}

ProjSubspace random_complex_line(const LinearComplex& c, Rng& rng) {
  const FieldSpec& f = c.pole()[0].field();
  const auto null = polar(ProjSubspace::point(c.pole()));
  const auto pencil = meet(star_plane(random_point3(f, rng)), null);
  return lambda_inv(random_vector_in(pencil, rng));
}

PartitionReport verify_flock(const LinearFlock& fl, std::size_t samples, std::uint64_t seed, std::size_t cross) {
  PartitionReport r;
  r.seed = seed;
  Rng rng(seed);
  const Vec& p = fl.complex().pole();
  const auto& eps = fl.carrier();
  for (std::size_t i = 0; i < samples; ++i, ++r.checked) {
    const std::string tag = "line " + std::to_string(i) + ": ";
    const auto l = random_complex_line(fl.complex(), rng);
    FlockMember m{ProjSubspace::empty(eps.field(), 5), SecantSpread{ProjSubspace::empty(eps.field(), 5)}};
    try {
      m = flock_spread_through(fl, l);
    } catch (const Error& e) {
      r.failures.push_back(tag + e.what());
      continue;
    }
    if (!spread_contains(m.spread, l)) r.failures.push_back(tag + "not in the claiming spread");
    for (std::size_t k = 0; k < cross;) {
      const auto other = ProjSubspace::from_rows(eps.field(), 5, Mat{p, random_vector_in(eps, rng)});
      if (other.dim() != 1 || other == m.x) continue;
      ++k;
      if (spread_contains(spread_from_secant(other), l)) r.failures.push_back(tag + "claimed by a second member");
    }
  }
  return r;
}

}  // namespace kp
