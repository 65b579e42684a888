#include "kp/spreads.hpp"

#include <algorithm>
#include <deque>

#include "kp/error.hpp"

namespace kp {

namespace {

// Small nonzero elements of K^4, fewest nonzero coordinates first. The first
// few are 1, i, j, k and then sums such as 1 + i.
std::vector<Vec> small_elements(const FieldSpec& f) {
  Vec coeffs;
  if (f.kind == FieldKind::F2RationalFunctions)
    coeffs = {f.one(), f.s(), f.t()};
  else
    coeffs = {f.one(), -f.one(), f.from_int(2)};
  std::vector<std::pair<int, Vec>> out;
  const std::size_t base = coeffs.size() + 1;
  std::size_t total = 1;
  for (int i = 0; i < 4; ++i) total *= base;
  for (std::size_t code = 1; code < total; ++code) {
    Vec v = zero_vec(f, 4);
    int weight = 0;
    std::size_t c = code;
    for (std::size_t i = 0; i < 4; ++i, c /= base) {
      if (c % base == 0) continue;
      v[i] = coeffs[c % base - 1];
      ++weight;
    }
    if (!is_zero(v)) out.emplace_back(weight, std::move(v));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Vec> vs;
  for (auto& [w, v] : out) vs.push_back(std::move(v));
  return vs;
}

ProjSubspace line3(const FieldSpec& f, const Vec& a, const Vec& b) {
  return ProjSubspace::from_rows(f, 3, Mat{a, b});
}

ProjSubspace coset_line(const CosetSpread& c, const Vec& x) {
  const Algebra& h = c.algebra;
  Mat rows;
  for (const auto& l : c.basis) rows.push_back(c.side == Side::Left ? h.mul(x, l) : h.mul(l, x));
  return ProjSubspace::from_rows(h.field(), 3, std::move(rows));
}

Vec random_point3(const FieldSpec& f, Rng& rng) {
  Vec v;
  do v = random_vector(f, 4, rng); while (is_zero(v));
  return v;
}

const FieldSpec& field_of(const SpreadDescriptor& c) {
  if (const auto* cs = std::get_if<CosetSpread>(&c)) return cs->algebra.field();
  return std::get<SecantSpread>(c).g.field();
}

// lambda-images of spread lines through the given points until they span a solid.
ProjSubspace solid_of(const SpreadDescriptor& c) {
  const FieldSpec& f = field_of(c);
  Mat rows;
  for (const auto& x : small_elements(f)) {
    ProjSubspace l = std::holds_alternative<CosetSpread>(c) ? coset_line(std::get<CosetSpread>(c), x)
                                                            : line_through_point(c, x);
    if (l.dim() != 1) continue;
    rows.push_back(lambda(l));
    if (rank(rows) < rows.size()) rows.pop_back();
    if (rows.size() == 4) return ProjSubspace::from_rows(f, 5, std::move(rows));
  }
  throw Error(ErrorCode::SpanDeficient, "spread lines did not span a solid");
}

}  // namespace

std::string_view to_string(Side s) { return s == Side::Left ? "left" : "right"; }

CosetSpread coset_spread(const Algebra& h, const Subfield& l, Side side) {
  return CosetSpread{h, side, Mat{h.one(), l.generator}};
}

ProjSubspace gamma(const SpreadDescriptor& c) {
  ProjSubspace g = polar(solid_of(c));
  if (classify_line(g) != LineClass::Secant0) throw Error(ErrorCode::VerificationFailed, "gamma image is not a 0-secant");
  return g;
}

SpreadDescriptor spread_from_secant(const ProjSubspace& g) {
  if (g.ambient() != 5 || g.dim() != 1) throw Error(ErrorCode::NotALine, "a spread needs a line of PG(5)");
  if (classify_line(g) != LineClass::Secant0) throw Error(ErrorCode::NotZeroSecant, "line meets the Klein quadric");
  return SecantSpread{g};
}

ProjSubspace line_through_point(const SpreadDescriptor& c, const Vec& p) {
  if (p.size() != 4 || is_zero(p)) throw Error(ErrorCode::DimensionMismatch, "expected a point of PG(3)");
  if (const auto* cs = std::get_if<CosetSpread>(&c)) {
    auto l = coset_line(*cs, p);
    if (l.dim() != 1) throw Error(ErrorCode::VerificationFailed, "coset is not a line");
    return l;
  }
  const auto& g = std::get<SecantSpread>(c).g;
  const auto m = meet(star_plane(p), polar(g));
  if (m.dim() != 0) throw Error(ErrorCode::VerificationFailed, "star plane does not meet the solid in a point");
  return lambda_inv(m);
}

bool spread_contains(const SpreadDescriptor& c, const ProjSubspace& line) {
  if (line.ambient() != 3 || line.dim() != 1) throw Error(ErrorCode::NotALine, "expected a line of PG(3)");
  if (const auto* cs = std::get_if<CosetSpread>(&c)) {
    // W = cL (left) iff w0^-1 W = L; W = Lc iff W w0^-1 = L.
    const Algebra& h = cs->algebra;
    const Vec w0inv = h.inverse(line.row(0));
    const Vec x = cs->side == Side::Left ? h.mul(w0inv, line.row(1)) : h.mul(line.row(1), w0inv);
    Mat m = cs->basis;
    m.push_back(h.one());
    m.push_back(x);
    return rank(std::move(m)) == 2;
  }
  const auto& g = std::get<SecantSpread>(c).g;
  const Vec x = lambda(line);
  return klein_b(x, g.row(0)).is_zero() && klein_b(x, g.row(1)).is_zero();
}

CosetSpread clifford_class(const Algebra& h, Side side, const ProjSubspace& line) {
  if (line.ambient() != 3 || line.dim() != 1) throw Error(ErrorCode::NotALine, "expected a line of PG(3)");
  const Vec w0inv = h.inverse(line.row(0));
  const Vec x = side == Side::Left ? h.mul(w0inv, line.row(1)) : h.mul(line.row(1), w0inv);
  return coset_spread(h, intermediate_field(h, x), side);
}

ProjSubspace clifford_hfd_plane(const Algebra& h, Side side, Rng& rng, int extra) {
  if (!is_division(h)) throw Error(ErrorCode::NotDivision, h.describe() + " has zero divisors");
  const FieldSpec& f = h.field();
  std::vector<ProjSubspace> images;
  for (std::size_t i = 1; i < 4; ++i) images.push_back(gamma(clifford_class(h, side, line3(f, h.one(), h.basis(i)))));
  ProjSubspace plane = span(images);
  for (int tries = 0; plane.dim() < 2 && tries < 20; ++tries)
    plane = join(plane, gamma(clifford_class(h, side, random_line3(f, rng))));
  if (plane.dim() != 2) throw Error(ErrorCode::VerificationFailed, "class images do not span a plane");
  if (!is_external_plane(plane)) throw Error(ErrorCode::VerificationFailed, "Clifford plane meets the Klein quadric");
  for (int i = 0; i < extra; ++i) {
    if (!plane.contains(gamma(clifford_class(h, side, random_line3(f, rng)))))
      throw Error(ErrorCode::VerificationFailed, "class image off the Clifford plane");
  }
  return plane;
}

PartitionReport verify_partition(const SpreadDescriptor& c, std::size_t samples, std::uint64_t seed) {
  PartitionReport r;
  r.seed = seed;
  Rng rng(seed);
  const FieldSpec& f = field_of(c);
  for (std::size_t i = 0; i < samples; ++i, ++r.checked) {
    const Vec p = random_point3(f, rng);
    const std::string tag = "point " + std::to_string(i) + ": ";
    ProjSubspace l = ProjSubspace::empty(f, 3);
    try {
      l = line_through_point(c, p);
    } catch (const Error& e) {
      r.failures.push_back(tag + e.what());
      continue;
    }
    if (!l.contains(p)) {
      r.failures.push_back(tag + "returned line misses the point");
      continue;
    }
    if (!spread_contains(c, l)) {
      r.failures.push_back(tag + "returned line is not a spread line");
      continue;
    }
    // A second point of the line must give the same line back.
    Vec q = l.row(0);
    if (proportional(q, p)) q = l.row(1);
    if (!(line_through_point(c, q) == l)) r.failures.push_back(tag + "two spread lines through one point");
  }
  return r;
}

PartitionReport verify_parallelism(const FieldSpec& field, const ClassOf& class_of, std::size_t samples,
                                   std::uint64_t seed, std::size_t cross) {
  PartitionReport r;
  r.seed = seed;
  Rng rng(seed);
  std::deque<std::pair<SpreadDescriptor, ProjSubspace>> recent;
  for (std::size_t i = 0; i < samples; ++i, ++r.checked) {
    const auto l = random_line3(field, rng);
    const std::string tag = "line " + std::to_string(i) + ": ";
    SpreadDescriptor c = class_of(l);
    if (!spread_contains(c, l)) {
      r.failures.push_back(tag + "not in its own class");
      continue;
    }
    ProjSubspace key = gamma(c);
    for (const auto& [other, other_key] : recent) {
      if (other_key == key) continue;
      if (spread_contains(other, l)) r.failures.push_back(tag + "lies in a second class");
    }
    recent.emplace_back(std::move(c), std::move(key));
    if (recent.size() > cross) recent.pop_front();
  }
  return r;
}

PartitionReport verify_clifford_parallelism(const Algebra& h, Side side, std::size_t samples, std::uint64_t seed) {
  return verify_parallelism(
      h.field(), [&](const ProjSubspace& l) -> SpreadDescriptor { return clifford_class(h, side, l); }, samples, seed);
}

void enforce(const PartitionReport& r) {
  if (!r.ok()) throw Error(ErrorCode::PartitionViolation, r.failures.front());
}

bool galois_criterion_check(const ProjSubspace& g, const Subfield& l) {
  return is_separable_quadratic(l) == meet(g, polar(g)).is_empty();
}

}  // namespace kp
