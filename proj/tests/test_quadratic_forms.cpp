#include <cstdint>
#include <cstdlib>

#include "doctest.h"
#include "kp/error.hpp"
#include "kp/quadratic_forms.hpp"
#include "kp/random.hpp"

using namespace kp;

namespace {

QuadraticForm form_from(const FieldSpec& f, std::initializer_list<std::initializer_list<long>> upper) {
  Mat m;
  for (auto row : upper) m.push_back(make_vec(f, row));
  return QuadraticForm::from_upper(f, m);
}

// p01 p23 - p02 p13 + p03 p12 in the order (p01, p02, p03, p12, p13, p23).
QuadraticForm klein_form(const FieldSpec& f) {
  Mat m(6, zero_vec(f, 6));
  m[0][5] = f.one();
  m[1][4] = -f.one();
  m[2][3] = f.one();
  return QuadraticForm::from_upper(f, m);
}

// Primitive solution of z^2 = a x^2 + b y^2 modulo 32. For a, b of 2-adic
// valuation at most one this decides solvability over Z_2: the odd
// coordinate of a primitive solution can be lifted by Hensel's lemma.
int hilbert_at_two_oracle(long a, long b) {
  for (long x = 0; x < 32; ++x)
    for (long y = 0; y < 32; ++y)
      for (long z = 0; z < 32; ++z) {
        if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0) continue;
        const long r = ((z * z - a * x * x - b * y * y) % 32 + 32) % 32;
        if (r == 0) return 1;
      }
  return -1;
}

bool squarefree(long n) {
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return n != 0;
}

// Integer zero of sum_{i<=j} c_ij x_i x_j with |x_i| <= h.
bool small_zero_exists(const long c[3][3], long h) {
  for (long x = -h; x <= h; ++x)
    for (long y = -h; y <= h; ++y)
      for (long z = -h; z <= h; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        const long v[3] = {x, y, z};
        long q = 0;
        for (int i = 0; i < 3; ++i)
          for (int j = i; j < 3; ++j) q += c[i][j] * v[i] * v[j];
        if (q == 0) return true;
      }
  return false;
}

}  // namespace

TEST_CASE("polar form consistency") {
  for (const auto& f : {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::f2st()}) {
    CAPTURE(f.name());
    Rng rng(5);
    for (int k = 0; k < 30; ++k) {
      Mat m(4, zero_vec(f, 4));
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) m[i][j] = random_scalar(f, rng);
      const auto q = QuadraticForm::from_upper(f, m);
      Vec x, y;
      for (int i = 0; i < 4; ++i) {
        x.push_back(random_scalar(f, rng));
        y.push_back(random_scalar(f, rng));
      }
      CHECK(q.polar(x, y) == q.value(x + y) - q.value(x) - q.value(y));
      CHECK(q.polar(x, x) == f.from_int(2) * q.value(x));
    }
  }
}

TEST_CASE("hilbert symbol examples") {
  const mpq_class m1(-1);
  CHECK(hilbert_symbol(m1, m1, Place::infinity()) == -1);
  CHECK(hilbert_symbol(m1, m1, Place::at(2)) == -1);
  CHECK(hilbert_at_two_oracle(-1, -1) == -1);
  for (long b : {-7, -3, 2, 5, 6, 11}) {
    CHECK(hilbert_symbol(mpq_class(1), mpq_class(b), Place::infinity()) == 1);
    CHECK(hilbert_symbol(mpq_class(1), mpq_class(b), Place::at(2)) == 1);
    CHECK(hilbert_symbol(mpq_class(1), mpq_class(b), Place::at(3)) == 1);
    CHECK(hilbert_symbol(mpq_class(1), mpq_class(b), Place::at(7)) == 1);
  }
  CHECK_THROWS_AS(hilbert_symbol(m1, m1, Place::at(9)), Error);
  try {
    hilbert_symbol(m1, m1, Place::at(1));
    FAIL("expected InvalidPlace");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidPlace);
  }
}

TEST_CASE("hilbert symbol at 2 against a mod-32 search") {
  for (long a = -15; a <= 15; ++a) {
    if (!squarefree(a)) continue;
    for (long b = -15; b <= 15; ++b) {
      if (!squarefree(b)) continue;
      CAPTURE(a);
      CAPTURE(b);
      CHECK(hilbert_symbol(mpq_class(a), mpq_class(b), Place::at(2)) == hilbert_at_two_oracle(a, b));
    }
  }
}

TEST_CASE("hilbert product formula") {
  Rng rng(2024);
  int tested = 0;
  while (tested < 100) {
    const long an = rng.uniform(-60, 60), ad = rng.uniform(1, 12);
    const long bn = rng.uniform(-60, 60), bd = rng.uniform(1, 12);
    if (an == 0 || bn == 0) continue;
    const mpq_class a(an, ad), b(bn, bd);
    int product = 1;
    for (const auto& v : relevant_places(a, b))
      product *= hilbert_symbol(a, b, v);
    CHECK(product == 1);
    ++tested;
  }
}

TEST_CASE("ternary examples") {
  const auto q = FieldSpec::rationals();
  auto v = ternary_isotropic(form_from(q, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(v.is_anisotropic());
  CHECK(v.proof() == ProofTag::HasseMinkowski);

  const auto split = form_from(q, {{1, 0, 0}, {0, 1, 0}, {0, 0, -1}});
  v = ternary_isotropic(split);
  REQUIRE(v.is_isotropic());
  CHECK(split.value(*v.witness()).is_zero());

  // Degenerate: a radical vector with Q = 0.
  v = ternary_isotropic(form_from(q, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}));
  CHECK(v.is_isotropic());

  CHECK_THROWS_AS(ternary_isotropic(form_from(FieldSpec::f2st(), {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), Error);
  CHECK_THROWS_AS(ternary_isotropic(form_from(q, {{1, 0}, {0, 1}})), Error);
}

TEST_CASE("every ternary form over GF(2) and GF(3) is isotropic") {
  // Chevalley-Warning: degree 2 in 3 variables always has a nontrivial zero.
  for (unsigned p : {2u, 3u}) {
    const auto f = FieldSpec::prime(p);
    std::uint32_t total = 1;
    for (int i = 0; i < 6; ++i) total *= p;
    for (std::uint32_t code = 0; code < total; ++code) {
      std::uint32_t c = code;
      Mat m(3, zero_vec(f, 3));
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
          m[i][j] = f.from_int(c % p);
          c /= p;
        }
      const auto form = QuadraticForm::from_upper(f, m);
      const auto v = ternary_isotropic(form);
      REQUIRE(v.is_isotropic());
      CHECK(form.value(*v.witness()).is_zero());
    }
  }
}

TEST_CASE("ternary isotropy over Q agrees with a height-bounded search") {
  const auto q = FieldSpec::rationals();
  Rng rng(77);
  int found = 0, anisotropic = 0;
  for (int k = 0; k < 120; ++k) {
    long c[3][3] = {};
    Mat m(3, zero_vec(q, 3));
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        c[i][j] = rng.uniform(-6, 6);
        m[i][j] = q.from_int(c[i][j]);
      }
    const auto form = QuadraticForm::from_upper(q, m);
    const auto v = ternary_isotropic(form);
    const bool oracle = small_zero_exists(c, k < 20 ? 30 : 12);
    if (oracle) {
      ++found;
      CHECK(v.is_isotropic());
    }
    if (v.is_anisotropic()) {
      ++anisotropic;
      CHECK_FALSE(oracle);
    }
    if (v.is_isotropic()) CHECK(form.value(*v.witness()).is_zero());
  }
  CHECK(found > 10);
  CHECK(anisotropic > 5);
}

TEST_CASE("binary examples") {
  const auto q = FieldSpec::rationals();
  CHECK(binary_anisotropic(form_from(q, {{1, 0}, {0, 1}})).is_anisotropic());
  const auto hyp = form_from(q, {{1, 0}, {0, -1}});
  auto v = binary_anisotropic(hyp);
  REQUIRE(v.is_isotropic());
  const bool on_diagonal = proportional(*v.witness(), make_vec(q, {1, 1})) || proportional(*v.witness(), make_vec(q, {1, -1}));
  CHECK(on_diagonal);

  // s is not a square: its exponents are odd.
  const auto f = FieldSpec::f2st();
  CHECK_FALSE(f.s().f2().num.all_exponents_even());
  Mat m(2, zero_vec(f, 2));
  m[0][0] = f.one();
  m[1][1] = f.s();
  v = binary_anisotropic(QuadraticForm::from_upper(f, m));
  CHECK(v.is_anisotropic());

  m[1][1] = f.s() * f.s();
  v = binary_anisotropic(QuadraticForm::from_upper(f, m));
  CHECK(v.is_isotropic());

  // x^2 + xy + s y^2: z^2 + z = s has a root z = P/R with P, R small only if
  // s were of that shape; it is not, so the search gives up.
  m[0][1] = f.one();
  m[1][1] = f.s();
  v = binary_anisotropic(QuadraticForm::from_upper(f, m));
  CHECK(v.status() == IsotropyStatus::Unknown);
  // x^2 + xy + (s^2 + s) y^2 = (x + s y)(x + (s + 1) y).
  m[1][1] = f.s() * f.s() + f.s();
  const auto split = QuadraticForm::from_upper(f, m);
  v = binary_anisotropic(split);
  REQUIRE(v.is_isotropic());
  CHECK(split.value(*v.witness()).is_zero());

  const auto g3 = FieldSpec::prime(3);
  CHECK(binary_anisotropic(form_from(g3, {{1, 0}, {0, 1}})).is_anisotropic());
  CHECK(binary_anisotropic(form_from(g3, {{1, 0}, {0, 2}})).is_isotropic());
}

TEST_CASE("additive forms over F2(s,t)") {
  const auto f = FieldSpec::f2st();
  const auto s = f.s(), t = f.t();
  auto additive = [&](const Vec& d) { return additive_isotropic(QuadraticForm::diagonal(f, d)); };
  auto v = additive({f.one(), s, t, s * t});
  CHECK(v.is_anisotropic());
  CHECK(v.proof() == ProofTag::Certificate);
  v = additive({f.one(), s, f.one() + s});
  CHECK(v.is_isotropic());
  // Dividing by squares does not change the square class.
  v = additive({f.one() / (s * s + t * t), s / (t * t), t * (s + f.one()) * (s + f.one())});
  CHECK(v.is_anisotropic());
  const auto form = QuadraticForm::diagonal(f, {s / (t + f.one()), s * t * t * (t + f.one()) / (t * t + f.one()), f.one()});
  v = additive_isotropic(form);
  REQUIRE(v.is_isotropic());
  CHECK(form.value(*v.witness()).is_zero());
  CHECK_THROWS_AS(additive_isotropic(form_from(FieldSpec::rationals(), {{1, 0}, {0, 1}})), Error);
}

TEST_CASE("restriction examples") {
  const auto q = FieldSpec::rationals();
  const auto k = klein_form(q);

  // Plane e0, e1, e2: products p01 p02, p01 p03, p02 p03 never meet in the
  // Klein Gram matrix, so the restriction is zero.
  const auto plane = ProjSubspace::from_rows(q, 5, {unit_vec(q, 6, 0), unit_vec(q, 6, 1), unit_vec(q, 6, 2)});
  const auto r = restrict_form(k, plane);
  CHECK(r.dim() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) CHECK(r.coeff(i, j) == k.coeff(i, j));
  CHECK(r.is_zero());

  // Congruence oracle: P^T G P for the basis matrix P.
  Rng rng(9);
  for (int n = 0; n < 20; ++n) {
    Mat rows;
    for (int i = 0; i < 3; ++i) {
      Vec v;
      for (int j = 0; j < 6; ++j) v.push_back(random_scalar(q, rng));
      rows.push_back(v);
    }
    const auto res = restrict_to_rows(k, rows);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        Scalar g = q.zero();
        for (std::size_t i = 0; i < 6; ++i)
          for (std::size_t j = 0; j < 6; ++j) g += rows[a][i] * k.polar_matrix()[i][j] * rows[b][j];
        CHECK(res.polar_matrix()[a][b] == g);
      }
  }

  // Two points of H5 with B = 0 span a totally isotropic line.
  const auto line = ProjSubspace::from_rows(q, 5, {unit_vec(q, 6, 0), unit_vec(q, 6, 1)});
  CHECK(restrict_form(k, line).is_zero());

  const auto full = restrict_form(k, ProjSubspace::whole(q, 5));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i; j < 6; ++j) CHECK(full.coeff(i, j) == k.coeff(i, j));

  CHECK_THROWS_AS(restrict_form(k, ProjSubspace::whole(q, 3)), Error);
}

TEST_CASE("isotropic verdicts carry valid witnesses") {
  const auto q = FieldSpec::rationals();
  const auto form = form_from(q, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK_THROWS_AS(IsotropyVerdict::isotropic(form, make_vec(q, {1, 0, 0})), Error);
  CHECK_THROWS_AS(IsotropyVerdict::isotropic(form, make_vec(q, {0, 0, 0})), Error);
  const auto w = bounded_zero_search(form_from(q, {{2, 0, 0}, {0, 3, 0}, {0, 0, -5}}), 3);
  REQUIRE(w);
  CHECK(form_from(q, {{2, 0, 0}, {0, 3, 0}, {0, 0, -5}}).value(*w).is_zero());
  CHECK_FALSE(bounded_zero_search(form, 3));
}
