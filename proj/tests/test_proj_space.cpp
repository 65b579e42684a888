#include <algorithm>
#include <set>
#include <string>

#include "doctest.h"
#include "kp/error.hpp"
#include "kp/proj_space.hpp"
#include "kp/random.hpp"

using namespace kp;

namespace {

ProjSubspace pt(const FieldSpec& f, std::initializer_list<long> v) { return ProjSubspace::point(make_vec(f, v)); }

std::string key(const ProjSubspace& s) {
  std::string out;
  for (const auto& r : s.rows()) {
    for (const auto& x : r) out += x.to_string() + ",";
    out += ";";
  }
  return out;
}

// Number of k-dimensional vector subspaces of GF(q)^n, counted as ordered
// bases of the subspace divided by ordered bases of GF(q)^k.
std::uint64_t subspace_count(unsigned n, unsigned k, unsigned q) {
  std::uint64_t num = 1, den = 1;
  std::uint64_t qn = 1, qk = 1, qi = 1;
  for (unsigned i = 0; i < n; ++i) qn *= q;
  for (unsigned i = 0; i < k; ++i) qk *= q;
  for (unsigned i = 0; i < k; ++i) {
    num *= qn - qi;
    den *= qk - qi;
    qi *= q;
  }
  return num / den;
}

}  // namespace

TEST_CASE("span examples") {
  const auto q = FieldSpec::rationals();
  const auto line = span({pt(q, {1, 0, 0, 0}), pt(q, {0, 1, 0, 0})});
  CHECK(line.dim() == 1);
  CHECK(line.rows() == Mat{make_vec(q, {1, 0, 0, 0}), make_vec(q, {0, 1, 0, 0})});
  CHECK(span({line, pt(q, {3, -2, 0, 0})}) == line);

  const auto plane = span({pt(q, {1, 2, 0, 3, 1, 1}), pt(q, {0, 1, 5, 1, 1, 2}), pt(q, {2, 0, 1, 1, 0, 7})});
  Mat rows{make_vec(q, {1, 2, 0, 3, 1, 1}), make_vec(q, {0, 1, 5, 1, 1, 2}), make_vec(q, {2, 0, 1, 1, 0, 7})};
  CHECK(plane.dim() == 2);
  CHECK(rank(rows) == 3);
  CHECK_THROWS_AS(span({line, pt(q, {1, 0, 0, 0, 0, 0})}), Error);
}

TEST_CASE("meet examples") {
  const auto q = FieldSpec::rationals();
  const auto h1 = zero_set(q, 5, Mat{make_vec(q, {1, 0, 0, 0, 0, 0})});
  const auto h2 = zero_set(q, 5, Mat{make_vec(q, {0, 1, 1, 0, 0, 0})});
  CHECK(h1.dim() == 4);
  CHECK(meet(h1, h2).dim() == 3);

  const auto l = span({pt(q, {1, 0, 0, 0, 0, 0}), pt(q, {0, 1, 0, 0, 0, 0})});
  const auto m = meet(l, h2);
  CHECK(m.dim() == 0);
  CHECK(m == pt(q, {1, 0, 0, 0, 0, 0}));

  const auto a = span({pt(q, {1, 0, 0, 0}), pt(q, {0, 1, 0, 0})});
  const auto b = span({pt(q, {0, 0, 1, 0}), pt(q, {0, 0, 0, 1})});
  CHECK(meet(a, b).is_empty());
  CHECK(meet(a, b).dim() == -1);
  CHECK_THROWS_AS(meet(a, h1), Error);
}

TEST_CASE("incidence examples") {
  const auto q = FieldSpec::rationals();
  const auto l = span({pt(q, {1, 0, 0, 0}), pt(q, {0, 1, 0, 0})});
  CHECK(incident(pt(q, {1, 0, 0, 0}), l));
  CHECK_FALSE(incident(pt(q, {0, 0, 1, 0}), l));
  CHECK(incident(ProjSubspace::empty(q, 3), l));
  CHECK(incident(ProjSubspace::empty(q, 3), ProjSubspace::empty(q, 3)));
}

TEST_CASE("point_at examples") {
  const auto q = FieldSpec::rationals();
  const auto l = span({pt(q, {1, 0, 2, 0}), pt(q, {0, 1, 0, 5})});
  CHECK(point_at(l, {q.one(), q.zero()}) == ProjSubspace::point(l.row(0)));
  CHECK(point_at(l, {q.zero(), q.one()}) == ProjSubspace::point(l.row(1)));
  CHECK_THROWS_AS(point_at(l, {q.zero(), q.zero()}), Error);

  // Over GF(2) a line has exactly three points; [1:1] is the one that is
  // neither basis point.
  const auto f = FieldSpec::prime(2);
  const auto g = span({pt(f, {1, 0, 1, 0, 0, 1}), pt(f, {0, 1, 1, 1, 0, 0})});
  std::set<std::string> points;
  SubspaceStream all(f, 5, 0);
  while (auto p = all.next())
    if (incident(*p, g)) points.insert(key(*p));
  CHECK(points.size() == 3);
  const auto third = point_at(g, {f.one(), f.one()});
  CHECK(points.count(key(third)) == 1);
  CHECK_FALSE(third == ProjSubspace::point(g.row(0)));
  CHECK_FALSE(third == ProjSubspace::point(g.row(1)));
}

TEST_CASE("param_of inverts point_at") {
  const auto q = FieldSpec::rationals();
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const auto l = random_subspace(q, 5, 1, rng, 3);
    if (l.dim() != 1) continue;
    LineParam p{random_scalar(q, rng), random_scalar(q, rng)};
    if (p.t0.is_zero() && p.t1.is_zero()) continue;
    const Vec v = q.from_int(3) * point_vector_at(l, p);
    CHECK(same_param(param_of(l, v), p));
  }
}

TEST_CASE("enumeration counts") {
  struct Case {
    unsigned p;
    int n, d;
  };
  for (const auto c : {Case{2, 3, 1}, Case{2, 5, 0}, Case{2, 5, 2}, Case{3, 3, 1}, Case{3, 3, 2}, Case{2, 5, 1}}) {
    CAPTURE(c.p);
    CAPTURE(c.n);
    CAPTURE(c.d);
    const auto f = FieldSpec::prime(c.p);
    SubspaceStream s(f, c.n, c.d);
    std::set<std::string> seen;
    std::size_t count = 0;
    while (auto x = s.next()) {
      CHECK(x->dim() == c.d);
      seen.insert(key(*x));
      ++count;
    }
    CHECK(seen.size() == count);
    const auto expected = subspace_count(c.n + 1, c.d + 1, c.p);
    CHECK(count == expected);
    CHECK(gaussian_binomial(c.n + 1, c.d + 1, c.p) == expected);

    s.reset();
    std::size_t again = 0;
    while (s.next()) ++again;
    CHECK(again == count);
  }
  CHECK(subspace_count(4, 2, 2) == 35);
  CHECK(subspace_count(6, 1, 2) == 63);
  CHECK(subspace_count(6, 3, 2) == 1395);
  CHECK_THROWS_AS(SubspaceStream(FieldSpec::rationals(), 3, 1), Error);
}

TEST_CASE("modular law and canonical form") {
  for (const auto& f : {FieldSpec::rationals(), FieldSpec::prime(3), FieldSpec::f2st()}) {
    CAPTURE(f.name());
    Rng rng(19);
    for (int k = 0; k < 40; ++k) {
      const int n = k % 2 ? 5 : 3;
      const auto s = random_subspace(f, n, static_cast<int>(rng.uniform(0, n - 1)), rng, 3);
      const auto t = random_subspace(f, n, static_cast<int>(rng.uniform(0, n - 1)), rng, 3);
      CHECK(s.dim() + t.dim() == join(s, t).dim() + meet(s, t).dim());
      CHECK(incident(meet(s, t), s));
      CHECK(incident(meet(s, t), t));

      // Scramble the basis: scale, permute and mix rows.
      Mat rows = s.rows();
      for (auto& r : rows) r = random_nonzero_scalar(f, rng) * r;
      std::reverse(rows.begin(), rows.end());
      for (std::size_t i = 1; i < rows.size(); ++i) axpy(rows[i], random_scalar(f, rng), rows[0]);
      CHECK(ProjSubspace::from_rows(f, n, rows) == s);
    }
  }
}
