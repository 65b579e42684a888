#include "kp/random.hpp"

#include "kp/error.hpp"

namespace kp {

Scalar random_scalar(const FieldSpec& field, Rng& rng, int height) {
  switch (field.kind) {
    case FieldKind::Rationals:
      return field.from_int(static_cast<long>(rng.uniform(-height, height)));
    case FieldKind::PrimeField:
      return field.from_int(static_cast<long>(rng.uniform(0, field.p - 1)));
    case FieldKind::F2RationalFunctions: {
      // Monomials of total degree <= 2, each present with probability 1/2.
      Gf2Poly poly;
      for (std::uint32_t a = 0; a <= 2; ++a)
        for (std::uint32_t b = 0; a + b <= 2; ++b)
          if (rng.coin()) poly += Gf2Poly::monomial(a, b);
      return Scalar(F2Frac{std::move(poly), Gf2Poly::one()});
    }
  }
  return field.zero();
}

Scalar random_nonzero_scalar(const FieldSpec& field, Rng& rng, int height) {
  while (true) {
    Scalar x = random_scalar(field, rng, height);
    if (!x.is_zero()) return x;
  }
}

}  // namespace kp

namespace kp {

Vec random_vector(const FieldSpec& field, std::size_t n, Rng& rng, int height) {
  Vec v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar(field, rng, height));
  return v;
}

Vec random_vector_in(const ProjSubspace& s, Rng& rng, int height) {
  if (s.is_empty()) throw Error(ErrorCode::DimensionMismatch, "no vectors in the empty subspace");
  while (true) {
    Vec v = zero_vec(s.field(), static_cast<std::size_t>(s.ambient() + 1));
    for (const auto& r : s.rows()) axpy(v, random_scalar(s.field(), rng, height), r);
    if (!is_zero(v)) return v;
  }
}

ProjSubspace random_subspace(const FieldSpec& field, int n, int dim, Rng& rng, int height) {
  if (dim < -1 || dim > n) throw Error(ErrorCode::DimensionMismatch, "bad subspace dimension");
  while (true) {
    Mat rows;
    for (int i = 0; i <= dim; ++i) rows.push_back(random_vector(field, static_cast<std::size_t>(n + 1), rng, height));
    auto s = ProjSubspace::from_rows(field, n, std::move(rows));
    if (s.dim() == dim) return s;
  }
}

}  // namespace kp
