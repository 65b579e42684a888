#include "kp/algebras.hpp"

#include "kp/error.hpp"
#include "kp/quadratic_forms.hpp"

namespace kp {

Algebra::Algebra(AlgebraKind kind, FieldSpec field, Scalar a, Scalar b)
    : kind_(kind), field_(field), a_(std::move(a)), b_(std::move(b)) {
  const Scalar one = field_.one(), zero = field_.zero();
  for (auto& row : table_) row.fill(Entry{zero, 0});
  for (std::size_t i = 0; i < 4; ++i) {
    table_[0][i] = {one, i};
    table_[i][0] = {one, i};
  }
  if (kind_ == AlgebraKind::Quaternion) {
    // index 0 = 1, 1 = i, 2 = j, 3 = k
    table_[1][1] = {a_, 0};
    table_[2][2] = {b_, 0};
    table_[3][3] = {-(a_ * b_), 0};
    table_[1][2] = {one, 3};
    table_[2][1] = {-one, 3};
    table_[1][3] = {a_, 2};
    table_[3][1] = {-a_, 2};
    table_[2][3] = {-b_, 1};
    table_[3][2] = {b_, 1};
  } else {
    // index 1 = u, 2 = w, 3 = uw
    table_[1][1] = {a_, 0};
    table_[2][2] = {b_, 0};
    table_[3][3] = {a_ * b_, 0};
    table_[1][2] = table_[2][1] = {one, 3};
    table_[1][3] = table_[3][1] = {a_, 2};
    table_[2][3] = table_[3][2] = {b_, 1};
  }
}

Algebra Algebra::quaternion(const FieldSpec& field, const Scalar& a, const Scalar& b) {
  if (field.characteristic() == 2)
    throw Error(ErrorCode::UnsupportedBaseField, "quaternion algebras need char != 2");
  if (!(a.field() == field) || !(b.field() == field)) throw Error(ErrorCode::FieldMismatch, "a, b not in base field");
  if (a.is_zero() || b.is_zero()) throw Error(ErrorCode::DivisionByZero, "quaternion parameters must be nonzero");
  return Algebra(AlgebraKind::Quaternion, field, a, b);
}

Algebra Algebra::tower() {
  const auto f = FieldSpec::f2st();
  return Algebra(AlgebraKind::Tower, f, f.s(), f.t());
}

std::string Algebra::describe() const {
  if (kind_ == AlgebraKind::Tower) return "F2(s,t)(sqrt s, sqrt t)";
  return "(" + a_.to_string() + ", " + b_.to_string() + ")_" + field_.name();
}

void Algebra::check(const Vec& x) const {
  if (x.size() != 4) throw Error(ErrorCode::DimensionMismatch, "algebra elements have 4 coordinates");
  for (const auto& c : x)
    if (!(c.field() == field_)) throw Error(ErrorCode::FieldMismatch, "element not over " + field_.name());
}

Vec Algebra::scalar(const Scalar& c) const { return c * one(); }

Vec Algebra::mul(const Vec& x, const Vec& y) const {
  check(x);
  check(y);
  Vec out = zero_vec(field_, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < 4; ++j) {
      if (y[j].is_zero()) continue;
      const Entry& e = table_[i][j];
      out[e.index] += e.coeff * x[i] * y[j];
    }
  }
  return out;
}

Vec Algebra::conj(const Vec& x) const {
  check(x);
  if (kind_ == AlgebraKind::Tower) return x;
  return {x[0], -x[1], -x[2], -x[3]};
}

Scalar Algebra::norm(const Vec& x) const {
  check(x);
  if (kind_ == AlgebraKind::Tower) return x[0] * x[0] + a_ * x[1] * x[1] + b_ * x[2] * x[2] + a_ * b_ * x[3] * x[3];
  return x[0] * x[0] - a_ * x[1] * x[1] - b_ * x[2] * x[2] + a_ * b_ * x[3] * x[3];
}

Vec Algebra::inverse(const Vec& x) const {
  const Scalar n = norm(x);
  if (n.is_zero()) throw Error(ErrorCode::DivisionByZero, "element of norm zero has no inverse");
  return n.inv() * conj(x);
}

bool Algebra::is_central(const Vec& x) const {
  for (std::size_t i = 1; i < 4; ++i)
    if (!(mul(x, basis(i)) == mul(basis(i), x))) return false;
  return true;
}

bool is_division(const Algebra& h) {
  if (h.kind() == AlgebraKind::Tower) {
    // H is a field of degree 4 iff the norm form <1, s, t, st> is anisotropic.
    const auto& f = h.field();
    const auto v = additive_isotropic(QuadraticForm::diagonal(f, {f.one(), h.a(), h.b(), h.a() * h.b()}));
    return v.is_anisotropic();
  }
  if (h.field().kind != FieldKind::Rationals)
    throw Error(ErrorCode::UnsupportedBaseField, "division test for quaternions needs base field Q");
  const mpq_class& a = h.a().rational();
  const mpq_class& b = h.b().rational();
  for (const auto& v : relevant_places(a, b))
    if (hilbert_symbol(a, b, v) == -1) return true;
  return false;
}

Subfield intermediate_field(const Algebra& h, const Vec& x) {
  h.norm(x);  // validates x
  if (x[1].is_zero() && x[2].is_zero() && x[3].is_zero())
    throw Error(ErrorCode::CentralElement, "generator lies in K 1");
  // x^2 = beta x + alpha with alpha in K; read beta off a non-scalar coordinate.
  const Vec x2 = h.mul(x, x);
  std::size_t i = 1;
  while (x[i].is_zero()) ++i;
  const Scalar beta = x2[i] / x[i];
  Vec rest = x2;
  axpy(rest, -beta, x);
  for (std::size_t k = 1; k < 4; ++k)
    if (!rest[k].is_zero()) throw Error(ErrorCode::Internal, "element is not quadratic over K");
  return Subfield{x, beta, -rest[0]};
}

bool is_separable_quadratic(const Subfield& l) {
  if (l.generator.empty()) throw Error(ErrorCode::DimensionMismatch, "empty generator");
  if (l.generator[0].field().characteristic() != 2) return true;
  return !l.trace.is_zero();
}

bool in_subfield(const Subfield& l, const Vec& y) {
  const FieldSpec f = l.generator[0].field();
  Mat m{unit_vec(f, 4, 0), l.generator, y};
  return rank(std::move(m)) <= 2;
}

}  // namespace kp
