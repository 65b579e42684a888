#pragma once

#include <array>
#include <string>

#include "kp/field.hpp"
#include "kp/linalg.hpp"

namespace kp {

enum class AlgebraKind { Quaternion, Tower };

/// Four-dimensional algebra H over K with coordinates on a fixed basis.
///
/// Quaternion (a, b)_K, char K != 2: basis (1, i, j, k), i^2 = a, j^2 = b,
/// k = ij = -ji. Tower K(sqrt s, sqrt t) over K = F2(s,t): basis
/// (1, u, w, uw), u^2 = s, w^2 = t, commutative.
class Algebra {
 public:
  /// UnsupportedBaseField for char 2; DivisionByZero if a or b is zero.
  static Algebra quaternion(const FieldSpec& field, const Scalar& a, const Scalar& b);
  static Algebra tower();

  AlgebraKind kind() const { return kind_; }
  const FieldSpec& field() const { return field_; }
  const Scalar& a() const { return a_; }
  const Scalar& b() const { return b_; }
  std::string describe() const;

  Vec one() const { return unit_vec(field_, 4, 0); }
  Vec basis(std::size_t i) const { return unit_vec(field_, 4, i); }
  Vec scalar(const Scalar& c) const;

  Vec mul(const Vec& x, const Vec& y) const;
  /// Quaternion conjugate; the identity on the tower, where x^2 is already central.
  Vec conj(const Vec& x) const;
  /// x conj(x) for quaternions, x^2 for the tower; a scalar either way.
  Scalar norm(const Vec& x) const;
  /// DivisionByZero when N(x) = 0.
  Vec inverse(const Vec& x) const;
  bool is_central(const Vec& x) const;

 private:
  struct Entry {
    Scalar coeff;
    std::size_t index;
  };

  Algebra(AlgebraKind kind, FieldSpec field, Scalar a, Scalar b);
  void check(const Vec& x) const;

  AlgebraKind kind_;
  FieldSpec field_;
  Scalar a_, b_;
  std::array<std::array<Entry, 4>, 4> table_;
};

/// Division algebra test: Hilbert symbols for (a, b)_Q, the parity certificate
/// for the tower. UnsupportedBaseField for quaternions over GF(p).
bool is_division(const Algebra& h);

/// K(x) = span(1, x) with x^2 = trace * x - norm.
struct Subfield {
  Vec generator;
  Scalar trace;
  Scalar norm;
};

/// CentralElement if x lies in K 1.
Subfield intermediate_field(const Algebra& h, const Vec& x);
/// True in char != 2; in char 2 iff the linear coefficient of the minimal
/// polynomial is nonzero.
bool is_separable_quadratic(const Subfield& l);
bool in_subfield(const Subfield& l, const Vec& y);

}  // namespace kp
