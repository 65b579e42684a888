#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "kp/gf2poly.hpp"

namespace kp {

enum class FieldKind { Rationals, PrimeField, F2RationalFunctions };

/// Residue modulo a small prime; the modulus travels with the value so that
/// mixing two prime fields is detectable.
struct Residue {
  std::uint32_t value = 0;
  std::uint32_t p = 2;
  friend bool operator==(const Residue&, const Residue&) = default;
};

/// Element of F2(s,t) as an unreduced fraction num/den, den != 0.
struct F2Frac {
  Gf2Poly num;
  Gf2Poly den = Gf2Poly::one();
};

class Scalar;

/// The active exact field: Q, GF(p) for a small prime p, or F2(s,t).
struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint32_t p = 0;

  static constexpr std::uint32_t kMaxPrime = 13;

  static FieldSpec rationals() { return {FieldKind::Rationals, 0}; }
  static FieldSpec prime(std::uint32_t p);
  static FieldSpec f2st() { return {FieldKind::F2RationalFunctions, 0}; }

  std::uint32_t characteristic() const;
  bool is_finite() const { return kind == FieldKind::PrimeField; }
  std::string name() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long n) const;
  /// Literal grammar: "a/b" or "a" over Q, a decimal residue over GF(p),
  /// "(poly)/(poly)" or "poly" over F2(s,t).
  Scalar parse(std::string_view literal) const;
  /// Generators s and t of F2(s,t).
  Scalar s() const;
  Scalar t() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class Scalar {
 public:
  using Storage = std::variant<mpq_class, Residue, F2Frac>;

  Scalar() : v_(mpq_class(0)) {}
  explicit Scalar(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }
  explicit Scalar(Residue r) : v_(r) {}
  explicit Scalar(F2Frac f);

  FieldKind kind() const;
  FieldSpec field() const;

  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational() const;
  const Residue& residue() const;
  const F2Frac& f2() const;

  Scalar inv() const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Equality by cross-multiplication for F2(s,t); FieldMismatch when the
  /// operands come from different fields.
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  Storage v_;
};

/// Square root when x is a square in its field.
std::optional<Scalar> sqrt_if_square(const Scalar& x);
inline bool is_square(const Scalar& x) { return sqrt_if_square(x).has_value(); }

}  // namespace kp
