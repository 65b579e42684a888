#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kp {

/// Polynomial in two commuting indeterminates s, t over GF(2).
///
/// Stored as a strictly increasing list of packed monomials
/// (s-exponent in the high 32 bits, t-exponent in the low 32 bits), so the
/// numeric order of the packed keys is the lexicographic order with s > t.
class Gf2Poly {
 public:
  using Monomial = std::uint64_t;

  Gf2Poly() = default;

  static Gf2Poly zero() { return {}; }
  static Gf2Poly one() { return monomial(0, 0); }
  static Gf2Poly monomial(std::uint32_t s_exp, std::uint32_t t_exp);
  static Gf2Poly s() { return monomial(1, 0); }
  static Gf2Poly t() { return monomial(0, 1); }

  static Monomial pack(std::uint32_t s_exp, std::uint32_t t_exp) {
    return (static_cast<Monomial>(s_exp) << 32) | t_exp;
  }
  static std::uint32_t s_exp(Monomial m) { return static_cast<std::uint32_t>(m >> 32); }
  static std::uint32_t t_exp(Monomial m) { return static_cast<std::uint32_t>(m & 0xffffffffu); }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0] == 0; }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Monomial>& terms() const { return terms_; }
  Monomial leading() const { return terms_.back(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const;

  friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;
  friend auto operator<=>(const Gf2Poly& a, const Gf2Poly& b) { return a.terms_ <=> b.terms_; }

  Gf2Poly& operator+=(const Gf2Poly& rhs);
  friend Gf2Poly operator+(Gf2Poly a, const Gf2Poly& b) { return a += b; }
  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b);
  Gf2Poly& operator*=(const Gf2Poly& rhs) { return *this = *this * rhs; }

  /// Multiply by s^a t^b.
  Gf2Poly shifted(std::uint32_t s_exp, std::uint32_t t_exp) const;

  /// Largest monomial s^a t^b dividing every term (zero polynomial: 1).
  Monomial monomial_content() const;
  /// Divide every term by the monomial s^a t^b (must divide).
  Gf2Poly unshifted(Monomial m) const;

  /// Quotient when `divisor` divides `*this` exactly, nullopt otherwise.
  std::optional<Gf2Poly> exact_divide(const Gf2Poly& divisor) const;

  /// True iff every exponent is even; then the polynomial is a square.
  bool all_exponents_even() const;
  /// Square root of a polynomial with only even exponents (Frobenius inverse).
  Gf2Poly frobenius_root() const;
  /// Terms whose exponents have parity (e, f), divided by s^e t^f, then
  /// square-rooted. P = sum over (e,f) of s^e t^f R_ef^2.
  Gf2Poly parity_component(unsigned e, unsigned f) const;

  std::string to_string() const;
  static Gf2Poly parse(std::string_view text);

 private:
  explicit Gf2Poly(std::vector<Monomial> terms) : terms_(std::move(terms)) {}
  static Gf2Poly from_unsorted(std::vector<Monomial> terms);

  std::vector<Monomial> terms_;
};

/// Greatest common divisor; the only unit of GF(2)[s,t] is 1, so the result
/// is unique. gcd(0, 0) = 0.
Gf2Poly gcd(const Gf2Poly& a, const Gf2Poly& b);

}  // namespace kp
