#include "kp/field.hpp"

#include <cctype>

#include "kp/error.hpp"

namespace kp {

namespace {

bool is_small_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint32_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Lowest terms. The common monomial factor is stripped first since it is the
// most frequent and by far the cheapest case.
F2Frac normalize(F2Frac f) {
  if (f.den.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator in F2(s,t)");
  if (f.num.is_zero()) return {Gf2Poly{}, Gf2Poly::one()};
  const auto cn = f.num.monomial_content(), cd = f.den.monomial_content();
  const auto cs = std::min(Gf2Poly::s_exp(cn), Gf2Poly::s_exp(cd));
  const auto ct = std::min(Gf2Poly::t_exp(cn), Gf2Poly::t_exp(cd));
  if (cs || ct) {
    const auto common = Gf2Poly::pack(cs, ct);
    f.num = f.num.unshifted(common);
    f.den = f.den.unshifted(common);
  }
  if (f.den.is_one()) return f;
  if (f.num == f.den) return {Gf2Poly::one(), Gf2Poly::one()};
  const Gf2Poly g = gcd(f.num, f.den);
  if (g.is_one()) return f;
  return {*f.num.exact_divide(g), *f.den.exact_divide(g)};
}

[[noreturn]] void mismatch(const Scalar& a, const Scalar& b) {
  throw Error(ErrorCode::FieldMismatch, a.field().name() + " vs " + b.field().name());
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!is_small_prime(p) || p > kMaxPrime)
    throw Error(ErrorCode::UnsupportedField, "prime field requires a prime p <= " + std::to_string(kMaxPrime) +
                                                 ", got " + std::to_string(p));
  return {FieldKind::PrimeField, p};
}

std::uint32_t FieldSpec::characteristic() const {
  switch (kind) {
    case FieldKind::Rationals: return 0;
    case FieldKind::PrimeField: return p;
    case FieldKind::F2RationalFunctions: return 2;
  }
  return 0;
}

std::string FieldSpec::name() const {
  switch (kind) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::PrimeField: return "GF(" + std::to_string(p) + ")";
    case FieldKind::F2RationalFunctions: return "F2(s,t)";
  }
  return "?";
}

Scalar FieldSpec::zero() const { return from_int(0); }
Scalar FieldSpec::one() const { return from_int(1); }

Scalar FieldSpec::from_int(long n) const {
  switch (kind) {
    case FieldKind::Rationals: return Scalar(mpq_class(n));
    case FieldKind::PrimeField: {
      long r = n % static_cast<long>(p);
      if (r < 0) r += p;
      return Scalar(Residue{static_cast<std::uint32_t>(r), p});
    }
    case FieldKind::F2RationalFunctions:
      return Scalar(F2Frac{(n % 2) ? Gf2Poly::one() : Gf2Poly{}, Gf2Poly::one()});
  }
  throw Error(ErrorCode::Internal, "bad field kind");
}

Scalar FieldSpec::s() const {
  if (kind != FieldKind::F2RationalFunctions) throw Error(ErrorCode::UnsupportedField, "s exists only in F2(s,t)");
  return Scalar(F2Frac{Gf2Poly::s(), Gf2Poly::one()});
}

Scalar FieldSpec::t() const {
  if (kind != FieldKind::F2RationalFunctions) throw Error(ErrorCode::UnsupportedField, "t exists only in F2(s,t)");
  return Scalar(F2Frac{Gf2Poly::t(), Gf2Poly::one()});
}

Scalar FieldSpec::parse(std::string_view literal) const {
  const std::string text = trim(literal);
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty scalar literal");
  switch (kind) {
    case FieldKind::Rationals: {
      const std::string body = text[0] == '+' ? text.substr(1) : text;
      for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-' && c != '/')
          throw Error(ErrorCode::ParseError, "bad rational literal '" + text + "'");
      }
      mpq_class q;
      if (q.set_str(body, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational literal '" + text + "'");
      if (q.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "rational literal '" + text + "'");
      return Scalar(q);
    }
    case FieldKind::PrimeField: {
      long n = 0;
      std::size_t used = 0;
      try {
        n = std::stol(text, &used);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad residue literal '" + text + "'");
      }
      if (used != text.size()) throw Error(ErrorCode::ParseError, "bad residue literal '" + text + "'");
      return from_int(n);
    }
    case FieldKind::F2RationalFunctions: {
      // "(num)/(den)", "(num)" or a bare polynomial.
      auto strip_parens = [&](std::string_view part) -> std::string {
        std::string p = trim(part);
        if (p.size() >= 2 && p.front() == '(' && p.back() == ')') return p.substr(1, p.size() - 2);
        if (p.find_first_of("()") != std::string::npos)
          throw Error(ErrorCode::ParseError, "bad F2(s,t) literal '" + text + "'");
        return p;
      };
      std::size_t depth = 0, slash = std::string::npos;
      for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        else if (text[i] == ')') {
          if (depth == 0) throw Error(ErrorCode::ParseError, "unbalanced parentheses in '" + text + "'");
          --depth;
        } else if (text[i] == '/' && depth == 0) {
          if (slash != std::string::npos) throw Error(ErrorCode::ParseError, "two '/' in '" + text + "'");
          slash = i;
        }
      }
      if (depth != 0) throw Error(ErrorCode::ParseError, "unbalanced parentheses in '" + text + "'");
      F2Frac f;
      if (slash == std::string::npos) {
        f.num = Gf2Poly::parse(strip_parens(text));
      } else {
        f.num = Gf2Poly::parse(strip_parens(std::string_view(text).substr(0, slash)));
        f.den = Gf2Poly::parse(strip_parens(std::string_view(text).substr(slash + 1)));
      }
      return Scalar(std::move(f));
    }
  }
  throw Error(ErrorCode::Internal, "bad field kind");
}

Scalar::Scalar(F2Frac f) : v_(normalize(std::move(f))) {}

FieldKind Scalar::kind() const {
  switch (v_.index()) {
    case 0: return FieldKind::Rationals;
    case 1: return FieldKind::PrimeField;
    default: return FieldKind::F2RationalFunctions;
  }
}

FieldSpec Scalar::field() const {
  if (v_.index() == 1) return {FieldKind::PrimeField, std::get<Residue>(v_).p};
  return {kind(), 0};
}

bool Scalar::is_zero() const {
  switch (v_.index()) {
    case 0: return sgn(std::get<mpq_class>(v_)) == 0;
    case 1: return std::get<Residue>(v_).value == 0;
    default: return std::get<F2Frac>(v_).num.is_zero();
  }
}

bool Scalar::is_one() const {
  switch (v_.index()) {
    case 0: return std::get<mpq_class>(v_) == 1;
    case 1: return std::get<Residue>(v_).value == 1;
    default: {
      const auto& f = std::get<F2Frac>(v_);
      return f.num == f.den;
    }
  }
}

const mpq_class& Scalar::rational() const {
  if (v_.index() != 0) throw Error(ErrorCode::FieldMismatch, "expected a rational, got " + field().name());
  return std::get<mpq_class>(v_);
}

const Residue& Scalar::residue() const {
  if (v_.index() != 1) throw Error(ErrorCode::FieldMismatch, "expected a residue, got " + field().name());
  return std::get<Residue>(v_);
}

const F2Frac& Scalar::f2() const {
  if (v_.index() != 2) throw Error(ErrorCode::FieldMismatch, "expected an F2(s,t) element, got " + field().name());
  return std::get<F2Frac>(v_);
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  switch (v_.index()) {
    case 0: return Scalar(mpq_class(1) / std::get<mpq_class>(v_));
    case 1: {
      const auto& r = std::get<Residue>(v_);
      return Scalar(Residue{mod_pow(r.value, r.p - 2, r.p), r.p});
    }
    default: {
      const auto& f = std::get<F2Frac>(v_);
      return Scalar(F2Frac{f.den, f.num});
    }
  }
}

Scalar Scalar::operator-() const {
  switch (v_.index()) {
    case 0: return Scalar(mpq_class(-std::get<mpq_class>(v_)));
    case 1: {
      const auto& r = std::get<Residue>(v_);
      return Scalar(Residue{(r.p - r.value) % r.p, r.p});
    }
    default: return *this;
  }
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (v_.index() != rhs.v_.index()) mismatch(*this, rhs);
  switch (v_.index()) {
    case 0: std::get<mpq_class>(v_) += std::get<mpq_class>(rhs.v_); break;
    case 1: {
      auto& a = std::get<Residue>(v_);
      const auto& b = std::get<Residue>(rhs.v_);
      if (a.p != b.p) mismatch(*this, rhs);
      a.value = (a.value + b.value) % a.p;
      break;
    }
    default: {
      const auto& a = std::get<F2Frac>(v_);
      const auto& b = std::get<F2Frac>(rhs.v_);
      if (b.num.is_zero()) break;
      if (a.num.is_zero()) {
        v_ = b;
        break;
      }
      // Both operands are in lowest terms; only the common part g of the
      // denominators can cancel.
      const Gf2Poly g = gcd(a.den, b.den);
      if (g.is_one()) {
        v_ = F2Frac{a.num * b.den + b.num * a.den, a.den * b.den};
        break;
      }
      const Gf2Poly ad = *a.den.exact_divide(g), bd = *b.den.exact_divide(g);
      const Gf2Poly num = a.num * bd + b.num * ad;
      if (num.is_zero()) {
        v_ = F2Frac{};
        break;
      }
      const Gf2Poly h = gcd(num, g);
      v_ = F2Frac{*num.exact_divide(h), ad * *b.den.exact_divide(h)};
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (v_.index() != rhs.v_.index()) mismatch(*this, rhs);
  switch (v_.index()) {
    case 0: std::get<mpq_class>(v_) *= std::get<mpq_class>(rhs.v_); break;
    case 1: {
      auto& a = std::get<Residue>(v_);
      const auto& b = std::get<Residue>(rhs.v_);
      if (a.p != b.p) mismatch(*this, rhs);
      a.value = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.value) * b.value % a.p);
      break;
    }
    default: {
      const auto& a = std::get<F2Frac>(v_);
      const auto& b = std::get<F2Frac>(rhs.v_);
      if (a.num.is_zero() || b.num.is_zero()) {
        v_ = F2Frac{};
        break;
      }
      // Cross-cancel; the product of the reduced parts is again in lowest terms.
      const Gf2Poly g1 = gcd(a.num, b.den), g2 = gcd(b.num, a.den);
      v_ = F2Frac{*a.num.exact_divide(g1) * *b.num.exact_divide(g2),
                  *a.den.exact_divide(g2) * *b.den.exact_divide(g1)};
    }
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (v_.index() != rhs.v_.index()) mismatch(*this, rhs);
  if (v_.index() == 1 && std::get<Residue>(v_).p != std::get<Residue>(rhs.v_).p) mismatch(*this, rhs);
  return *this *= rhs.inv();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.v_.index() != b.v_.index()) mismatch(a, b);
  switch (a.v_.index()) {
    case 0: return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
    case 1: {
      const auto& x = std::get<Residue>(a.v_);
      const auto& y = std::get<Residue>(b.v_);
      if (x.p != y.p) mismatch(a, b);
      return x.value == y.value;
    }
    default: {
      const auto& x = std::get<F2Frac>(a.v_);
      const auto& y = std::get<F2Frac>(b.v_);
      if (x.den == y.den) return x.num == y.num;
      return x.num * y.den == y.num * x.den;
    }
  }
}

std::string Scalar::to_string() const {
  switch (v_.index()) {
    case 0: return std::get<mpq_class>(v_).get_str();
    case 1: return std::to_string(std::get<Residue>(v_).value);
    default: {
      const auto& f = std::get<F2Frac>(v_);
      return "(" + f.num.to_string() + ")/(" + f.den.to_string() + ")";
    }
  }
}

std::optional<Scalar> sqrt_if_square(const Scalar& x) {
  switch (x.kind()) {
    case FieldKind::Rationals: {
      const mpq_class& q = x.rational();
      if (sgn(q) < 0) return std::nullopt;
      if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
      mpz_class n, d;
      mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
      mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
      return Scalar(mpq_class(n, d));
    }
    case FieldKind::PrimeField: {
      const auto& r = x.residue();
      for (std::uint32_t y = 0; y < r.p; ++y) {
        if (static_cast<std::uint64_t>(y) * y % r.p == r.value) return Scalar(Residue{y, r.p});
      }
      return std::nullopt;
    }
    case FieldKind::F2RationalFunctions: {
      // a/b = (a*b)/b^2, and a polynomial over GF(2) is a square iff all exponents are even.
      const auto& f = x.f2();
      Gf2Poly prod = f.num * f.den;
      if (!prod.all_exponents_even()) return std::nullopt;
      return Scalar(F2Frac{prod.frobenius_root(), f.den});
    }
  }
  return std::nullopt;
}

}  // namespace kp
