#include "kp/gf2poly.hpp"

#include <algorithm>
#include <cctype>

#include "kp/error.hpp"

namespace kp {

Gf2Poly Gf2Poly::monomial(std::uint32_t s_exp, std::uint32_t t_exp) {
  return Gf2Poly(std::vector<Monomial>{pack(s_exp, t_exp)});
}

int Gf2Poly::degree() const {
  int best = -1;
  for (Monomial m : terms_) best = std::max(best, static_cast<int>(s_exp(m) + t_exp(m)));
  return best;
}

Gf2Poly Gf2Poly::from_unsorted(std::vector<Monomial> terms) {
  std::sort(terms.begin(), terms.end());
  // Coefficients live in GF(2): equal monomials cancel in pairs.
  std::vector<Monomial> out;
  out.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(terms[i]);
    i = j;
  }
  return Gf2Poly(std::move(out));
}

Gf2Poly& Gf2Poly::operator+=(const Gf2Poly& rhs) {
  std::vector<Monomial> out;
  out.reserve(terms_.size() + rhs.terms_.size());
  std::set_symmetric_difference(terms_.begin(), terms_.end(), rhs.terms_.begin(), rhs.terms_.end(),
                                std::back_inserter(out));
  terms_ = std::move(out);
  return *this;
}

Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  std::vector<Gf2Poly::Monomial> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  // Packed exponents add component-wise as long as t-degrees stay below 2^32.
  for (auto x : a.terms_)
    for (auto y : b.terms_) prod.push_back(x + y);
  return Gf2Poly::from_unsorted(std::move(prod));
}

Gf2Poly Gf2Poly::shifted(std::uint32_t s, std::uint32_t t) const {
  std::vector<Monomial> out(terms_);
  const Monomial delta = pack(s, t);
  for (auto& m : out) m += delta;
  return Gf2Poly(std::move(out));
}

Gf2Poly::Monomial Gf2Poly::monomial_content() const {
  if (terms_.empty()) return 0;
  std::uint32_t ms = s_exp(terms_[0]), mt = t_exp(terms_[0]);
  for (Monomial m : terms_) {
    ms = std::min(ms, s_exp(m));
    mt = std::min(mt, t_exp(m));
  }
  return pack(ms, mt);
}

Gf2Poly Gf2Poly::unshifted(Monomial content) const {
  std::vector<Monomial> out(terms_);
  for (auto& m : out) m -= content;
  return Gf2Poly(std::move(out));
}

std::optional<Gf2Poly> Gf2Poly::exact_divide(const Gf2Poly& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (is_zero()) return Gf2Poly{};
  if (divisor.is_one()) return *this;
  const Monomial lead = divisor.leading();
  const std::uint32_t ls = s_exp(lead), lt = t_exp(lead);
  Gf2Poly rem = *this;
  std::vector<Monomial> quotient;
  // An exact quotient q satisfies LM(rem) = LM(q) * LM(divisor) at every step.
  while (!rem.is_zero()) {
    const Monomial r = rem.leading();
    if (s_exp(r) < ls || t_exp(r) < lt) return std::nullopt;
    const std::uint32_t qs = s_exp(r) - ls, qt = t_exp(r) - lt;
    quotient.push_back(pack(qs, qt));
    rem += divisor.shifted(qs, qt);
  }
  return from_unsorted(std::move(quotient));
}

bool Gf2Poly::all_exponents_even() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](Monomial m) { return s_exp(m) % 2 == 0 && t_exp(m) % 2 == 0; });
}

Gf2Poly Gf2Poly::frobenius_root() const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (Monomial m : terms_) {
    if (s_exp(m) % 2 || t_exp(m) % 2)
      throw Error(ErrorCode::Internal, "frobenius_root of a polynomial with odd exponents");
    out.push_back(pack(s_exp(m) / 2, t_exp(m) / 2));
  }
  return Gf2Poly(std::move(out));
}

Gf2Poly Gf2Poly::parity_component(unsigned e, unsigned f) const {
  std::vector<Monomial> out;
  for (Monomial m : terms_) {
    if (s_exp(m) % 2 == e && t_exp(m) % 2 == f) out.push_back(pack((s_exp(m) - e) / 2, (t_exp(m) - f) / 2));
  }
  return Gf2Poly(std::move(out));
}

std::string Gf2Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!out.empty()) out += '+';
    const auto a = s_exp(*it), b = t_exp(*it);
    std::string mono;
    if (a > 0) mono += a == 1 ? "s" : "s^" + std::to_string(a);
    if (b > 0) {
      if (!mono.empty()) mono += '*';
      mono += b == 1 ? "t" : "t^" + std::to_string(b);
    }
    out += mono.empty() ? "1" : mono;
  }
  return out;
}

namespace {

struct PolyParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError, "polynomial '" + std::string(text) + "': " + why);
  }
  std::uint64_t number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected a number at offset " + std::to_string(start));
    if (pos - start > 9) fail("number too large");
    return std::stoull(std::string(text.substr(start, pos - start)));
  }
  // factor := ('s' | 't') ['^' number] | number
  void factor(std::uint32_t& s, std::uint32_t& t, unsigned& coeff) {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end");
    char c = text[pos];
    if (c == 's' || c == 't') {
      ++pos;
      std::uint64_t e = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        e = number();
      }
      (c == 's' ? s : t) += static_cast<std::uint32_t>(e);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      coeff = (coeff * static_cast<unsigned>(number() % 2)) % 2;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  Gf2Poly parse() {
    std::vector<Gf2Poly::Monomial> terms;
    skip_ws();
    if (pos >= text.size()) fail("empty polynomial");
    while (true) {
      std::uint32_t s = 0, t = 0;
      unsigned coeff = 1;
      factor(s, t, coeff);
      skip_ws();
      while (pos < text.size() && text[pos] == '*') {
        ++pos;
        factor(s, t, coeff);
        skip_ws();
      }
      if (coeff) terms.push_back(Gf2Poly::pack(s, t));
      if (pos >= text.size()) break;
      if (text[pos] != '+' && text[pos] != '-') fail("expected '+' at offset " + std::to_string(pos));
      ++pos;
    }
    Gf2Poly out;
    for (auto m : terms) out += Gf2Poly::monomial(Gf2Poly::s_exp(m), Gf2Poly::t_exp(m));
    return out;
  }
};

}  // namespace

Gf2Poly Gf2Poly::parse(std::string_view text) { return PolyParser{text}.parse(); }

}  // namespace kp

namespace kp {

namespace {

// Polynomial in t over GF(2), one bit per coefficient.
struct TPoly {
  std::vector<std::uint64_t> bits;

  void trim() {
    while (!bits.empty() && bits.back() == 0) bits.pop_back();
  }
  bool is_zero() const { return bits.empty(); }
  int degree() const {
    if (bits.empty()) return -1;
    return static_cast<int>(bits.size() - 1) * 64 + 63 - __builtin_clzll(bits.back());
  }
  bool bit(int i) const {
    const auto w = static_cast<std::size_t>(i / 64);
    return w < bits.size() && (bits[w] >> (i % 64) & 1);
  }
  void flip(int i) {
    const auto w = static_cast<std::size_t>(i / 64);
    if (w >= bits.size()) bits.resize(w + 1, 0);
    bits[w] ^= std::uint64_t{1} << (i % 64);
  }
  bool is_one() const { return bits.size() == 1 && bits[0] == 1; }
  friend bool operator==(const TPoly&, const TPoly&) = default;
};

// a += b * t^k.
void t_add_shifted(TPoly& a, const TPoly& b, int k) {
  if (b.is_zero()) return;
  const std::size_t w = static_cast<std::size_t>(k / 64);
  const unsigned r = static_cast<unsigned>(k % 64);
  const std::size_t need = b.bits.size() + w + 1;
  if (a.bits.size() < need) a.bits.resize(need, 0);
  for (std::size_t i = 0; i < b.bits.size(); ++i) {
    a.bits[i + w] ^= b.bits[i] << r;
    if (r) a.bits[i + w + 1] ^= b.bits[i] >> (64 - r);
  }
  a.trim();
}

TPoly t_add(TPoly a, const TPoly& b) {
  t_add_shifted(a, b, 0);
  return a;
}

TPoly t_mul(const TPoly& a, const TPoly& b) {
  TPoly out;
  if (a.is_zero() || b.is_zero()) return out;
  out.bits.assign(a.bits.size() + b.bits.size() + 1, 0);
  for (int i = 0; i <= a.degree(); ++i) {
    if (!a.bit(i)) continue;
    const std::size_t w = static_cast<std::size_t>(i / 64);
    const unsigned r = static_cast<unsigned>(i % 64);
    for (std::size_t j = 0; j < b.bits.size(); ++j) {
      out.bits[j + w] ^= b.bits[j] << r;
      if (r) out.bits[j + w + 1] ^= b.bits[j] >> (64 - r);
    }
  }
  out.trim();
  return out;
}

// a = q b + r; returns {q, r}.
std::pair<TPoly, TPoly> t_divmod(TPoly a, const TPoly& b) {
  TPoly q;
  const int db = b.degree();
  for (int da = a.degree(); da >= db; da = a.degree()) {
    q.flip(da - db);
    t_add_shifted(a, b, da - db);
  }
  return {q, a};
}

TPoly t_gcd(TPoly a, TPoly b) {
  while (!b.is_zero()) {
    auto r = t_divmod(std::move(a), b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Polynomial in s with coefficients in GF(2)[t]; index = s-degree.
using SPoly = std::vector<TPoly>;

void s_trim(SPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

SPoly to_spoly(const Gf2Poly& p) {
  SPoly out;
  for (auto m : p.terms()) {
    const auto e = Gf2Poly::s_exp(m);
    if (out.size() <= e) out.resize(e + 1);
    out[e].flip(static_cast<int>(Gf2Poly::t_exp(m)));
  }
  return out;
}

Gf2Poly from_spoly(const SPoly& a) {
  Gf2Poly out;
  for (std::size_t e = 0; e < a.size(); ++e)
    for (int i = 0; i <= a[e].degree(); ++i)
      if (a[e].bit(i)) out += Gf2Poly::monomial(static_cast<std::uint32_t>(e), static_cast<std::uint32_t>(i));
  return out;
}

TPoly content(const SPoly& a) {
  TPoly g;
  for (const auto& c : a) {
    g = t_gcd(std::move(g), c);
    if (g.is_one()) break;
  }
  return g;
}

SPoly primitive_part(SPoly a) {
  const TPoly c = content(a);
  if (c.is_one() || c.is_zero()) return a;
  for (auto& x : a) x = t_divmod(x, c).first;
  return a;
}

// lc(b)^k a mod b in s, without the power bookkeeping: the result is only used
// up to GF(2)[t] factors, which primitive_part removes.
SPoly pseudo_remainder(SPoly a, const SPoly& b) {
  const std::size_t db = b.size() - 1;
  const TPoly& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    const TPoly la = a.back();
    const std::size_t k = a.size() - 1 - db;
    for (auto& x : a) x = t_mul(x, lb);
    for (std::size_t i = 0; i <= db; ++i) a[i + k] = t_add(std::move(a[i + k]), t_mul(la, b[i]));
    s_trim(a);
  }
  return a;
}

}  // namespace

Gf2Poly gcd(const Gf2Poly& a, const Gf2Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_one() || b.is_one()) return Gf2Poly::one();
  if (a.is_monomial() || b.is_monomial()) {
    const auto ca = a.monomial_content(), cb = b.monomial_content();
    return Gf2Poly::monomial(std::min(Gf2Poly::s_exp(ca), Gf2Poly::s_exp(cb)),
                             std::min(Gf2Poly::t_exp(ca), Gf2Poly::t_exp(cb)));
  }
  SPoly x = to_spoly(a), y = to_spoly(b);
  const TPoly c = t_gcd(content(x), content(y));
  x = primitive_part(std::move(x));
  y = primitive_part(std::move(y));
  if (x.size() < y.size()) std::swap(x, y);
  SPoly g;
  while (true) {
    if (y.size() == 1) {
      g = SPoly{TPoly{{1}}};
      break;
    }
    SPoly r = pseudo_remainder(x, y);
    if (r.empty()) {
      g = std::move(y);
      break;
    }
    x = std::move(y);
    y = primitive_part(std::move(r));
  }
  for (auto& coeff : g) coeff = t_mul(coeff, c);
  return from_spoly(g);
}

}  // namespace kp
