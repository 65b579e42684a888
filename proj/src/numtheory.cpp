#include "kp/numtheory.hpp"

#include "kp/error.hpp"

namespace kp::nt {

std::vector<std::pair<mpz_class, unsigned>> factor(const mpz_class& n, std::uint64_t bound) {
  if (n == 0) throw Error(ErrorCode::FactorizationFailed, "cannot factor zero");
  mpz_class m = abs(n);
  std::vector<std::pair<mpz_class, unsigned>> out;
  auto strip = [&](unsigned long d) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), d) == 0) return;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), d) != 0) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
      ++e;
    }
    out.emplace_back(mpz_class(d), e);
  };
  strip(2);
  for (unsigned long d = 3; d <= bound; d += 2) {
    if (m == 1) break;
    if (mpz_cmp_ui(m.get_mpz_t(), d * d) < 0) break;
    strip(d);
  }
  if (m > 1) {
    const mpz_class b2 = mpz_class(bound) * bound;
    if (m < b2 || mpz_probab_prime_p(m.get_mpz_t(), 40) > 0) {
      out.emplace_back(m, 1);
    } else {
      throw Error(ErrorCode::FactorizationFailed,
                  "composite cofactor " + m.get_str() + " has no factor below " + std::to_string(bound));
    }
  }
  return out;
}

std::pair<mpz_class, mpz_class> squarefree_decompose(const mpz_class& n, std::uint64_t bound) {
  mpz_class core = 1, root = 1;
  for (const auto& [p, e] : factor(n, bound)) {
    if (e % 2) core *= p;
    for (unsigned i = 0; i < e / 2; ++i) root *= p;
  }
  if (n < 0) core = -core;
  return {core, root};
}

unsigned valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) throw Error(ErrorCode::Internal, "valuation of zero");
  mpz_class m = n;
  unsigned v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()) != 0) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

namespace {

mpz_class strip_prime(const mpz_class& n, const mpz_class& p, unsigned v) {
  mpz_class m = n;
  for (unsigned i = 0; i < v; ++i) mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
  return m;
}

unsigned mod8(const mpz_class& u) { return static_cast<unsigned>(mpz_fdiv_ui(u.get_mpz_t(), 8)); }

}  // namespace

int hilbert_symbol_at_prime(const mpz_class& a, const mpz_class& b, const mpz_class& p) {
  if (a == 0 || b == 0) throw Error(ErrorCode::Internal, "Hilbert symbol of zero");
  const unsigned alpha = valuation(a, p), beta = valuation(b, p);
  const mpz_class u = strip_prime(a, p, alpha), v = strip_prime(b, p, beta);
  if (p == 2) {
    const unsigned eu = (mod8(u) % 4 == 3) ? 1 : 0, ev = (mod8(v) % 4 == 3) ? 1 : 0;
    const unsigned wu = (mod8(u) == 3 || mod8(u) == 5) ? 1 : 0, wv = (mod8(v) == 3 || mod8(v) == 5) ? 1 : 0;
    const unsigned e = eu * ev + alpha * wv + beta * wu;
    return e % 2 ? -1 : 1;
  }
  int sign = 1;
  // (-1)^(alpha beta (p-1)/2)
  if ((alpha * beta) % 2 == 1 && mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) sign = -sign;
  if (beta % 2) sign *= mpz_legendre(u.get_mpz_t(), p.get_mpz_t());
  if (alpha % 2) sign *= mpz_legendre(v.get_mpz_t(), p.get_mpz_t());
  return sign;
}

int hilbert_symbol_at_infinity(const mpz_class& a, const mpz_class& b) {
  if (a == 0 || b == 0) throw Error(ErrorCode::Internal, "Hilbert symbol of zero");
  return (a < 0 && b < 0) ? -1 : 1;
}

bool sqrt_mod_prime(const mpz_class& a_in, const mpz_class& p, mpz_class& root) {
  mpz_class a;
  mpz_mod(a.get_mpz_t(), a_in.get_mpz_t(), p.get_mpz_t());
  if (a == 0 || p == 2) {
    root = a;
    return true;
  }
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return false;
  // Tonelli-Shanks.
  mpz_class q = p - 1;
  unsigned s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  mpz_class c, r, t, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    mpz_class tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    mpz_class b = c;
    for (unsigned k = 0; k + i + 1 < m; ++k) b = b * b % p;
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  root = r;
  return true;
}

namespace {

// r with r^2 = a (mod |b|) and |r| <= |b|/2, b squarefree.
mpz_class sqrt_mod_squarefree(const mpz_class& a, const mpz_class& b, std::uint64_t bound) {
  const mpz_class mod = abs(b);
  mpz_class r = 0, m = 1;
  for (const auto& [q, e] : factor(mod, bound)) {
    (void)e;
    mpz_class rq;
    if (!sqrt_mod_prime(a, q, rq)) throw Error(ErrorCode::Internal, "Legendre equation is not locally soluble");
    // CRT: r' = r + m * ((rq - r) * m^{-1} mod q)
    mpz_class minv, diff;
    mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), q.get_mpz_t());
    diff = (rq - r) * minv;
    mpz_mod(diff.get_mpz_t(), diff.get_mpz_t(), q.get_mpz_t());
    r += m * diff;
    m *= q;
  }
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  if (2 * r > mod) r -= mod;
  return r;
}

LegendreSolution descend(const mpz_class& a, const mpz_class& b, std::uint64_t bound, int depth) {
  if (depth > 4096) throw Error(ErrorCode::Internal, "Legendre descent did not terminate");
  if (a == 1) return {1, 0, 1};
  if (b == 1) return {0, 1, 1};
  if (abs(a) > abs(b)) {
    auto s = descend(b, a, bound, depth + 1);
    return {s.y, s.x, s.z};
  }
  if (abs(b) == 1) throw Error(ErrorCode::Internal, "z^2 = -x^2 - y^2 has no rational solution");
  const mpz_class r = sqrt_mod_squarefree(a, b, bound);
  mpz_class t = (r * r - a);
  if (!mpz_divisible_p(t.get_mpz_t(), b.get_mpz_t())) throw Error(ErrorCode::Internal, "bad square root mod b");
  mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), b.get_mpz_t());
  if (t == 0) throw Error(ErrorCode::Internal, "a is a square but not 1");
  const auto [core, m] = squarefree_decompose(t, bound);
  // Norms from Q(sqrt a): (z1 + x1 sqrt a)(r + sqrt a) has norm b (core m y1)^2.
  const auto s = descend(a, core, bound, depth + 1);
  return {s.z + r * s.x, core * m * s.y, s.z * r + a * s.x};
}

}  // namespace

LegendreSolution solve_legendre(const mpz_class& a, const mpz_class& b, std::uint64_t bound) {
  if (a == 0 || b == 0) throw Error(ErrorCode::Internal, "Legendre equation with zero coefficient");
  auto s = descend(a, b, bound, 0);
  if (s.z * s.z != a * s.x * s.x + b * s.y * s.y || (s.x == 0 && s.y == 0 && s.z == 0))
    throw Error(ErrorCode::Internal, "Legendre descent produced an invalid solution");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), s.x.get_mpz_t(), s.y.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.z.get_mpz_t());
  if (g > 1) {
    s.x /= g;
    s.y /= g;
    s.z /= g;
  }
  return s;
}

}  // namespace kp::nt
