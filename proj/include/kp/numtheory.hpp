#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace kp::nt {

/// Trial-division bound used for factoring form coefficients.
inline constexpr std::uint64_t kDefaultTrialBound = 1'000'000;

/// Prime factorization of |n| (n != 0) by trial division up to `bound`. A
/// leftover cofactor is accepted when it is below bound^2 or passes a strong
/// probable-prime test; otherwise FactorizationFailed is raised.
std::vector<std::pair<mpz_class, unsigned>> factor(const mpz_class& n, std::uint64_t bound = kDefaultTrialBound);

/// Writes n = sign * core * root^2 with core squarefree and positive root;
/// returns {sign * core, root}.
std::pair<mpz_class, mpz_class> squarefree_decompose(const mpz_class& n, std::uint64_t bound = kDefaultTrialBound);

/// 2-adic or p-adic valuation of a nonzero integer.
unsigned valuation(const mpz_class& n, const mpz_class& p);

/// Hilbert symbol (a, b)_p of nonzero integers at a prime p.
int hilbert_symbol_at_prime(const mpz_class& a, const mpz_class& b, const mpz_class& p);
/// Hilbert symbol at the real place.
int hilbert_symbol_at_infinity(const mpz_class& a, const mpz_class& b);

/// Square root of a modulo an odd prime or 2, when it exists.
bool sqrt_mod_prime(const mpz_class& a, const mpz_class& p, mpz_class& root);

struct LegendreSolution {
  mpz_class x, y, z;
};

/// Nontrivial integer solution of z^2 = a x^2 + b y^2 for squarefree nonzero
/// a, b, assuming all local Hilbert symbols are +1 (raises Internal otherwise).
LegendreSolution solve_legendre(const mpz_class& a, const mpz_class& b, std::uint64_t bound = kDefaultTrialBound);

}  // namespace kp::nt
