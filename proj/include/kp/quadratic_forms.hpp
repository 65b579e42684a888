#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "kp/field.hpp"
#include "kp/linalg.hpp"
#include "kp/numtheory.hpp"
#include "kp/proj_space.hpp"

namespace kp {

/// Q(x) = sum_{i <= j} c_ij x_i x_j on K^n, n <= 6, together with its polar
/// form B(x, y) = Q(x + y) - Q(x) - Q(y). Both are kept so that char 2 code
/// can read B without re-deriving it.
class QuadraticForm {
 public:
  /// `upper` is n x n; entries below the diagonal are ignored.
  static QuadraticForm from_upper(const FieldSpec& field, Mat upper);
  /// Diagonal form sum d_i x_i^2.
  static QuadraticForm diagonal(const FieldSpec& field, const Vec& d);

  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return upper_.size(); }
  const Mat& upper() const { return upper_; }
  const Mat& polar_matrix() const { return polar_; }
  const Scalar& coeff(std::size_t i, std::size_t j) const { return upper_[i][j]; }

  Scalar value(const Vec& x) const;
  Scalar polar(const Vec& x, const Vec& y) const;
  bool is_zero() const;
  /// B vanishes identically (in char 2 the form is then additive).
  bool polar_is_zero() const;

 private:
  FieldSpec field_;
  Mat upper_;
  Mat polar_;
};

/// Pullback of `ambient` along the given basis vectors (the rows).
QuadraticForm restrict_to_rows(const QuadraticForm& ambient, const Mat& rows);
/// Pullback along the canonical basis of a subspace; DimensionMismatch if the
/// subspace lives in a space of another dimension.
QuadraticForm restrict_form(const QuadraticForm& ambient, const ProjSubspace& subspace);

enum class IsotropyStatus { Isotropic, Anisotropic, Unknown };
enum class ProofTag { BruteForce, HasseMinkowski, Discriminant, Certificate, BoundedSearchExhausted, Witness };

std::string_view to_string(IsotropyStatus s);
std::string_view to_string(ProofTag t);

/// Outcome of an isotropy decision. An isotropic verdict always carries a
/// nonzero witness with Q(witness) = 0; the factory checks it.
class IsotropyVerdict {
 public:
  static IsotropyVerdict isotropic(const QuadraticForm& form, Vec witness);
  static IsotropyVerdict anisotropic(ProofTag tag) { return IsotropyVerdict(IsotropyStatus::Anisotropic, tag); }
  static IsotropyVerdict unknown() { return IsotropyVerdict(IsotropyStatus::Unknown, ProofTag::BoundedSearchExhausted); }

  IsotropyStatus status() const { return status_; }
  bool is_isotropic() const { return status_ == IsotropyStatus::Isotropic; }
  bool is_anisotropic() const { return status_ == IsotropyStatus::Anisotropic; }
  ProofTag proof() const { return proof_; }
  const std::optional<Vec>& witness() const { return witness_; }

 private:
  IsotropyVerdict(IsotropyStatus s, ProofTag t) : status_(s), proof_(t) {}

  IsotropyStatus status_;
  ProofTag proof_;
  std::optional<Vec> witness_;
};

/// A place of Q: the real place or a prime.
struct Place {
  bool infinite = true;
  mpz_class prime;
  static Place infinity() { return {}; }
  static Place at(const mpz_class& p) { return {false, p}; }
};

/// Hilbert symbol (a, b)_v of nonzero rationals; InvalidPlace if v is neither
/// infinity nor a prime.
int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& place);
/// Places where (a, b)_v can be -1: infinity, 2, and primes dividing a or b.
std::vector<Place> relevant_places(const mpq_class& a, const mpq_class& b);

/// Isotropy of a ternary form over Q (Hasse-Minkowski with an explicit
/// Legendre-descent witness) or over GF(p) (exhaustive). UnsupportedField for
/// F2(s,t).
IsotropyVerdict ternary_isotropic(const QuadraticForm& form);

/// Isotropy of a binary form over any supported field. Over F2(s,t) the
/// Artin-Schreier case falls back to a bounded root search and may answer
/// Unknown.
IsotropyVerdict binary_anisotropic(const QuadraticForm& form);

/// Exact decision for char-2 forms whose polar form vanishes (Q is then
/// sum c_i x_i^2). Over F2(s,t) the c_i are tested for linear independence
/// over the subfield of squares via the parity decomposition of polynomials.
IsotropyVerdict additive_isotropic(const QuadraticForm& form);

/// Exhaustive search over vectors with entries of bounded size: integers in
/// [-bound, bound] over Q, polynomials of total degree <= bound over F2(s,t).
/// Returns a witness or nothing; never proves anisotropy.
std::optional<Vec> bounded_zero_search(const QuadraticForm& form, int bound);

/// Exhaustive search over GF(p)^n.
IsotropyVerdict brute_force_isotropic(const QuadraticForm& form);

}  // namespace kp
