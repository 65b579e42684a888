#include "kp/quadratic_forms.hpp"

#include <array>

#include "kp/error.hpp"

namespace kp {

std::string_view to_string(IsotropyStatus s) {
  switch (s) {
    case IsotropyStatus::Isotropic: return "isotropic";
    case IsotropyStatus::Anisotropic: return "anisotropic";
    case IsotropyStatus::Unknown: return "unknown";
  }
  return "?";
}

std::string_view to_string(ProofTag t) {
  switch (t) {
    case ProofTag::BruteForce: return "brute_force";
    case ProofTag::HasseMinkowski: return "hasse_minkowski";
    case ProofTag::Discriminant: return "discriminant";
    case ProofTag::Certificate: return "certificate";
    case ProofTag::BoundedSearchExhausted: return "bounded_search_exhausted";
    case ProofTag::Witness: return "witness";
  }
  return "?";
}

QuadraticForm QuadraticForm::from_upper(const FieldSpec& field, Mat upper) {
  const std::size_t n = upper.size();
  if (n == 0 || n > 6) throw Error(ErrorCode::DimensionMismatch, "quadratic forms need 1 <= n <= 6");
  for (auto& row : upper)
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "coefficient matrix is not square");
  QuadraticForm q;
  q.field_ = field;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) upper[i][j] = field.zero();
  q.polar_ = Mat(n, zero_vec(field, n));
  for (std::size_t i = 0; i < n; ++i) {
    q.polar_[i][i] = upper[i][i] + upper[i][i];
    for (std::size_t j = i + 1; j < n; ++j) q.polar_[i][j] = q.polar_[j][i] = upper[i][j];
  }
  q.upper_ = std::move(upper);
  return q;
}

QuadraticForm QuadraticForm::diagonal(const FieldSpec& field, const Vec& d) {
  Mat upper(d.size(), zero_vec(field, d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) upper[i][i] = d[i];
  return from_upper(field, std::move(upper));
}

Scalar QuadraticForm::value(const Vec& x) const {
  if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "vector length vs form dimension");
  Scalar acc = field_.zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = i; j < dim(); ++j) {
      if (upper_[i][j].is_zero() || x[j].is_zero()) continue;
      acc += upper_[i][j] * x[i] * x[j];
    }
  }
  return acc;
}

Scalar QuadraticForm::polar(const Vec& x, const Vec& y) const {
  if (x.size() != dim() || y.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "polar form arguments");
  Scalar acc = field_.zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (polar_[i][j].is_zero() || y[j].is_zero()) continue;
      acc += x[i] * polar_[i][j] * y[j];
    }
  }
  return acc;
}

bool QuadraticForm::is_zero() const {
  for (const auto& row : upper_)
    if (!kp::is_zero(row)) return false;
  return true;
}

bool QuadraticForm::polar_is_zero() const {
  for (const auto& row : polar_)
    if (!kp::is_zero(row)) return false;
  return true;
}

QuadraticForm restrict_to_rows(const QuadraticForm& ambient, const Mat& rows) {
  const std::size_t k = rows.size();
  if (k == 0) throw Error(ErrorCode::DimensionMismatch, "restriction to the empty subspace");
  for (const auto& r : rows)
    if (r.size() != ambient.dim()) throw Error(ErrorCode::DimensionMismatch, "basis vector length vs form");
  const FieldSpec& f = ambient.field();
  Mat upper(k, zero_vec(f, k));
  for (std::size_t a = 0; a < k; ++a) {
    upper[a][a] = ambient.value(rows[a]);
    for (std::size_t b = a + 1; b < k; ++b) upper[a][b] = ambient.polar(rows[a], rows[b]);
  }
  return QuadraticForm::from_upper(f, std::move(upper));
}

QuadraticForm restrict_form(const QuadraticForm& ambient, const ProjSubspace& subspace) {
  if (static_cast<std::size_t>(subspace.ambient() + 1) != ambient.dim())
    throw Error(ErrorCode::DimensionMismatch, "subspace of PG(" + std::to_string(subspace.ambient()) +
                                                  ") vs form in " + std::to_string(ambient.dim()) + " variables");
  return restrict_to_rows(ambient, subspace.rows());
}

IsotropyVerdict IsotropyVerdict::isotropic(const QuadraticForm& form, Vec witness) {
  if (kp::is_zero(witness) || !form.value(witness).is_zero())
    throw Error(ErrorCode::Internal, "isotropy witness does not satisfy Q(w) = 0, w != 0");
  IsotropyVerdict v(IsotropyStatus::Isotropic, ProofTag::Witness);
  v.witness_ = std::move(witness);
  return v;
}

int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& place) {
  if (sgn(a) == 0 || sgn(b) == 0) throw Error(ErrorCode::Internal, "Hilbert symbol of zero");
  // n/d and n*d lie in the same square class.
  const mpz_class ia = a.get_num() * a.get_den(), ib = b.get_num() * b.get_den();
  if (place.infinite) return nt::hilbert_symbol_at_infinity(ia, ib);
  if (place.prime < 2 || mpz_probab_prime_p(place.prime.get_mpz_t(), 40) == 0)
    throw Error(ErrorCode::InvalidPlace, place.prime.get_str() + " is not a prime");
  return nt::hilbert_symbol_at_prime(ia, ib, place.prime);
}

std::vector<Place> relevant_places(const mpq_class& a, const mpq_class& b) {
  std::vector<Place> out{Place::infinity(), Place::at(2)};
  const mpz_class prod = a.get_num() * a.get_den() * b.get_num() * b.get_den();
  for (const auto& [p, e] : nt::factor(prod)) {
    (void)e;
    if (p != 2) out.push_back(Place::at(p));
  }
  return out;
}

IsotropyVerdict brute_force_isotropic(const QuadraticForm& form) {
  const FieldSpec& f = form.field();
  if (!f.is_finite()) throw Error(ErrorCode::InfiniteField, "brute force needs a finite field");
  const std::size_t n = form.dim();
  std::vector<std::uint32_t> digits(n, 0);
  while (true) {
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++digits[i] < f.p) break;
      digits[i] = 0;
    }
    if (i == n) break;
    Vec x;
    for (auto d : digits) x.push_back(f.from_int(d));
    if (form.value(x).is_zero()) return IsotropyVerdict::isotropic(form, std::move(x));
  }
  return IsotropyVerdict::anisotropic(ProofTag::BruteForce);
}

namespace {

struct Diagonalization {
  std::optional<Vec> witness;  // found an isotropic basis vector on the way
  Vec coeffs;
  Mat basis;
};

// Orthogonal basis for a char != 2 form; stops early at any vector with Q = 0.
Diagonalization diagonalize(const QuadraticForm& form) {
  const FieldSpec& f = form.field();
  Mat remaining;
  for (std::size_t i = 0; i < form.dim(); ++i) remaining.push_back(unit_vec(f, form.dim(), i));
  Diagonalization out;
  while (!remaining.empty()) {
    for (const auto& v : remaining) {
      if (form.value(v).is_zero()) {
        out.witness = v;
        return out;
      }
    }
    Vec v = remaining.front();
    remaining.erase(remaining.begin());
    const Scalar q = form.value(v);
    const Scalar two_q = q + q;
    for (auto& w : remaining) {
      const Scalar c = form.polar(w, v) / two_q;
      axpy(w, -c, v);
    }
    out.coeffs.push_back(q);
    out.basis.push_back(std::move(v));
  }
  return out;
}

// d = core * k^2 with core a squarefree integer; returns {core, k}.
std::pair<mpz_class, mpq_class> square_class(const mpq_class& d) {
  const mpz_class n = d.get_num() * d.get_den();
  auto [core, root] = nt::squarefree_decompose(n);
  mpq_class k(root, d.get_den());
  k.canonicalize();
  return {core, k};
}

IsotropyVerdict ternary_rational(const QuadraticForm& form) {
  const FieldSpec& f = form.field();
  auto diag = diagonalize(form);
  if (diag.witness) return IsotropyVerdict::isotropic(form, *diag.witness);

  std::array<mpz_class, 3> core;
  std::array<mpq_class, 3> scale;
  for (int i = 0; i < 3; ++i) std::tie(core[i], scale[i]) = square_class(diag.coeffs[i].rational());

  // c0 Y0^2 + c1 Y1^2 + c2 Y2^2 = 0  <=>  (c2 Y2)^2 = (-c0 c2) Y0^2 + (-c1 c2) Y1^2.
  auto [a, ga] = nt::squarefree_decompose(-core[0] * core[2]);
  auto [b, gb] = nt::squarefree_decompose(-core[1] * core[2]);
  const mpq_class qa(a), qb(b);
  for (const auto& place : relevant_places(qa, qb))
    if (hilbert_symbol(qa, qb, place) == -1) return IsotropyVerdict::anisotropic(ProofTag::HasseMinkowski);

  const auto sol = nt::solve_legendre(a, b);
  // a x^2 = (-c0 c2) Y0^2 with a ga^2 = -c0 c2, so Y0 = x / ga; likewise Y1; Y2 = z / c2.
  std::array<mpq_class, 3> y{mpq_class(sol.x, ga), mpq_class(sol.y, gb), mpq_class(sol.z, core[2])};
  Vec w = zero_vec(f, 3);
  for (int i = 0; i < 3; ++i) {
    y[i].canonicalize();
    const mpq_class xi = y[i] / scale[i];
    axpy(w, Scalar(xi), diag.basis[i]);
  }
  return IsotropyVerdict::isotropic(form, std::move(w));
}

std::vector<Gf2Poly> polys_up_to_degree(int degree) {
  std::vector<Gf2Poly> monos;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) monos.push_back(Gf2Poly::monomial(a, b));
  std::vector<Gf2Poly> out;
  const std::size_t count = std::size_t{1} << monos.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    Gf2Poly p;
    for (std::size_t i = 0; i < monos.size(); ++i)
      if (mask >> i & 1) p += monos[i];
    out.push_back(std::move(p));
  }
  return out;
}

// Root z of z^2 + z = w over F2(s,t), searching z = P/R with small P, R.
std::optional<Scalar> artin_schreier_root(const Scalar& w, int degree) {
  const auto polys = polys_up_to_degree(degree);
  for (const auto& r : polys) {
    if (r.is_zero()) continue;
    for (const auto& p : polys) {
      Scalar z(F2Frac{p, r});
      if (z * z + z == w) return z;
    }
  }
  return std::nullopt;
}

}  // namespace

IsotropyVerdict ternary_isotropic(const QuadraticForm& form) {
  if (form.dim() != 3) throw Error(ErrorCode::DimensionMismatch, "ternary_isotropic needs a 3-variable form");
  switch (form.field().kind) {
    case FieldKind::PrimeField: return brute_force_isotropic(form);
    case FieldKind::Rationals: return ternary_rational(form);
    case FieldKind::F2RationalFunctions:
      throw Error(ErrorCode::UnsupportedField, "ternary isotropy over F2(s,t) needs a certificate");
  }
  throw Error(ErrorCode::Internal, "bad field kind");
}

IsotropyVerdict binary_anisotropic(const QuadraticForm& form) {
  if (form.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "binary_anisotropic needs a 2-variable form");
  const FieldSpec& f = form.field();
  if (f.is_finite()) return brute_force_isotropic(form);
  const Scalar& a = form.coeff(0, 0);
  const Scalar& b = form.coeff(0, 1);
  const Scalar& c = form.coeff(1, 1);
  if (a.is_zero()) return IsotropyVerdict::isotropic(form, unit_vec(f, 2, 0));
  if (c.is_zero()) return IsotropyVerdict::isotropic(form, unit_vec(f, 2, 1));
  if (f.characteristic() != 2) {
    const Scalar disc = b * b - f.from_int(4) * a * c;
    auto root = sqrt_if_square(disc);
    if (!root) return IsotropyVerdict::anisotropic(ProofTag::Discriminant);
    return IsotropyVerdict::isotropic(form, Vec{*root - b, a + a});
  }
  if (b.is_zero()) return additive_isotropic(form);
  // a x^2 + b x + c = 0 with x = (b/a) z becomes z^2 + z = ac/b^2.
  const Scalar w = a * c / (b * b);
  if (auto z = artin_schreier_root(w, 2)) return IsotropyVerdict::isotropic(form, Vec{b / a * *z, f.one()});
  return IsotropyVerdict::unknown();
}

IsotropyVerdict additive_isotropic(const QuadraticForm& form) {
  const FieldSpec& f = form.field();
  if (f.characteristic() != 2 || !form.polar_is_zero())
    throw Error(ErrorCode::UnsupportedField, "additive isotropy test needs char 2 and a vanishing polar form");
  if (f.is_finite()) return brute_force_isotropic(form);
  const std::size_t n = form.dim();
  for (std::size_t i = 0; i < n; ++i)
    if (form.coeff(i, i).is_zero()) return IsotropyVerdict::isotropic(form, unit_vec(f, n, i));
  // c_i = P_i / den_i^2 with P_i = num_i den_i. sum c_i x_i^2 = 0 with x_i = den_i y_i
  // iff sum_i y_i R_i^(e,f) = 0 for each parity class (e, f), where
  // P_i = sum s^e t^f (R_i^(e,f))^2.
  Mat system(4, zero_vec(f, n));
  Vec dens;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = form.coeff(i, i).f2();
    const Gf2Poly p = c.num * c.den;
    dens.push_back(Scalar(F2Frac{c.den, Gf2Poly::one()}));
    for (unsigned e = 0; e < 2; ++e)
      for (unsigned g = 0; g < 2; ++g) system[2 * e + g][i] = Scalar(F2Frac{p.parity_component(e, g), Gf2Poly::one()});
  }
  const Mat ker = kernel(system, n, f);
  if (ker.empty()) return IsotropyVerdict::anisotropic(ProofTag::Certificate);
  Vec w = ker.front();
  for (std::size_t i = 0; i < n; ++i) w[i] *= dens[i];
  return IsotropyVerdict::isotropic(form, std::move(w));
}

std::optional<Vec> bounded_zero_search(const QuadraticForm& form, int bound) {
  const FieldSpec& f = form.field();
  if (f.is_finite()) {
    auto v = brute_force_isotropic(form);
    if (v.is_isotropic()) return v.witness();
    return std::nullopt;
  }
  std::vector<Scalar> entries;
  if (f.kind == FieldKind::Rationals) {
    for (int i = -bound; i <= bound; ++i) entries.push_back(f.from_int(i));
  } else {
    for (auto& p : polys_up_to_degree(bound)) entries.push_back(Scalar(F2Frac{std::move(p), Gf2Poly::one()}));
  }
  const std::size_t n = form.dim();
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++idx[i] < entries.size()) break;
      idx[i] = 0;
    }
    if (i == n) return std::nullopt;
    Vec x;
    for (auto k : idx) x.push_back(entries[k]);
    if (kp::is_zero(x)) continue;
    if (form.value(x).is_zero()) return x;
  }
}

}  // namespace kp
