#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "kp/field.hpp"
#include "kp/proj_space.hpp"

namespace kp {

/// Seeded generator with a pinned algorithm. std::mt19937_64 is specified
/// bit-exactly by the standard; the distributions in <random> are not, so
/// bounded draws are reduced by hand to keep reports reproducible.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64/modulo";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }
  bool coin() { return next() & 1; }

  /// Seed for an independent sub-stream, e.g. one per sample index.
  std::uint64_t fork() { return next() ^ 0x9e3779b97f4a7c15ULL; }

 private:
  std::mt19937_64 engine_;
};

/// Random field element of small height: integers in [-height, height] over
/// Q, uniform residues over GF(p), and low-degree polynomials over F2(s,t).
Scalar random_scalar(const FieldSpec& field, Rng& rng, int height = 5);
/// Same as random_scalar but never zero.
Scalar random_nonzero_scalar(const FieldSpec& field, Rng& rng, int height = 5);

/// Vector of n random entries (possibly zero).
Vec random_vector(const FieldSpec& field, std::size_t n, Rng& rng, int height = 5);
/// Random nonzero vector of the subspace, as a combination of its basis.
Vec random_vector_in(const ProjSubspace& s, Rng& rng, int height = 5);
/// Random subspace of PG(n) of the given projective dimension.
ProjSubspace random_subspace(const FieldSpec& field, int n, int dim, Rng& rng, int height = 5);

}  // namespace kp
