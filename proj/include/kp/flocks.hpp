#pragma once

#include <cstdint>

#include "kp/hfd.hpp"
#include "kp/spreads.hpp"

// Back in PG(3): the general linear complex G(p) = lambda^-1(pi_5(p) cap H5)
// and the linear flock F[p, eps] of G(p), whose spreads correspond to the
// pencil L[p, eps] of 0-secants.

namespace kp {

/// General linear complex with pole p; PointOnQuadric if Q(p) = 0.
class LinearComplex {
 public:
  explicit LinearComplex(Vec pole);
  const Vec& pole() const { return pole_; }
  bool contains(const ProjSubspace& line3) const;

 private:
  Vec pole_;
};

bool complex_contains(const LinearComplex& c, const ProjSubspace& line3);

/// F[p, eps]: p on the external plane eps (DimensionMismatch otherwise;
/// NotExternal if eps meets H5).
class LinearFlock {
 public:
  LinearFlock(Vec pole, ProjSubspace carrier, const AnisotropyCertificate* cert = nullptr);
  const LinearComplex& complex() const { return complex_; }
  const ProjSubspace& carrier() const { return carrier_; }
  bool in_pencil(const ProjSubspace& x) const;

 private:
  LinearComplex complex_;
  ProjSubspace carrier_;
};

struct FlockMember {
  ProjSubspace x;  // line of L[p, eps]
  SpreadDescriptor spread;
};

/// The pencil member whose spread contains the line; NotInComplex unless the
/// line lies in G(p).
FlockMember flock_spread_through(const LinearFlock& fl, const ProjSubspace& line3);

/// gamma^-1(D) for a non-Clifford descriptor; CliffordCase otherwise.
SpreadDescriptor distinguished_class(const HfdDescriptor& d);

/// Lines of gamma^-1(D) lie in G(v) for `vertices` random v on D, and the
/// lines through random points lying in all of those complexes are spread lines.
PartitionReport check_distinguished_class(const HfdDescriptor& d, std::size_t vertices, std::size_t lines,
                                          std::uint64_t seed);

/// The parallel class of a line of PG(3) in the parallelism of d.
SpreadDescriptor parallelism_from_hfd(const HfdDescriptor& d, const ProjSubspace& line3);

/// Random lines of G(p) are claimed by exactly one member of F[p, eps]:
/// positive by flock_spread_through, negative against `cross` other members.
PartitionReport verify_flock(const LinearFlock& fl, std::size_t samples, std::uint64_t seed, std::size_t cross = 5);

/// Random line of G(p): a random line through a point of PG(3) inside the
/// complex's null plane at that point.
ProjSubspace random_complex_line(const LinearComplex& c, Rng& rng);

}  // namespace kp
