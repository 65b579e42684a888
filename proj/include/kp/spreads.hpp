#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "kp/algebras.hpp"
#include "kp/klein.hpp"

// Regular spreads of PG(3, K). Points of PG(3) are nonzero elements of a
// four-dimensional algebra H, so a line is a two-dimensional subspace of H.

namespace kp {

enum class Side { Left, Right };
std::string_view to_string(Side s);

/// {c L : c in H*} (left) or {L c : c in H*} (right). `basis` holds two
/// vectors spanning L; valid descriptors have 1 in L and L closed under
/// multiplication.
struct CosetSpread {
  Algebra algebra;
  Side side = Side::Left;
  Mat basis;
};

/// lambda^-1(pi_5(G) cap H5) for a 0-secant G.
struct SecantSpread {
  ProjSubspace g;
};

using SpreadDescriptor = std::variant<CosetSpread, SecantSpread>;

CosetSpread coset_spread(const Algebra& h, const Subfield& l, Side side = Side::Left);

/// pi_5 of the solid spanned by lambda-images of spread lines.
/// SpanDeficient if the sampled lines do not reach a solid,
/// VerificationFailed if the result is not a 0-secant.
ProjSubspace gamma(const SpreadDescriptor& c);

/// NotZeroSecant unless classify_line(G) = secant_0.
SpreadDescriptor spread_from_secant(const ProjSubspace& g);

/// The spread line through the point p of PG(3).
ProjSubspace line_through_point(const SpreadDescriptor& c, const Vec& p);
bool spread_contains(const SpreadDescriptor& c, const ProjSubspace& line3);

/// The left (right) Clifford parallel class of a line of PG(3) = P(H).
CosetSpread clifford_class(const Algebra& h, Side side, const ProjSubspace& line3);

/// gamma of the whole Clifford parallelism: a plane of lines, checked
/// external and checked to contain gamma of `extra` further random classes.
ProjSubspace clifford_hfd_plane(const Algebra& h, Side side, Rng& rng, int extra = 50);

struct PartitionReport {
  std::uint64_t seed = 0;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Random points each lie on exactly one line of the spread.
PartitionReport verify_partition(const SpreadDescriptor& c, std::size_t samples, std::uint64_t seed);

using ClassOf = std::function<SpreadDescriptor(const ProjSubspace&)>;

/// Random lines each lie in the class returned for them and in no other
/// sampled class; `cross` earlier classes are used for the negative checks.
PartitionReport verify_parallelism(const FieldSpec& field, const ClassOf& class_of, std::size_t samples,
                                   std::uint64_t seed, std::size_t cross = 5);
PartitionReport verify_clifford_parallelism(const Algebra& h, Side side, std::size_t samples, std::uint64_t seed);

/// PartitionViolation carrying the first counterexample.
void enforce(const PartitionReport& r);

/// is_separable_quadratic(L) agrees with G cap pi_5(G) being empty.
bool galois_criterion_check(const ProjSubspace& g, const Subfield& l);

}  // namespace kp
