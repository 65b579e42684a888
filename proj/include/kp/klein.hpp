#pragma once

#include <optional>
#include <string_view>

#include "kp/proj_space.hpp"
#include "kp/quadratic_forms.hpp"
#include "kp/random.hpp"

// Klein correspondence between lines of PG(3, K) and points of the Klein
// quadric H5 in PG(5, K).
//
// Plucker coordinates are ordered (p01, p02, p03, p12, p13, p23) with
// p_ij = x_i y_j - x_j y_i, and
//
//   Q(p) = p01 p23 - p02 p13 + p03 p12,
//   B(p, q) = p01 q23 + p23 q01 - p02 q13 - p13 q02 + p03 q12 + p12 q03.
//
// B is nondegenerate in every characteristic and alternating in char 2.

namespace kp {

QuadraticForm klein_form(const FieldSpec& field);
Scalar klein_q(const Vec& p);
Scalar klein_b(const Vec& p, const Vec& q);
/// The linear form y -> B(x, y) as a coefficient row.
Vec polar_row(const Vec& x);
bool on_quadric(const Vec& p);

/// Plucker vector of the line spanned by x and y.
Vec plucker(const Vec& x, const Vec& y);
/// Plucker vector of a line of PG(3); NotALine otherwise.
Vec lambda(const ProjSubspace& line3);
ProjSubspace lambda_point(const ProjSubspace& line3);
/// The line of PG(3) with the given Plucker coordinates; NotOnQuadric if
/// Q(p) != 0 or p = 0.
ProjSubspace lambda_inv(const Vec& p);
ProjSubspace lambda_inv(const ProjSubspace& point);

/// pi_5(S) = {y : B(x, y) = 0 for all x in S}.
ProjSubspace polar(const ProjSubspace& s);

/// Plane of H5 formed by the images of all lines through a point of PG(3).
ProjSubspace star_plane(const Vec& point3);

/// Random line of PG(3); its image is a random point of H5.
ProjSubspace random_line3(const FieldSpec& field, Rng& rng, int height = 5);
Vec random_quadric_point(const FieldSpec& field, Rng& rng, int height = 5);

enum class LineClass { Secant0, Tangent, Secant2, Contained };
std::string_view to_string(LineClass c);

/// Secancy of a line of PG(5). Undecided when the restricted form is an
/// Artin-Schreier binary form over F2(s,t) that the bounded search cannot settle.
LineClass classify_line(const ProjSubspace& g);
bool is_zero_secant(const ProjSubspace& g);

/// Reflection x -> x - (B(x, q) / Q(q)) q, an isometry of Q fixing pi_5(q).
/// CentreOnQuadric if Q(q) = 0.
Vec reflect(const Vec& q, const Vec& x);
ProjSubspace reflect(const Vec& q, const ProjSubspace& s);

/// Evidence that a plane over F2(s,t) is external: it is the image of an
/// external source plane under the reflection with the given centre.
struct AnisotropyCertificate {
  Vec centre;
  Mat source_rows;
};

/// Isotropy of Q on a subspace of PG(5). Exact over Q and GF(p). Over
/// F2(s,t) exact when B vanishes on the subspace or when a certificate
/// applies; otherwise a bounded search for a zero, and Unknown if none turns up.
IsotropyVerdict section_isotropy(const ProjSubspace& s, const AnisotropyCertificate* cert = nullptr);

/// The plane misses H5. UndecidedWithoutCertificate when the answer is unknown.
bool is_external_plane(const ProjSubspace& eps, const AnisotropyCertificate* cert = nullptr);

enum class PlaneClass { External, TangentConeSection, ConicSection, DegenerateSection, ContainsLines };
std::string_view to_string(PlaneClass c);
/// Diagnostic only; `External` is the one class with a downstream contract.
PlaneClass classify_plane(const ProjSubspace& eps, const AnisotropyCertificate* cert = nullptr);

struct TangentWitness {
  Vec pole;           // x on H5
  ProjSubspace hyperplane;  // pi_5(x), contains S
  ProjSubspace m;     // M inside S and H5, dim M >= dim S - 2
};

/// A tangent hyperplane through S, or nothing when pi_5(S) misses H5.
/// Undecided if that cannot be settled over F2(s,t).
std::optional<TangentWitness> tangent_hyperplane_containing(const ProjSubspace& s);

/// x on H5 with B(x, p) = 0 whose tangent hyperplane does not contain G.
/// Requires Q(p) != 0 and p on G; SearchExhausted after `budget` draws.
Vec tangent_through_point_avoiding(const Vec& p, const ProjSubspace& g, Rng& rng, int budget = 2000);

struct SecondPlane {
  ProjSubspace plane;
  Vec centre;
  AnisotropyCertificate certificate;
};

/// A second external plane meeting eps1 in a line: the image of eps1 under the
/// reflection in a point q of a tangent line of H5, q off eps1 and pi_5(eps1).
/// NotExternal if eps1 is not external, FiniteField over GF(p).
SecondPlane second_external_plane(const ProjSubspace& eps1, Rng& rng, const AnisotropyCertificate* cert = nullptr,
                                  int budget = 500);

enum class PolarType { Skew, MeetsInPoint, MeetsInLine, SelfPolar };
std::string_view to_string(PolarType t);
PolarType plane_polar_type(const ProjSubspace& eps);

/// N is contained in pi_5(N).
bool is_nucleus_line(const ProjSubspace& n);

/// For a plane eps meeting its polar in a single point q: G lies in the pencil
/// of lines of eps through q.
bool in_polar_pencil(const ProjSubspace& g, const ProjSubspace& eps);

}  // namespace kp
