#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kp/klein.hpp"

// Pencilled hfd line sets: the union over v in D of the pencils L[v, f(v)],
// where D is a 0-secant and f maps points of D to external planes through D.
// Only maps with finite image and finitely many exceptions are representable.

namespace kp {

struct HfdException {
  LineParam param;  // point of D relative to its canonical basis
  std::size_t plane = 0;
};

struct HfdDescriptor {
  ProjSubspace d;
  std::vector<ProjSubspace> planes;
  std::size_t default_plane = 0;
  std::vector<HfdException> exceptions;
  /// Empty, or one optional certificate per plane.
  std::vector<std::optional<AnisotropyCertificate>> certificates;

  const AnisotropyCertificate* certificate(std::size_t i) const;
};

/// Structural checks only: indices in range, distinct nonzero exception
/// parameters, ambient PG(5). InvalidDescriptor otherwise.
void check_structure(const HfdDescriptor& d);

/// check_structure plus: every plane contains D (PlaneNotThroughD), every
/// plane is external (PlaneNotExternal, or Undecided over F2(s,t) without a
/// certificate), and D is a 0-secant.
void validate(const HfdDescriptor& d);

/// f(v); PointNotOnD unless v lies on D.
const ProjSubspace& f_of(const HfdDescriptor& d, const Vec& v);
std::size_t f_index(const HfdDescriptor& d, const Vec& v);

struct PencilRef {
  Vec vertex;
  ProjSubspace carrier;
};

/// The pencil containing X, if X belongs to the line set.
std::optional<PencilRef> hfd_membership(const HfdDescriptor& d, const ProjSubspace& x);

/// The member line inside the tangent hyperplane tau; NotTangent unless tau
/// is pi_5 of a point of H5.
ProjSubspace line_in_tangent_hyperplane(const HfdDescriptor& d, const ProjSubspace& tau);

struct HfdCheck {
  bool pass = false;
  std::size_t members = 0;
  std::string detail;
};

/// Exactly one member line lies in pi_5(x), it is the one returned by
/// line_in_tangent_hyperplane, and it is a 0-secant.
HfdCheck verify_hfd_at(const HfdDescriptor& d, const Vec& x);

enum class HfdCase { PlaneOfLines, CollinearVertices };
std::string_view to_string(HfdCase c);

struct HfdClassification {
  HfdCase kind = HfdCase::PlaneOfLines;
  ProjSubspace v;
  std::vector<ProjSubspace> k;       // distinct attained planes
  std::vector<std::size_t> attained;  // their indices in d.planes
  int dimension = 2;
};

/// ClassificationInconsistency if the structural predictions fail.
HfdClassification classify(const HfdDescriptor& d);
bool is_clifford(const HfdDescriptor& d);

/// f constant: one external plane, D = the line through its first two basis points.
HfdDescriptor constant_descriptor(const ProjSubspace& kappa, const AnisotropyCertificate* cert = nullptr);

/// Two planes: kappa2 = second_external_plane(kappa1), D = kappa1 cap kappa2,
/// f = kappa2 except at `exceptions` points of D (parameters [1:0], [0:1],
/// [1:1], [2:1], ...), which go to kappa1.
HfdDescriptor two_plane_descriptor(const ProjSubspace& kappa1, Rng& rng, std::size_t exceptions = 3,
                                   const AnisotropyCertificate* cert = nullptr);

/// Polar points of H5 worth testing: points x of H5 with some plane inside
/// pi_5(x). Valid descriptors have none.
std::vector<Vec> tangent_plane_witnesses(const HfdDescriptor& d);

}  // namespace kp
