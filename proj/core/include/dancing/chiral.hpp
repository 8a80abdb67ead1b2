#pragma once

// The three-marker angle the leader robots form to broadcast position,
// orientation, scale, and (when non-degenerate) handedness of the pattern the
// swarm must form, plus the resolution of that pattern from the angle.

#include <cstddef>

#include "dancing/geometry.hpp"

namespace dancing {

struct ChiralAngle {
  Point nu1;  // origin marker
  Point nu2;  // unit-distance marker
  Point nu3;  // orientation marker
  PatternClass pattern_class;  // class of the target pattern
};

// Circle centered at nu1 through nu2; the smallest enclosing circle of the
// resolved pattern for gather and many-vertex targets.
Circle supporting_circle(const ChiralAngle& ca);

// Labeling of a three-vertex pattern as (v1, v2, v3) with
// d(v1,v2) >= d(v1,v3) >= d(v2,v3); distance ties (relative eps) are broken
// toward the lexicographically largest cardinality triple. Indices refer to
// target.vertices(). Throws std::invalid_argument unless the pattern has
// exactly three vertices.
struct ThreeLabels {
  std::size_t v1;
  std::size_t v2;
  std::size_t v3;
};
ThreeLabels three_point_labels(const Pattern& target,
                               double eps = kDefaultEps);

// Origin marker: center of the smallest enclosing circle when the current
// configuration is many-vertex, otherwise the first leader's position.
Point compute_nu1(const Pattern& configuration, const Point& lambda1,
                  double eps = kDefaultEps);

// Unit marker: nu1 itself for gather targets; otherwise the second leader's
// position when distinct from nu1, else the supplied image of the second
// leader's local (0,1) point. tol is an absolute distance tolerance.
Point compute_nu2(const Pattern& pi_i, const Point& nu1, const Point& lambda2,
                  const Point& lambda2_local_up, double tol);

// Orientation marker. For three-vertex targets two mirror apexes exist;
// prefer_side (+1 or -1) selects by the sign of cross(nu2-nu1, nu3-nu1),
// defaulting to the positive (left of directed nu1->nu2) side. For
// many-vertex targets this is the image of the anchor multivertex: the one
// whose image lies closest to nu2 among images off the nu1-nu2 line (off nu1
// and nu2 for aligned targets), ties broken by lowest ranking class, then
// smaller cardinality, then vertex order.
Point compute_nu3(const Pattern& pi_i, const Point& nu1, const Point& nu2,
                  double tol, int prefer_side = 1);

// True when the three markers satisfy the class invariants for pi_i and, for
// many-vertex targets, nu3 sits on the image of an admissible anchor
// multivertex. tol is an absolute distance tolerance at configuration scale.
bool is_chiral_angle(const ChiralAngle& ca, const Pattern& pi_i, double tol);

// The unique concrete pattern similar to pi_i selected by the angle. Throws
// std::invalid_argument("chiral angle does not define a valid target") when
// the angle is not valid for pi_i.
Pattern resolve_target(const ChiralAngle& ca, const Pattern& pi_i,
                       double tol);

}  // namespace dancing
