#pragma once

// Similarity-invariant total preorder on the multivertices of a many-vertex
// pattern. Vertices are keyed by normalized depth inside the smallest
// enclosing circle, angular gap to the neighbouring radial projection, and
// cardinality; each vertex is summarized by the lexicographically smaller of
// its clockwise and counterclockwise key strings, which is independent of
// rotation, translation, uniform scaling, and reflection.

#include <cstddef>
#include <vector>

#include "dancing/geometry.hpp"

namespace dancing {

inline constexpr double kDefaultEpsAngle = 1e-9;  // radians

// One entry of a vertex key string.
struct VertexKey {
  double rho = 0.0;    // 1 - (distance from the circle center) / radius
  double theta = 0.0;  // angular gap to the next radial projection
  int cardinality = 1;
};

// Fuzzy three-way comparison: rho within eps, theta within eps_angle,
// cardinality exact. Returns -1, 0, or +1.
int compare(const VertexKey& a, const VertexKey& b, double eps,
            double eps_angle);

int compare(const std::vector<VertexKey>& a, const std::vector<VertexKey>& b,
            double eps, double eps_angle);

struct Ranking {
  // Ordered partition of multivertex indices (into Pattern::vertices()),
  // best class first. Within a pattern, indices in one class are mutually
  // indistinguishable; the final class is the singleton center vertex when
  // one exists.
  std::vector<std::vector<std::size_t>> classes;
  // Per multivertex index, its summary key string.
  std::vector<std::vector<VertexKey>> keys;

  // Class index holding a given multivertex.
  std::size_t class_of(std::size_t vertex_index) const;
};

// Ranks the multivertices of a many-vertex pattern. Throws
// std::invalid_argument("ranking defined only for NPoints") unless the
// pattern classifies as NPoints.
Ranking rank(const Pattern& pattern, double eps = kDefaultEps,
             double eps_angle = kDefaultEpsAngle);

// True when transforming the pattern by t maps every ranking class onto the
// ranking class of equal position computed on the transformed pattern.
bool rank_preserved_under(const Similarity& t, const Pattern& pattern,
                          double eps = kDefaultEps,
                          double eps_angle = kDefaultEpsAngle);

}  // namespace dancing
