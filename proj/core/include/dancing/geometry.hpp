#pragma once

// Planar geometry for the pattern-formation library: points, circles,
// orientation-aware similarity transforms, weighted point multisets
// ("patterns"), smallest enclosing circles, and similarity testing.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace dancing {

// Default absolute tolerance for geometric equality, in normalized units
// where the relevant enclosing-circle radius is O(1).
inline constexpr double kDefaultEps = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double s, const Point& p);
bool operator==(const Point& a, const Point& b);  // exact, bitwise-style

double dot(const Point& a, const Point& b);
// z-component of the 3D cross product; positive when b is counterclockwise
// from a.
double cross(const Point& a, const Point& b);
double norm(const Point& p);
double dist(const Point& a, const Point& b);
bool almost_equal(const Point& a, const Point& b, double eps = kDefaultEps);

struct Circle {
  Point center;
  double radius = 0.0;
};

// Orientation-aware similarity transform:
//   p  ->  scale * R(rotation) * M(reflect) * p + translation
// where M mirrors across the x-axis when reflect is true. scale must be > 0.
struct Similarity {
  double scale = 1.0;
  double rotation = 0.0;  // radians, counterclockwise
  bool reflect = false;
  Point translation{0.0, 0.0};

  Point operator()(const Point& p) const;
  Similarity inverse() const;
};

// Function composition: (outer ∘ inner)(p) = outer(inner(p)).
Similarity compose(const Similarity& outer, const Similarity& inner);

// A position with a positive multiplicity.
struct Multivertex {
  Point position;
  int cardinality = 1;
};

// A finite multiset of weighted positions. Construction merges positions
// that coincide within eps (multiplicities add) and stores the result in a
// canonical order (lexicographic by x, then y) so multiset comparison and
// hashing downstream are cheap and deterministic.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::vector<Multivertex> vertices, double eps = kDefaultEps);

  // Builds a pattern from raw positions; coincident positions (within eps)
  // accumulate cardinality.
  static Pattern from_points(std::span<const Point> points,
                             double eps = kDefaultEps);

  const std::vector<Multivertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }      // multivertices
  int total_cardinality() const { return total_cardinality_; }  // robots

  // All multivertex positions (without multiplicities).
  std::vector<Point> positions() const;

  // Multiset equality within eps: same multivertex count, and a bijection
  // pairing vertices within eps with equal cardinalities.
  bool same_multiset(const Pattern& other, double eps = kDefaultEps) const;

 private:
  std::vector<Multivertex> vertices_;
  int total_cardinality_ = 0;
};

enum class PatternTag { point, two_points, three_points, n_points };

struct PatternClass {
  PatternTag tag = PatternTag::point;
  // True when every position lies within eps of one common line. Only
  // meaningful as a subclass marker for n_points (degenerate "all on a
  // line" patterns); it is trivially true for one or two distinct positions.
  bool collinear = false;
};

bool operator==(const PatternClass& a, const PatternClass& b);

// Smallest enclosing circle of a nonempty point set. Deterministic
// (no randomization); throws std::invalid_argument("empty point set") on an
// empty input. Duplicated points and input order do not affect the result.
Circle sec(std::span<const Point> points);
Circle sec(const Pattern& p);

// Classifies by the number of distinct positions: 1 -> point, 2 ->
// two_points, 3 -> three_points unless all positions are collinear (a
// degenerate triangle is treated as an n_points line pattern), >= 4 ->
// n_points. The collinear flag marks line patterns.
PatternClass classify(const Pattern& p, double eps = kDefaultEps);

// Tests whether some non-degenerate similarity transform maps `a` onto `b`
// (as weighted multisets) and returns a witness if so. Both patterns are
// normalized (enclosing-circle center to the origin, radius to 1) and
// candidate correspondences on the outermost ring are tried with and
// without reflection. Throws std::invalid_argument when the two patterns
// have different total cardinality.
std::optional<Similarity> similar(const Pattern& a, const Pattern& b,
                                  double eps = kDefaultEps);

// Applies a similarity transform to every vertex and re-canonicalizes.
Pattern apply(const Similarity& t, const Pattern& p);

}  // namespace dancing
