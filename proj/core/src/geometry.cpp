#include "dancing/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dancing {

Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
Point operator*(double s, const Point& p) { return {s * p.x, s * p.y}; }
bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
double norm(const Point& p) { return std::hypot(p.x, p.y); }
double dist(const Point& a, const Point& b) { return norm(a - b); }

bool almost_equal(const Point& a, const Point& b, double eps) {
  return dist(a, b) <= eps;
}

Point Similarity::operator()(const Point& p) const {
  const double px = p.x;
  const double py = reflect ? -p.y : p.y;
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  return {scale * (c * px - s * py) + translation.x,
          scale * (s * px + c * py) + translation.y};
}

Similarity Similarity::inverse() const {
  if (scale <= 0.0) throw std::invalid_argument("similarity scale must be positive");
  // With M the mirror and R the rotation: (s R M)^-1 = (1/s) M R^-1, and
  // M R^-1 = R' M with R' = R when mirrored (angles negate when commuted
  // across the mirror) and R' = R^-1 otherwise.
  Similarity inv;
  inv.scale = 1.0 / scale;
  inv.reflect = reflect;
  inv.rotation = reflect ? rotation : -rotation;
  inv.translation = {0.0, 0.0};
  inv.translation = inv(Point{-translation.x, -translation.y});
  return inv;
}

Similarity compose(const Similarity& outer, const Similarity& inner) {
  Similarity out;
  out.scale = outer.scale * inner.scale;
  out.reflect = outer.reflect != inner.reflect;
  // Commuting the inner rotation across the outer mirror negates its angle.
  out.rotation = outer.rotation + (outer.reflect ? -inner.rotation : inner.rotation);
  out.translation = outer(inner.translation);
  return out;
}

namespace {

// Transitive-closure clustering of positions within eps; clusters take the
// cardinality-weighted centroid. Quadratic, fine at swarm scale.
std::vector<Multivertex> merge_within(std::vector<Multivertex> vs, double eps) {
  for (const auto& v : vs) {
    if (v.cardinality <= 0) {
      throw std::invalid_argument("cardinality must be positive");
    }
  }
  const std::size_t n = vs.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist(vs[i].position, vs[j].position) <= eps) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::vector<Multivertex> merged;
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (done[root]) continue;
    done[root] = true;
    double wx = 0.0, wy = 0.0;
    int card = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (find(j) != root) continue;
      wx += vs[j].cardinality * vs[j].position.x;
      wy += vs[j].cardinality * vs[j].position.y;
      card += vs[j].cardinality;
    }
    merged.push_back({{wx / card, wy / card}, card});
  }
  return merged;
}

bool lex_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

}  // namespace

Pattern::Pattern(std::vector<Multivertex> vertices, double eps) {
  vertices_ = merge_within(std::move(vertices), eps);
  std::sort(vertices_.begin(), vertices_.end(),
            [](const Multivertex& a, const Multivertex& b) {
              return lex_less(a.position, b.position);
            });
  total_cardinality_ = 0;
  for (const auto& v : vertices_) total_cardinality_ += v.cardinality;
}

Pattern Pattern::from_points(std::span<const Point> points, double eps) {
  std::vector<Multivertex> vs;
  vs.reserve(points.size());
  for (const auto& p : points) vs.push_back({p, 1});
  return Pattern(std::move(vs), eps);
}

std::vector<Point> Pattern::positions() const {
  std::vector<Point> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(v.position);
  return out;
}

bool Pattern::same_multiset(const Pattern& other, double eps) const {
  if (vertices_.size() != other.vertices_.size()) return false;
  if (total_cardinality_ != other.total_cardinality_) return false;
  std::vector<bool> used(other.vertices_.size(), false);
  for (const auto& v : vertices_) {
    bool found = false;
    for (std::size_t j = 0; j < other.vertices_.size(); ++j) {
      if (used[j]) continue;
      if (other.vertices_[j].cardinality == v.cardinality &&
          almost_equal(other.vertices_[j].position, v.position, eps)) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool operator==(const PatternClass& a, const PatternClass& b) {
  return a.tag == b.tag && a.collinear == b.collinear;
}

namespace {

// Accept points on the boundary with a hair of slack so the recursion is
// stable against rounding; callers compare radii at far looser tolerances.
bool in_circle(const Circle& c, const Point& p) {
  return dist(c.center, p) <= c.radius * (1.0 + 1e-12) + 1e-12;
}

Circle circle_two(const Point& a, const Point& b) {
  return {{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}, 0.5 * dist(a, b)};
}

Circle circle_three(const Point& a, const Point& b, const Point& c) {
  // Circumcircle via the perpendicular-bisector linear system, translated by
  // `a` for stability. Degenerate (collinear) triples fall back to the widest
  // two-point circle.
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  const double span = std::max({dist(a, b), dist(b, c), dist(a, c)});
  if (std::abs(d) <= 1e-14 * span * span) {
    Circle best = circle_two(a, b);
    for (const Circle& cand : {circle_two(a, c), circle_two(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / d;
  const double uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / d;
  const Point center{a.x + ux, a.y + uy};
  return {center, dist(center, a)};
}

Circle sec_with_boundary(std::span<const Point> pts, std::vector<Point>& boundary) {
  if (boundary.size() == 3) {
    return circle_three(boundary[0], boundary[1], boundary[2]);
  }
  if (pts.empty()) {
    switch (boundary.size()) {
      case 0: return {{0.0, 0.0}, 0.0};
      case 1: return {boundary[0], 0.0};
      default: return circle_two(boundary[0], boundary[1]);
    }
  }
  const Point p = pts.back();
  const Circle c = sec_with_boundary(pts.first(pts.size() - 1), boundary);
  if (!boundary.empty() || pts.size() > 1) {
    if (in_circle(c, p)) return c;
  }
  boundary.push_back(p);
  Circle refined = sec_with_boundary(pts.first(pts.size() - 1), boundary);
  boundary.pop_back();
  return refined;
}

}  // namespace

Circle sec(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  // Deduplicate exact copies to keep the recursion shallow.
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) { return a == b; }),
            pts.end());
  std::vector<Point> boundary;
  return sec_with_boundary(pts, boundary);
}

Circle sec(const Pattern& p) {
  const auto pos = p.positions();
  return sec(std::span<const Point>(pos));
}

namespace {

bool all_collinear(const std::vector<Point>& pts, double eps) {
  if (pts.size() <= 2) return true;
  // Line through the two farthest-apart points; everything else must lie
  // within eps of it.
  std::size_t ia = 0, ib = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = dist(pts[i], pts[j]);
      if (d > best) {
        best = d;
        ia = i;
        ib = j;
      }
    }
  }
  if (best <= eps) return true;  // everything coincides
  const Point dir = pts[ib] - pts[ia];
  const double len = norm(dir);
  for (const auto& p : pts) {
    const double off = std::abs(cross(dir, p - pts[ia])) / len;
    if (off > eps) return false;
  }
  return true;
}

}  // namespace

PatternClass classify(const Pattern& p, double eps) {
  const auto pos = p.positions();
  const bool collinear = all_collinear(pos, eps);
  PatternClass out;
  out.collinear = collinear;
  switch (pos.size()) {
    case 0:
      throw std::invalid_argument("empty pattern");
    case 1:
      out.tag = PatternTag::point;
      break;
    case 2:
      out.tag = PatternTag::two_points;
      break;
    case 3:
      // A degenerate (collinear) triple behaves like a line pattern: the
      // triangle machinery downstream has no apex to work with.
      out.tag = collinear ? PatternTag::n_points : PatternTag::three_points;
      break;
    default:
      out.tag = PatternTag::n_points;
      break;
  }
  return out;
}

namespace {

struct NormalizedVertex {
  Point position;  // enclosing circle mapped to center (0,0), radius 1
  int cardinality;
};

std::vector<NormalizedVertex> normalize(const Pattern& p, const Circle& c) {
  std::vector<NormalizedVertex> out;
  out.reserve(p.size());
  for (const auto& v : p.vertices()) {
    out.push_back({{(v.position.x - c.center.x) / c.radius,
                    (v.position.y - c.center.y) / c.radius},
                   v.cardinality});
  }
  return out;
}

bool normalized_match(const std::vector<NormalizedVertex>& a,
                      const std::vector<NormalizedVertex>& b,
                      const Similarity& linear, double eps) {
  std::vector<bool> used(b.size(), false);
  for (const auto& v : a) {
    const Point image = linear(v.position);
    bool found = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      if (b[j].cardinality == v.cardinality &&
          almost_equal(b[j].position, image, eps)) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::optional<Similarity> similar(const Pattern& a, const Pattern& b, double eps) {
  if (a.total_cardinality() != b.total_cardinality()) {
    throw std::invalid_argument("patterns differ in total cardinality");
  }
  if (a.size() != b.size()) return std::nullopt;
  if (a.size() == 0) return std::nullopt;

  // Cardinality multisets must agree.
  auto cards = [](const Pattern& p) {
    std::vector<int> cs;
    for (const auto& v : p.vertices()) cs.push_back(v.cardinality);
    std::sort(cs.begin(), cs.end());
    return cs;
  };
  if (cards(a) != cards(b)) return std::nullopt;

  if (a.size() == 1) {
    Similarity t;
    t.translation = b.vertices()[0].position - a.vertices()[0].position;
    return t;
  }

  const Circle ca = sec(a);
  const Circle cb = sec(b);
  const auto na = normalize(a, ca);
  const auto nb = normalize(b, cb);

  // Reference: first vertex of `a` on the unit circle (canonical order makes
  // this deterministic).
  std::size_t ref = na.size();
  for (std::size_t i = 0; i < na.size(); ++i) {
    if (std::abs(norm(na[i].position) - 1.0) <= eps) {
      ref = i;
      break;
    }
  }
  if (ref == na.size()) return std::nullopt;  // cannot happen for valid SEC

  const double ref_angle = std::atan2(na[ref].position.y, na[ref].position.x);
  for (std::size_t j = 0; j < nb.size(); ++j) {
    if (nb[j].cardinality != na[ref].cardinality) continue;
    if (std::abs(norm(nb[j].position) - 1.0) > eps) continue;
    const double tgt_angle = std::atan2(nb[j].position.y, nb[j].position.x);
    for (bool refl : {false, true}) {
      Similarity linear;
      linear.reflect = refl;
      linear.rotation = refl ? (tgt_angle + ref_angle) : (tgt_angle - ref_angle);
      if (!normalized_match(na, nb, linear, eps)) continue;
      // Witness on original coordinates:
      //   T(center_b) ∘ scale(Rb) ∘ linear ∘ scale(1/Ra) ∘ T(−center_a)
      Similarity t;
      t.scale = cb.radius / ca.radius;
      t.rotation = linear.rotation;
      t.reflect = refl;
      t.translation = {0.0, 0.0};
      const Point image_of_ca = t(ca.center);
      t.translation = cb.center - image_of_ca;
      return t;
    }
  }
  return std::nullopt;
}

Pattern apply(const Similarity& t, const Pattern& p) {
  std::vector<Multivertex> vs;
  vs.reserve(p.size());
  for (const auto& v : p.vertices()) vs.push_back({t(v.position), v.cardinality});
  return Pattern(std::move(vs));
}

}  // namespace dancing
