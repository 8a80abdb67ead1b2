#include "dancing/chiral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dancing/ranking.hpp"

namespace dancing {
namespace {

using Complex = std::complex<double>;

Complex to_complex(const Point& p) { return {p.x, p.y}; }
Point to_point(const Complex& z) { return {z.real(), z.imag()}; }

// Relative "greater or equal" for edge lengths: ties within eps of the
// larger magnitude count as equal.
bool geq_rel(double a, double b, double eps) {
  return a >= b - eps * std::max({std::abs(a), std::abs(b), 1e-300});
}

struct MirrorMap {
  Point origin;        // nu1
  Complex factor;      // scale * rotation
  bool mirrored = false;

  Point operator()(const Complex& z) const {
    const Complex w = mirrored ? std::conj(z) : z;
    return to_point(to_complex(origin) + factor * w);
  }
};

struct SourceData {
  std::vector<Complex> z;  // vertices normalized to the unit enclosing circle
  std::vector<int> card;
  Ranking ranking;
  bool collinear = false;
};

SourceData normalize_source(const Pattern& pi_i) {
  SourceData d;
  const Circle c = sec(pi_i);
  d.z.reserve(pi_i.size());
  d.card.reserve(pi_i.size());
  for (const auto& mv : pi_i.vertices()) {
    d.z.push_back(Complex{(mv.position.x - c.center.x) / c.radius,
                          (mv.position.y - c.center.y) / c.radius});
    d.card.push_back(mv.cardinality);
  }
  d.ranking = rank(pi_i);
  d.collinear = classify(pi_i).collinear;
  return d;
}

MirrorMap build_map(const Point& nu1, const Point& nu2, const Complex& unit,
                    bool mirrored) {
  const Complex pinned = mirrored ? std::conj(unit) : unit;
  return {nu1, (to_complex(nu2) - to_complex(nu1)) / pinned, mirrored};
}

// Anchor multivertices admissible for the orientation marker, after the full
// tie chain: closest image to nu2, then lowest ranking class, then smallest
// cardinality.
std::vector<std::size_t> anchor_candidates(const SourceData& src,
                                           const MirrorMap& tau,
                                           const Point& nu1, const Point& nu2,
                                           double tol) {
  const Point axis = nu2 - nu1;
  const double axis_len = norm(axis);
  std::vector<std::size_t> eligible;
  for (std::size_t j = 0; j < src.z.size(); ++j) {
    const Point img = tau(src.z[j]);
    if (src.collinear) {
      if (dist(img, nu1) > tol && dist(img, nu2) > tol) eligible.push_back(j);
    } else {
      if (std::abs(cross(axis, img - nu1)) > tol * axis_len) {
        eligible.push_back(j);
      }
    }
  }
  if (eligible.empty()) return eligible;

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j : eligible) best = std::min(best, dist(tau(src.z[j]), nu2));
  std::erase_if(eligible, [&](std::size_t j) {
    return dist(tau(src.z[j]), nu2) > best + tol;
  });

  std::size_t best_class = std::numeric_limits<std::size_t>::max();
  for (std::size_t j : eligible) {
    best_class = std::min(best_class, src.ranking.class_of(j));
  }
  std::erase_if(eligible, [&](std::size_t j) {
    return src.ranking.class_of(j) != best_class;
  });

  int best_card = std::numeric_limits<int>::max();
  for (std::size_t j : eligible) best_card = std::min(best_card, src.card[j]);
  std::erase_if(eligible,
                [&](std::size_t j) { return src.card[j] != best_card; });
  return eligible;  // kept in ascending vertex order
}

struct ManyVertexResolution {
  bool valid = false;
  std::vector<Multivertex> image;
};

// Finds a (first-class pin, mirror) pair whose admissible anchor image holds
// nu3, and returns the full resolved vertex set.
ManyVertexResolution resolve_many(const ChiralAngle& ca, const Pattern& pi_i,
                                  double tol) {
  ManyVertexResolution out;
  if (dist(ca.nu1, ca.nu2) <= tol || dist(ca.nu1, ca.nu3) <= tol ||
      dist(ca.nu2, ca.nu3) <= tol) {
    return out;
  }
  if (dist(ca.nu1, ca.nu3) > dist(ca.nu1, ca.nu2) + tol) return out;
  const SourceData src = normalize_source(pi_i);
  for (std::size_t pin : src.ranking.classes.front()) {
    for (bool mirrored : {false, true}) {
      const MirrorMap tau = build_map(ca.nu1, ca.nu2, src.z[pin], mirrored);
      bool anchored = false;
      for (std::size_t j : anchor_candidates(src, tau, ca.nu1, ca.nu2, tol)) {
        if (dist(tau(src.z[j]), ca.nu3) <= tol) {
          anchored = true;
          break;
        }
      }
      if (!anchored) continue;
      out.valid = true;
      out.image.reserve(src.z.size());
      for (std::size_t j = 0; j < src.z.size(); ++j) {
        out.image.push_back({tau(src.z[j]), src.card[j]});
      }
      return out;
    }
  }
  return out;
}

bool classes_match(const PatternClass& a, const PatternClass& b) {
  if (a.tag != b.tag) return false;
  if (a.tag == PatternTag::n_points) return a.collinear == b.collinear;
  return true;
}

}  // namespace

Circle supporting_circle(const ChiralAngle& ca) {
  return {ca.nu1, dist(ca.nu1, ca.nu2)};
}

ThreeLabels three_point_labels(const Pattern& target, double eps) {
  if (target.size() != 3) {
    throw std::invalid_argument(
        "three-vertex labeling requires exactly three multivertices");
  }
  const auto& vs = target.vertices();
  auto d = [&](std::size_t a, std::size_t b) {
    return dist(vs[a].position, vs[b].position);
  };
  bool found = false;
  ThreeLabels best{0, 1, 2};
  std::array<int, 3> best_cards{};
  std::array<std::size_t, 3> perm{0, 1, 2};
  std::sort(perm.begin(), perm.end());
  do {
    const double d12 = d(perm[0], perm[1]);
    const double d13 = d(perm[0], perm[2]);
    const double d23 = d(perm[1], perm[2]);
    if (!geq_rel(d12, d13, eps) || !geq_rel(d13, d23, eps)) continue;
    const std::array<int, 3> cards{vs[perm[0]].cardinality,
                                   vs[perm[1]].cardinality,
                                   vs[perm[2]].cardinality};
    if (!found || cards > best_cards) {
      found = true;
      best = {perm[0], perm[1], perm[2]};
      best_cards = cards;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;  // a distance-sorted labeling always exists
}

Point compute_nu1(const Pattern& configuration, const Point& lambda1,
                  double eps) {
  if (classify(configuration, eps).tag == PatternTag::n_points) {
    return sec(configuration).center;
  }
  return lambda1;
}

Point compute_nu2(const Pattern& pi_i, const Point& nu1, const Point& lambda2,
                  const Point& lambda2_local_up, double tol) {
  if (classify(pi_i).tag == PatternTag::point) return nu1;
  if (dist(lambda2, nu1) > tol) return lambda2;
  return lambda2_local_up;
}

Point compute_nu3(const Pattern& pi_i, const Point& nu1, const Point& nu2,
                  double tol, int prefer_side) {
  const PatternClass cls = classify(pi_i);
  if (cls.tag == PatternTag::point || cls.tag == PatternTag::two_points) {
    return nu1;
  }
  const double side = prefer_side < 0 ? -1.0 : 1.0;

  if (cls.tag == PatternTag::three_points) {
    const ThreeLabels labels = three_point_labels(pi_i);
    const auto& vs = pi_i.vertices();
    const Complex p1 = to_complex(vs[labels.v1].position);
    const Complex p2 = to_complex(vs[labels.v2].position);
    const Complex p3 = to_complex(vs[labels.v3].position);
    Point pick{};
    double pick_side = -std::numeric_limits<double>::infinity();
    for (bool mirrored : {false, true}) {
      const MirrorMap tau = build_map(nu1, nu2, p2 - p1, mirrored);
      const Point candidate = tau(p3 - p1);
      const double s = side * cross(nu2 - nu1, candidate - nu1);
      if (s > pick_side) {
        pick_side = s;
        pick = candidate;
      }
    }
    return pick;
  }

  // Many-vertex target: anchor image under the pinning map.
  const SourceData src = normalize_source(pi_i);
  const std::size_t pin = src.ranking.classes.front().front();
  Point pick{};
  double pick_side = -std::numeric_limits<double>::infinity();
  for (bool mirrored : {false, true}) {
    const MirrorMap tau = build_map(nu1, nu2, src.z[pin], mirrored);
    const std::vector<std::size_t> anchors =
        anchor_candidates(src, tau, nu1, nu2, tol);
    if (anchors.empty()) continue;
    const Point candidate = tau(src.z[anchors.front()]);
    const double s = side * cross(nu2 - nu1, candidate - nu1);
    if (s > pick_side) {
      pick_side = s;
      pick = candidate;
    }
  }
  return pick;
}

bool is_chiral_angle(const ChiralAngle& ca, const Pattern& pi_i, double tol) {
  const PatternClass cls = classify(pi_i);
  if (!classes_match(cls, ca.pattern_class)) return false;
  switch (cls.tag) {
    case PatternTag::point:
      return dist(ca.nu1, ca.nu2) <= tol && dist(ca.nu1, ca.nu3) <= tol &&
             dist(ca.nu2, ca.nu3) <= tol;
    case PatternTag::two_points:
      return dist(ca.nu3, ca.nu1) <= tol && dist(ca.nu1, ca.nu2) > tol;
    case PatternTag::three_points: {
      const double d12 = dist(ca.nu1, ca.nu2);
      const double d13 = dist(ca.nu1, ca.nu3);
      const double d23 = dist(ca.nu2, ca.nu3);
      if (d12 <= tol || d13 <= tol || d23 <= tol) return false;
      const ThreeLabels labels = three_point_labels(pi_i);
      const auto& vs = pi_i.vertices();
      const double s12 = dist(vs[labels.v1].position, vs[labels.v2].position);
      const double s13 = dist(vs[labels.v1].position, vs[labels.v3].position);
      const double s23 = dist(vs[labels.v2].position, vs[labels.v3].position);
      return std::abs(d13 - d12 * (s13 / s12)) <= tol &&
             std::abs(d23 - d12 * (s23 / s12)) <= tol;
    }
    case PatternTag::n_points:
      return resolve_many(ca, pi_i, tol).valid;
  }
  return false;
}

Pattern resolve_target(const ChiralAngle& ca, const Pattern& pi_i,
                       double tol) {
  const PatternClass cls = classify(pi_i);
  if (!is_chiral_angle(ca, pi_i, tol)) {
    throw std::invalid_argument("chiral angle does not define a valid target");
  }
  switch (cls.tag) {
    case PatternTag::point:
      return Pattern({{ca.nu1, pi_i.total_cardinality()}}, 0.0);
    case PatternTag::two_points: {
      const auto& vs = pi_i.vertices();
      const int high = std::max(vs[0].cardinality, vs[1].cardinality);
      const int low = std::min(vs[0].cardinality, vs[1].cardinality);
      return Pattern({{ca.nu1, high}, {ca.nu2, low}}, 0.0);
    }
    case PatternTag::three_points: {
      const ThreeLabels labels = three_point_labels(pi_i);
      const auto& vs = pi_i.vertices();
      return Pattern({{ca.nu1, vs[labels.v1].cardinality},
                      {ca.nu2, vs[labels.v2].cardinality},
                      {ca.nu3, vs[labels.v3].cardinality}},
                     0.0);
    }
    case PatternTag::n_points: {
      const ManyVertexResolution res = resolve_many(ca, pi_i, tol);
      return Pattern(res.image, 0.0);
    }
  }
  throw std::invalid_argument("chiral angle does not define a valid target");
}

}  // namespace dancing
