#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace testsup {

using dancing::Circle;
using dancing::Point;

// ---------------------------------------------------------------------------
// Randomness

double uniform(Rng& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Point random_point(Rng& rng, double extent) {
  const double r = extent * std::sqrt(uniform(rng, 0.0, 1.0));
  const double a = uniform(rng, 0.0, 2.0 * M_PI);
  return {r * std::cos(a), r * std::sin(a)};
}

dancing::Similarity random_similarity(Rng& rng, double scale_span,
                                      double extent) {
  dancing::Similarity t;
  t.scale = std::exp(uniform(rng, -std::log(scale_span), std::log(scale_span)));
  t.rotation = uniform(rng, 0.0, 2.0 * M_PI);
  t.reflect = (rng() & 1) != 0;
  t.translation = random_point(rng, extent);
  return t;
}

// ---------------------------------------------------------------------------
// Geometry oracles

namespace {

bool contains_all(const Circle& c, const std::vector<Point>& pts,
                  double slack) {
  for (const Point& p : pts) {
    if (dancing::dist(p, c.center) > c.radius + slack) return false;
  }
  return true;
}

// Circumcircle of three points; radius < 0 marks a (near-)degenerate triple.
Circle circumcircle(const Point& a, const Point& b, const Point& c) {
  const double d =
      2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  if (std::fabs(d) < 1e-300) return {Point{0, 0}, -1.0};
  const double a2 = a.x * a.x + a.y * a.y;
  const double b2 = b.x * b.x + b.y * b.y;
  const double c2 = c.x * c.x + c.y * c.y;
  Point o{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
          (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
  return {o, dancing::dist(o, a)};
}

}  // namespace

Circle brute_sec(const std::vector<Point>& pts) {
  if (pts.empty()) throw std::invalid_argument("brute_sec: empty input");
  const double scale = [&] {
    double m = 1e-12;
    for (const Point& p : pts) {
      m = std::max({m, std::fabs(p.x), std::fabs(p.y)});
    }
    return m;
  }();
  const double slack = 1e-9 * scale;

  Circle best{pts.front(), 0.0};
  bool found = contains_all(best, pts, slack);
  auto consider = [&](const Circle& c) {
    if (c.radius < 0) return;
    if (!contains_all(c, pts, slack)) return;
    if (!found || c.radius < best.radius) {
      best = c;
      found = true;
    }
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      consider({{0.5 * (pts[i].x + pts[j].x), 0.5 * (pts[i].y + pts[j].y)},
                0.5 * dancing::dist(pts[i], pts[j])});
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        consider(circumcircle(pts[i], pts[j], pts[k]));
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Combinatorics oracles

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::int64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j >= 1; --j) row[static_cast<std::size_t>(j)] += row[j - 1];
  }
  return row[static_cast<std::size_t>(k)];
}

std::vector<std::vector<int>> all_compositions(int m, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(parts), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == parts - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (parts > 0) rec(rec, 0, m);
  return out;
}

// ---------------------------------------------------------------------------
// Balanced-string oracles

bool balanced_oracle(const std::string& bits) {
  long zeros = std::count(bits.begin(), bits.end(), '0');
  return 2 * zeros == static_cast<long>(bits.size());
}

bool dyck_oracle(const std::string& bits) {
  long depth = 0;
  for (char c : bits) {
    depth += c == '0' ? 1 : -1;
    if (depth < 0) return false;
  }
  return depth == 0;
}

std::vector<std::string> all_bitstrings(std::size_t length) {
  std::vector<std::string> out;
  out.reserve(std::size_t{1} << length);
  for (std::size_t mask = 0; mask < (std::size_t{1} << length); ++mask) {
    std::string s(length, '0');
    for (std::size_t i = 0; i < length; ++i) {
      if (mask & (std::size_t{1} << i)) s[i] = '1';
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> all_balanced(std::size_t length) {
  std::vector<std::string> out;
  for (auto& s : all_bitstrings(length)) {
    if (balanced_oracle(s)) out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> all_dyck(std::size_t length) {
  std::vector<std::string> out;
  for (auto& s : all_bitstrings(length)) {
    if (dyck_oracle(s)) out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> stack_matching(
    const std::string& bits) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '0') {
      stack.push_back(i + 1);
    } else {
      if (stack.empty()) throw std::invalid_argument("stack_matching: not Dyck");
      pairs.emplace_back(stack.back(), i + 1);
      stack.pop_back();
    }
  }
  if (!stack.empty()) throw std::invalid_argument("stack_matching: not Dyck");
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

// ---------------------------------------------------------------------------
// Pattern builders

dancing::Pattern make_pattern(const std::vector<VertexSpec>& vs) {
  std::vector<dancing::Multivertex> mv;
  mv.reserve(vs.size());
  for (const auto& v : vs) mv.push_back({{v.x, v.y}, v.cardinality});
  return dancing::Pattern(mv, 1e-9);
}

namespace {

bool well_separated(const std::vector<dancing::Multivertex>& mv,
                    const Point& p, double min_gap) {
  for (const auto& v : mv) {
    if (dancing::dist(v.position, p) < min_gap) return false;
  }
  return true;
}

}  // namespace

dancing::Pattern random_point_pattern(Rng& rng) {
  return dancing::Pattern({{random_point(rng), uniform_int(rng, 1, 6)}}, 1e-9);
}

dancing::Pattern random_two_points_pattern(Rng& rng) {
  Point a = random_point(rng);
  Point b;
  do {
    b = random_point(rng);
  } while (dancing::dist(a, b) < 0.1);
  return dancing::Pattern(
      {{a, uniform_int(rng, 1, 4)}, {b, uniform_int(rng, 1, 4)}}, 1e-9);
}

dancing::Pattern random_three_points_pattern(Rng& rng) {
  while (true) {
    Point a = random_point(rng);
    Point b = random_point(rng);
    Point c = random_point(rng);
    const double area =
        std::fabs(dancing::cross(b - a, c - a));
    if (dancing::dist(a, b) < 0.1 || dancing::dist(a, c) < 0.1 ||
        dancing::dist(b, c) < 0.1 || area < 0.05) {
      continue;
    }
    return dancing::Pattern({{a, uniform_int(rng, 1, 4)},
                             {b, uniform_int(rng, 1, 4)},
                             {c, uniform_int(rng, 1, 4)}},
                            1e-9);
  }
}

dancing::Pattern random_npoints_pattern(Rng& rng, int max_vertices,
                                        bool collinear) {
  const int count = collinear ? uniform_int(rng, 4, max_vertices)
                              : uniform_int(rng, 4, max_vertices);
  std::vector<dancing::Multivertex> mv;
  if (collinear) {
    // Distinct abscissas on a random line through the origin.
    const double angle = uniform(rng, 0.0, 2.0 * M_PI);
    const Point dir{std::cos(angle), std::sin(angle)};
    while (static_cast<int>(mv.size()) < count) {
      const double t = uniform(rng, -1.0, 1.0);
      const Point p{t * dir.x, t * dir.y};
      if (!well_separated(mv, p, 0.05)) continue;
      mv.push_back({p, uniform_int(rng, 1, 3)});
    }
  } else {
    while (static_cast<int>(mv.size()) < count) {
      const Point p = random_point(rng);
      if (!well_separated(mv, p, 0.05)) continue;
      mv.push_back({p, uniform_int(rng, 1, 3)});
    }
  }
  dancing::Pattern p(mv, 1e-9);
  // General position can still collapse to a line for non-collinear draws;
  // redraw in that (vanishingly rare) case.
  if (!collinear && dancing::classify(p).collinear) {
    return random_npoints_pattern(rng, max_vertices, false);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Reference choreographies

dancing::ChoreographyFile showcase_choreography() {
  dancing::ChoreographyFile file;
  file.n = 8;
  file.k = 5;
  file.choreography.periodic = false;
  file.choreography.patterns = {
      // Many-vertex: compass vertices pin the enclosing circle; one interior
      // vertex near the center stays reachable for the first leader.
      make_pattern({{1, 0, 2}, {0, 1, 2}, {-1, 0, 1}, {0, -1, 2}, {0.2, 0.1, 1}}),
      // Two vertices, distinct multiplicities.
      make_pattern({{0, 0, 5}, {1, 0, 3}}),
      // Scalene triangle.
      make_pattern({{0, 0, 3}, {1, 0, 3}, {0.2, 0.7, 2}}),
      // A second many-vertex shape, not similar to the first.
      make_pattern({{1, 0, 1},
                    {0, 1, 1},
                    {-1, 0, 1},
                    {0, -1, 1},
                    {0.25, 0.25, 2},
                    {-0.3, 0.1, 2}}),
      // A line with irregular spacing.
      make_pattern({{0, 0, 2}, {1, 0, 2}, {2, 0, 2}, {3.5, 0, 2}}),
      // Final gather.
      make_pattern({{0, 0, 8}}),
  };
  return file;
}

dancing::ChoreographyFile periodic_choreography() {
  dancing::ChoreographyFile file;
  file.n = 7;
  file.k = 5;
  file.choreography.periodic = true;
  file.choreography.patterns = {
      make_pattern({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}, {0.2, 0.1, 3}}),
      make_pattern({{0, 0, 4}, {1, 0, 3}}),
      // Obtuse so the rewind's two same-colored markers stay distinguishable
      // (one on the configuration's enclosing circle, one strictly inside).
      make_pattern({{0, 0, 2}, {1, 0, 3}, {0.8, 0.35, 2}}),
  };
  return file;
}

dancing::Configuration scatter(int n, std::uint64_t seed) {
  Rng rng(seed);
  dancing::Configuration c;
  c.robots.reserve(static_cast<std::size_t>(n));
  while (c.robots.size() < static_cast<std::size_t>(n)) {
    const Point p = random_point(rng);
    bool dup = false;
    for (const auto& r : c.robots) {
      if (r.position == p) dup = true;
    }
    if (!dup) c.robots.push_back({p, 1});
  }
  return c;
}

}  // namespace testsup
