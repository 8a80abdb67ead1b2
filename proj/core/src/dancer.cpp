#include "dancing/dancer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dancing/counter.hpp"
#include "dancing/dyck.hpp"

namespace dancing {

namespace {

// ---------------------------------------------------------------------------
// Shared geometry helpers.

double dist_point_segment(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return dist(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, Point{a.x + t * ab.x, a.y + t * ab.y});
}

bool on_segment(const Point& p, const Point& a, const Point& b, double tol) {
  return dist_point_segment(p, a, b) <= tol;
}

// Angle of p around origin, measured from the direction origin->axis_to and
// swept toward the side where side_sign says the reference vertex lies.
// Result in [0, 2*pi); points on the axis direction itself map to 0.
double sweep_angle(const Point& origin, const Point& axis_to, const Point& p,
                   double side_sign, double tol) {
  const Point u = p - origin;
  if (norm(u) <= tol) return 0.0;
  const Point e = axis_to - origin;
  double phi = std::atan2(cross(e, u), dot(e, u));
  if (side_sign < 0.0) phi = -phi;
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return phi;
}

// Gray-ordered counter lists are pure functions of (population, colors);
// cache them because every activation reads the counter.
const GrayList& cached_gray_list(int population, int colors) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, GrayList> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(population, colors);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, gray_list(population, colors)).first;
  }
  return it->second;
}

// ---------------------------------------------------------------------------
// Snapshot context: analysis plus the resolved target, built once per call.

struct Context {
  const Snapshot* snap = nullptr;
  const Palette* pal = nullptr;
  SnapshotAnalysis a;
  std::vector<Point> positions;
  Pattern config;          // observed positions merged at tolerance
  PatternClass config_class{};
  Circle config_circle{};  // smallest enclosing circle of the observed swarm
  Pattern resolved;        // target image; meaningful iff a.has_angle
  double tol = 0.0;

  const RobotState& self() const { return snap->observed[snap->self_index]; }
  bool is_self(std::size_t i) const { return i == snap->self_index; }
  Point pos(std::size_t i) const { return snap->observed[i].position; }
  int color(std::size_t i) const { return snap->observed[i].color; }
  bool leader(std::size_t i) const { return pal->is_leader(color(i)); }

  Action stay() const { return Action{self().position, self().color}; }
  Action stay_with(int c) const { return Action{self().position, c}; }
  Action move_to(const Point& p) const { return Action{p, self().color}; }
};

// Robots within tolerance of a point.
int robots_at(const Context& ctx, const Point& p, bool leaders_too) {
  int count = 0;
  for (std::size_t i = 0; i < ctx.snap->observed.size(); ++i) {
    if (!leaders_too && ctx.leader(i)) continue;
    if (dist(ctx.pos(i), p) <= ctx.tol) ++count;
  }
  return count;
}

Context build_context(const Snapshot& s, const Palette& palette) {
  if (s.observed.empty() || s.self_index >= s.observed.size() ||
      s.pattern_input.empty()) {
    throw std::invalid_argument("snapshot is malformed");
  }
  Context ctx;
  ctx.snap = &s;
  ctx.pal = &palette;

  ctx.positions.reserve(s.observed.size());
  for (const RobotState& r : s.observed) {
    if (!palette.valid(r.color)) {
      throw std::runtime_error("corrupt configuration");
    }
    ctx.positions.push_back(r.position);
  }

  // Scale-proportional coincidence tolerance: the analysis must commute with
  // similarity transformations of the whole snapshot.
  ctx.config_circle = sec(ctx.positions);
  double scale = ctx.config_circle.radius;
  for (const Pattern& p : s.pattern_input) {
    scale = std::max(scale, sec(p).radius);
  }
  if (scale <= 0.0) scale = 1.0;
  ctx.tol = kDefaultEps * scale;

  ctx.config = Pattern::from_points(ctx.positions, ctx.tol);
  ctx.config_class = classify(ctx.config);
  ctx.a.tolerance = ctx.tol;

  // Leader census.
  std::vector<std::size_t> l1s, l2s, l3s;
  for (std::size_t i = 0; i < s.observed.size(); ++i) {
    const int c = ctx.color(i);
    if (c == palette.lambda1()) l1s.push_back(i);
    if (c == palette.lambda2()) l2s.push_back(i);
    if (c == palette.lambda3()) l3s.push_back(i);
  }
  if (!l1s.empty()) ctx.a.lambda1 = l1s.front();
  if (!l2s.empty()) ctx.a.lambda2 = l2s.front();
  if (!l3s.empty()) ctx.a.lambda3 = l3s.front();

  const std::size_t c1 = l1s.size(), c2 = l2s.size(), c3 = l3s.size();

  if (c1 == 1 && c2 == 2 && c3 == 0) {
    // The two-marker state that rewinds the counter between periods.
    ctx.a.phase = PhaseId::phase3;
    ctx.a.reset_marker = true;
    return ctx;
  }

  const bool election = (c1 == 0 && c2 == 0 && c3 == 0) ||
                        (c1 == 0 && c2 == 1 && c3 == 0) ||
                        (c1 == 1 && c2 == 1 && c3 == 0);
  if (election) {
    // Before all three leaders exist every other robot is idle-colored.
    for (std::size_t i = 0; i < s.observed.size(); ++i) {
      if (!ctx.leader(i) && ctx.color(i) != palette.off()) {
        throw std::runtime_error("corrupt configuration");
      }
    }
    ctx.a.phase = PhaseId::phase0;
    return ctx;
  }
  if (!(c1 == 1 && c2 == 1 && c3 == 1)) {
    throw std::runtime_error("corrupt configuration");
  }

  // Read the distributed counter from the non-leader colors.
  const int kprime = palette.counter_colors();
  const int population = static_cast<int>(s.observed.size()) - 3;
  std::size_t index = 0;
  if (kprime == 1) {
    index = 0;
  } else {
    CompositionVector comp(static_cast<std::size_t>(kprime), 0);
    for (std::size_t i = 0; i < s.observed.size(); ++i) {
      if (ctx.leader(i)) continue;
      ++comp[static_cast<std::size_t>(ctx.color(i)) - 1];
    }
    const GrayList& list = cached_gray_list(population, kprime);
    index = list.find(comp);
    if (index == GrayList::npos) {
      throw std::runtime_error("corrupt configuration");
    }
  }
  if (index >= s.pattern_input.size()) {
    throw std::runtime_error("corrupt configuration");
  }
  ctx.a.counter_index = index;

  const Pattern& target = s.pattern_input[index];
  const PatternClass target_class = classify(target);

  const Point p1 = ctx.pos(ctx.a.lambda1);
  const Point p2 = ctx.pos(ctx.a.lambda2);
  const Point p3 = ctx.pos(ctx.a.lambda3);

  // Candidate A: the angle spanned by the three leader markers directly.
  ChiralAngle angle_a{p1, p2, p3, target_class};
  bool valid = is_chiral_angle(angle_a, target, ctx.tol);
  if (valid) {
    ctx.a.has_angle = true;
    ctx.a.angle = angle_a;
  } else if (target_class.tag == PatternTag::n_points) {
    // Candidate B: while the first leader walks from the circle center to
    // its final vertex, the center itself still anchors the angle.
    ChiralAngle angle_b{ctx.config_circle.center, p2, p3, target_class};
    if (is_chiral_angle(angle_b, target, ctx.tol)) {
      ctx.a.has_angle = true;
      ctx.a.angle = angle_b;
      valid = true;
    }
  }

  if (valid) {
    ctx.resolved = resolve_target(ctx.a.angle, target, ctx.tol);
    ctx.a.formed = ctx.config.same_multiset(ctx.resolved, ctx.tol);
  }

  if (ctx.a.formed) {
    const bool last = (index + 1 == s.pattern_input.size());
    ctx.a.phase = (last && !s.periodic) ? PhaseId::done : PhaseId::phase3;
  } else if (valid) {
    ctx.a.phase = PhaseId::phase2;
  } else {
    ctx.a.phase = PhaseId::phase1;
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Phase 0: leader election by color only; nobody moves.

Action phase0_impl(const Context& ctx) {
  const Palette& pal = *ctx.pal;
  const Snapshot& s = *ctx.snap;
  if (ctx.self().color != pal.off()) return ctx.stay();

  const std::size_t c1 = ctx.a.lambda1 == kNoRobot ? 0 : 1;
  const std::size_t c2 = ctx.a.lambda2 == kNoRobot ? 0 : 1;
  const Point self_pos = ctx.self().position;

  if (c1 == 0 && c2 == 0) {
    // Second leader first: it must end up on the boundary structure that
    // later carries the supporting circle.
    if (ctx.config_class.tag != PatternTag::three_points) {
      const double gap =
          std::fabs(dist(self_pos, ctx.config_circle.center) -
                    ctx.config_circle.radius);
      if (gap <= ctx.tol) return ctx.stay_with(pal.lambda2());
      return ctx.stay();
    }
    // Three occupied points: volunteer when sitting on a longest edge.
    const auto& vs = ctx.config.vertices();
    double longest = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        longest = std::max(longest, dist(vs[i].position, vs[j].position));
      }
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        if (dist(vs[i].position, vs[j].position) + ctx.tol < longest) continue;
        if (on_segment(self_pos, vs[i].position, vs[j].position, ctx.tol)) {
          return ctx.stay_with(pal.lambda2());
        }
      }
    }
    return ctx.stay();
  }

  if (c1 == 0 && c2 == 1) {
    const Point lp2 = ctx.pos(ctx.a.lambda2);
    switch (ctx.config_class.tag) {
      case PatternTag::point:
        return ctx.stay_with(pal.lambda1());
      case PatternTag::two_points: {
        // The other occupied point.
        for (const Multivertex& v : ctx.config.vertices()) {
          if (dist(v.position, lp2) <= ctx.tol) continue;
          if (dist(self_pos, v.position) <= ctx.tol) {
            return ctx.stay_with(pal.lambda1());
          }
        }
        return ctx.stay();
      }
      case PatternTag::three_points: {
        // Other endpoint of a longest edge through the second leader.
        const auto& vs = ctx.config.vertices();
        double longest = 0.0;
        for (std::size_t i = 0; i < vs.size(); ++i) {
          for (std::size_t j = i + 1; j < vs.size(); ++j) {
            longest = std::max(longest, dist(vs[i].position, vs[j].position));
          }
        }
        for (std::size_t i = 0; i < vs.size(); ++i) {
          for (std::size_t j = i + 1; j < vs.size(); ++j) {
            if (dist(vs[i].position, vs[j].position) + ctx.tol < longest) {
              continue;
            }
            const Point& pa = vs[i].position;
            const Point& pb = vs[j].position;
            const bool a_is_l2 = dist(pa, lp2) <= ctx.tol;
            const bool b_is_l2 = dist(pb, lp2) <= ctx.tol;
            if (a_is_l2 && dist(self_pos, pb) <= ctx.tol) {
              return ctx.stay_with(pal.lambda1());
            }
            if (b_is_l2 && dist(self_pos, pa) <= ctx.tol) {
              return ctx.stay_with(pal.lambda1());
            }
          }
        }
        return ctx.stay();
      }
      case PatternTag::n_points: {
        // Closest idle robot to the circle center among positions distinct
        // from the second leader's.
        if (dist(self_pos, lp2) <= ctx.tol) return ctx.stay();
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < s.observed.size(); ++i) {
          if (ctx.color(i) != pal.off()) continue;
          if (dist(ctx.pos(i), lp2) <= ctx.tol) continue;
          best = std::min(best, dist(ctx.pos(i), ctx.config_circle.center));
        }
        if (dist(self_pos, ctx.config_circle.center) <= best + ctx.tol) {
          return ctx.stay_with(pal.lambda1());
        }
        return ctx.stay();
      }
    }
    return ctx.stay();
  }

  // Both earlier leaders exist: any idle robot completes the trio.
  return ctx.stay_with(pal.lambda3());
}

// ---------------------------------------------------------------------------
// Phase 1: the three leaders walk, one after another, to the angle vertices.

Action phase1_impl(const Context& ctx) {
  const Palette& pal = *ctx.pal;
  const int my_color = ctx.self().color;
  if (!pal.is_leader(my_color)) return ctx.stay();

  const Pattern& target = ctx.snap->pattern_input[ctx.a.counter_index];
  const PatternClass target_class = classify(target);
  const Point lp1 = ctx.pos(ctx.a.lambda1);
  const Point lp2 = ctx.pos(ctx.a.lambda2);
  const Point lp3 = ctx.pos(ctx.a.lambda3);
  const Point cen = ctx.config_circle.center;

  // First leader: when the current swarm spans many distinct points its
  // enclosing-circle center is the first vertex (this is what keeps the
  // supporting circles of successive formations concentric); otherwise the
  // first leader's own position is.
  const bool l1_needs_center = ctx.config_class.tag == PatternTag::n_points;
  const bool l1_placed = !l1_needs_center || dist(lp1, cen) <= ctx.tol;
  if (my_color == pal.lambda1()) {
    if (!l1_placed) return ctx.move_to(cen);
    return ctx.stay();
  }
  if (!l1_placed) return ctx.stay();

  const Point nu1 = l1_needs_center ? cen : lp1;

  // Second leader: for a gathering it joins the first vertex; otherwise it
  // must sit away from it (moving one unit along its own vertical when the
  // swarm starts from a single point).
  const bool l2_placed = target_class.tag == PatternTag::point
                             ? dist(lp2, nu1) <= ctx.tol
                             : dist(lp2, nu1) > ctx.tol;
  if (my_color == pal.lambda2()) {
    if (l2_placed) return ctx.stay();
    if (target_class.tag == PatternTag::point) return ctx.move_to(nu1);
    return ctx.move_to(Point{lp2.x, lp2.y + 1.0});
  }
  if (!l2_placed) return ctx.stay();

  // Third leader.
  const Point nu2 = target_class.tag == PatternTag::point ? nu1 : lp2;
  Point nu3 = nu1;
  if (target_class.tag == PatternTag::three_points ||
      target_class.tag == PatternTag::n_points) {
    // Keep to the side of the base line where this leader already stands.
    const double s = cross(nu2 - nu1, lp3 - nu1);
    const int side = (std::fabs(s) <= ctx.tol * dist(nu1, nu2) || s > 0.0)
                         ? 1
                         : -1;
    nu3 = compute_nu3(target, nu1, nu2, ctx.tol, side);
  }
  if (my_color == pal.lambda3() && dist(lp3, nu3) > ctx.tol) {
    return ctx.move_to(nu3);
  }
  return ctx.stay();
}

// ---------------------------------------------------------------------------
// Phase 2 for few-vertex targets: fill multivertices by saturation.

Action phase2_few_impl(const Context& ctx) {
  const Palette& pal = *ctx.pal;
  if (pal.is_leader(ctx.self().color)) return ctx.stay();

  const ChiralAngle& angle = ctx.a.angle;
  if (angle.pattern_class.tag == PatternTag::point) {
    if (dist(ctx.self().position, angle.nu1) <= ctx.tol) return ctx.stay();
    return ctx.move_to(angle.nu1);
  }

  // Per-vertex residual demand once the leaders standing there are counted.
  struct Slot {
    Point at;
    int residual = 0;
    int occupants = 0;  // non-leaders within tolerance
  };
  std::vector<Slot> slots;
  for (const Multivertex& v : ctx.resolved.vertices()) {
    Slot slot;
    slot.at = v.position;
    slot.residual = v.cardinality;
    for (std::size_t li : {ctx.a.lambda1, ctx.a.lambda2, ctx.a.lambda3}) {
      if (dist(ctx.pos(li), v.position) <= ctx.tol) --slot.residual;
    }
    slot.occupants = robots_at(ctx, v.position, false);
    slots.push_back(slot);
  }

  const Point self_pos = ctx.self().position;
  for (const Slot& slot : slots) {
    if (dist(self_pos, slot.at) <= ctx.tol && slot.occupants <= slot.residual) {
      return ctx.stay();
    }
  }

  const double side3 = cross(angle.nu2 - angle.nu1, angle.nu3 - angle.nu1);
  const double side_sign = side3 >= 0.0 ? 1.0 : -1.0;
  std::optional<std::size_t> best;
  std::array<double, 4> best_key{};
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].occupants >= slots[i].residual) continue;
    const std::array<double, 4> key{
        dist(self_pos, slots[i].at),
        sweep_angle(angle.nu1, angle.nu2, slots[i].at, side_sign, ctx.tol),
        static_cast<double>(ctx.resolved.vertices()[i].cardinality),
        dist(slots[i].at, angle.nu2)};
    if (!best || key < best_key) {
      best = i;
      best_key = key;
    }
  }
  if (best) return ctx.move_to(slots[*best].at);
  return ctx.stay();
}

// ---------------------------------------------------------------------------
// Phase 2 for many-vertex targets: vertical drop, sliding along the main
// diameter with bracket matching, vertical rise, and the first leader's final
// walk to the reserved vertex.

struct ManyContext {
  Point nu1, nu2, nu3;
  Point axis_unit;        // from nu2 through nu1 toward the far diameter end
  Point far_end;          // the diameter point opposite nu2
  double diameter = 0.0;
  double side_sign = 1.0;  // which cross-product sign nu3's side has
  std::vector<Point> verts;
  std::vector<int> card;
  std::vector<double> s_foot;    // foot position along the diameter
  std::vector<double> height;    // unsigned distance from the diameter
  std::vector<double> side;      // signed side of each vertex
  std::vector<int> demand;       // non-leader units still owed to the vertex
  std::size_t reserved = kNoRobot;  // vertex left for the first leader
  std::vector<std::size_t> non_leaders;
  std::vector<double> r_s, r_h, r_side;  // per-robot diameter coordinates
};

ManyContext build_many(const Context& ctx) {
  ManyContext m;
  m.nu1 = ctx.a.angle.nu1;
  m.nu2 = ctx.a.angle.nu2;
  m.nu3 = ctx.a.angle.nu3;
  const double radius = dist(m.nu1, m.nu2);
  m.diameter = 2.0 * radius;
  const Point axis = m.nu1 - m.nu2;
  m.axis_unit = Point{axis.x / radius, axis.y / radius};
  m.far_end = Point{m.nu1.x + axis.x, m.nu1.y + axis.y};
  const double s3 = cross(m.nu2 - m.nu1, m.nu3 - m.nu1);
  m.side_sign = s3 >= 0.0 ? 1.0 : -1.0;

  for (const Multivertex& v : ctx.resolved.vertices()) {
    m.verts.push_back(v.position);
    m.card.push_back(v.cardinality);
    const Point rel = v.position - m.nu2;
    m.s_foot.push_back(dot(rel, m.axis_unit));
    const double c = cross(m.axis_unit, rel);
    m.height.push_back(std::fabs(c));
    m.side.push_back(c);
  }

  // Reserved vertex: closest to the first leader's vertex among those that
  // still owe a unit after the other two leaders are accounted for. Exact
  // ties are the common case -- every boundary vertex sits one radius from
  // the center -- so each criterion keeps everything within tolerance of the
  // minimum before the next one applies; comparing raw doubles here would
  // let floating-point noise pick a different vertex per observation frame,
  // and the whole swarm must agree on this choice across activations.
  std::vector<int> leader_use(m.verts.size(), 0);
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < m.verts.size(); ++i) {
    if (dist(m.verts[i], m.nu2) <= ctx.tol) ++leader_use[i];
    if (dist(m.verts[i], m.nu3) <= ctx.tol) ++leader_use[i];
    if (m.card[i] - leader_use[i] >= 1) pool.push_back(i);
  }
  const double angle_band = ctx.tol / std::max(radius, ctx.tol);
  const auto keep_min = [&](auto&& value, double band) {
    double least = std::numeric_limits<double>::infinity();
    for (std::size_t i : pool) least = std::min(least, value(i));
    std::erase_if(pool,
                  [&](std::size_t i) { return value(i) > least + band; });
  };
  if (!pool.empty()) {
    keep_min([&](std::size_t i) { return dist(m.verts[i], m.nu1); }, ctx.tol);
    keep_min(
        [&](std::size_t i) {
          double a = sweep_angle(m.nu1, m.nu2, m.verts[i], m.side_sign,
                                 ctx.tol);
          // A vertex on the axis toward nu2 reads as either ~0 or ~2*pi
          // depending on the noise sign; fold the wraparound back to zero.
          if (a >= 2.0 * std::numbers::pi - angle_band) {
            a -= 2.0 * std::numbers::pi;
          }
          return a;
        },
        angle_band);
    keep_min([&](std::size_t i) { return dist(m.verts[i], m.nu2); }, ctx.tol);
  }
  m.reserved = pool.empty() ? kNoRobot : pool.front();

  for (std::size_t i = 0; i < m.verts.size(); ++i) {
    int d = m.card[i] - leader_use[i];
    if (i == m.reserved) --d;
    m.demand.push_back(std::max(d, 0));
  }

  for (std::size_t i = 0; i < ctx.snap->observed.size(); ++i) {
    if (ctx.leader(i)) continue;
    m.non_leaders.push_back(i);
    const Point rel = ctx.pos(i) - m.nu2;
    m.r_s.push_back(dot(rel, m.axis_unit));
    const double c = cross(m.axis_unit, rel);
    m.r_h.push_back(std::fabs(c));
    m.r_side.push_back(c);
  }
  return m;
}

Point diameter_point(const ManyContext& m, double s) {
  return Point{m.nu2.x + m.axis_unit.x * s, m.nu2.y + m.axis_unit.y * s};
}

// Does every non-leader stand on the vertical segment of a vertex that still
// owes units, with enough slots for everyone? Checked as a perfect bipartite
// matching between robots and per-vertex demand copies.
bool vertical_invariant(const Context& ctx, const ManyContext& m) {
  const std::size_t robots = m.non_leaders.size();
  std::vector<std::vector<std::size_t>> adjacency(robots);
  std::vector<std::size_t> copy_vertex;
  for (std::size_t v = 0; v < m.verts.size(); ++v) {
    for (int c = 0; c < m.demand[v]; ++c) {
      copy_vertex.push_back(v);
    }
  }
  if (copy_vertex.size() != robots) return false;
  for (std::size_t r = 0; r < robots; ++r) {
    const Point rp = ctx.pos(m.non_leaders[r]);
    for (std::size_t c = 0; c < copy_vertex.size(); ++c) {
      const std::size_t v = copy_vertex[c];
      const Point foot = diameter_point(m, m.s_foot[v]);
      if (on_segment(rp, m.verts[v], foot, ctx.tol)) {
        adjacency[r].push_back(c);
      }
    }
    if (adjacency[r].empty()) return false;
  }
  // Kuhn's augmenting-path matching; sizes stay tiny.
  std::vector<std::size_t> match_copy(copy_vertex.size(), kNoRobot);
  std::vector<char> used;
  auto try_augment = [&](auto&& self, std::size_t r) -> bool {
    for (std::size_t c : adjacency[r]) {
      if (used[c]) continue;
      used[c] = 1;
      if (match_copy[c] == kNoRobot || self(self, match_copy[c])) {
        match_copy[c] = r;
        return true;
      }
    }
    return false;
  };
  for (std::size_t r = 0; r < robots; ++r) {
    used.assign(copy_vertex.size(), 0);
    if (!try_augment(try_augment, r)) return false;
  }
  return true;
}

int at_vertex_count(const Context& ctx, const ManyContext& m, std::size_t v) {
  int count = 0;
  for (std::size_t idx : m.non_leaders) {
    if (dist(ctx.pos(idx), m.verts[v]) <= ctx.tol) ++count;
  }
  return count;
}

// Non-leaders strictly between the diameter foot and the vertex.
int risers_toward(const Context& ctx, const ManyContext& m, std::size_t v) {
  const Point foot = diameter_point(m, m.s_foot[v]);
  int count = 0;
  for (std::size_t idx : m.non_leaders) {
    const Point rp = ctx.pos(idx);
    if (!on_segment(rp, m.verts[v], foot, ctx.tol)) continue;
    if (dist(rp, m.verts[v]) <= ctx.tol) continue;
    if (dist(rp, foot) <= ctx.tol) continue;
    ++count;
  }
  return count;
}

// Everything the first leader needs before walking to the reserved vertex:
// all other demand satisfied exactly at the vertices, and a clear walkway.
bool ready_for_final_walk(const Context& ctx, const ManyContext& m) {
  if (m.reserved == kNoRobot) return false;
  for (std::size_t v = 0; v < m.verts.size(); ++v) {
    if (at_vertex_count(ctx, m, v) != m.demand[v]) return false;
  }
  const Point lp1 = ctx.pos(ctx.a.lambda1);
  const Point w = m.verts[m.reserved];
  for (std::size_t i = 0; i < ctx.snap->observed.size(); ++i) {
    if (ctx.is_self(i)) continue;
    const Point rp = ctx.pos(i);
    if (!on_segment(rp, w, lp1, ctx.tol)) continue;
    if (dist(rp, w) <= ctx.tol || dist(rp, lp1) <= ctx.tol) continue;
    return false;
  }
  return true;
}

Action phase2_many_impl(const Context& ctx) {
  const Palette& pal = *ctx.pal;
  const ManyContext m = build_many(ctx);
  const int my_color = ctx.self().color;

  if (my_color == pal.lambda1()) {
    // Final walk once every other vertex is filled and the path is clear;
    // until then hold position (or return to the circle center when the
    // walk cannot proceed).
    if (m.reserved != kNoRobot &&
        dist(ctx.self().position, m.verts[m.reserved]) <= ctx.tol) {
      return ctx.stay();
    }
    if (ready_for_final_walk(ctx, m)) {
      return ctx.move_to(m.verts[m.reserved]);
    }
    if (dist(ctx.self().position, m.nu1) > ctx.tol) {
      return ctx.move_to(m.nu1);
    }
    return ctx.stay();
  }
  if (pal.is_leader(my_color)) return ctx.stay();

  // Locate myself among the non-leaders.
  std::size_t me = kNoRobot;
  for (std::size_t r = 0; r < m.non_leaders.size(); ++r) {
    if (ctx.is_self(m.non_leaders[r])) {
      me = r;
      break;
    }
  }
  const Point self_pos = ctx.self().position;
  const double my_s = m.r_s[me];
  const double my_h = m.r_h[me];
  const double my_side = m.r_side[me];

  if (vertical_invariant(ctx, m)) {
    // Standing on a satisfied vertex: done for now.
    for (std::size_t v = 0; v < m.verts.size(); ++v) {
      if (dist(self_pos, m.verts[v]) <= ctx.tol &&
          at_vertex_count(ctx, m, v) <= m.demand[v]) {
        return ctx.stay();
      }
    }
    if (my_h <= ctx.tol) {
      // On the diameter: rise toward the nearest vertex whose foot is here
      // and which still has room, preferring the angle's own side.
      std::optional<std::size_t> best;
      std::array<double, 2> best_key{};
      for (std::size_t v = 0; v < m.verts.size(); ++v) {
        if (std::fabs(m.s_foot[v] - my_s) > ctx.tol) continue;
        if (at_vertex_count(ctx, m, v) + risers_toward(ctx, m, v) >=
            m.demand[v]) {
          continue;
        }
        const bool my_side_of_angle = m.side[v] * m.side_sign >= 0.0;
        const std::array<double, 2> key{m.height[v],
                                        my_side_of_angle ? 0.0 : 1.0};
        if (!best || key < best_key) {
          best = v;
          best_key = key;
        }
      }
      if (best) return ctx.move_to(m.verts[*best]);
      return ctx.stay();
    }
    // Mid-rise: continue to the lowest still-open vertex at or above me on
    // my vertical.
    std::optional<std::size_t> best;
    double best_height = 0.0;
    for (std::size_t v = 0; v < m.verts.size(); ++v) {
      if (std::fabs(m.s_foot[v] - my_s) > ctx.tol) continue;
      if (m.side[v] * my_side < 0.0) continue;
      if (m.height[v] + ctx.tol < my_h) continue;
      if (at_vertex_count(ctx, m, v) >= m.demand[v]) continue;
      if (!best || m.height[v] < best_height) {
        best = v;
        best_height = m.height[v];
      }
    }
    if (best) return ctx.move_to(m.verts[*best]);
    return ctx.stay();
  }

  // The vertical claim structure does not hold yet.
  if (my_h > ctx.tol) {
    // Drop straight onto the diameter.
    return ctx.move_to(diameter_point(m, std::clamp(my_s, 0.0, m.diameter)));
  }

  // On the diameter: slide only once every non-leader has come down.
  for (double h : m.r_h) {
    if (h > ctx.tol) return ctx.stay();
  }

  // Bracket matching between robots and demanded foot slots along the
  // diameter decides who walks where.
  struct Entry {
    double s;
    std::size_t robot;  // index into m.non_leaders, or kNoRobot for a slot
  };
  std::vector<Entry> robot_entries;
  for (std::size_t r = 0; r < m.non_leaders.size(); ++r) {
    robot_entries.push_back({m.r_s[r], r});
  }
  std::sort(robot_entries.begin(), robot_entries.end(),
            [](const Entry& a, const Entry& b) {
              if (a.s != b.s) return a.s < b.s;
              return a.robot < b.robot;
            });
  std::vector<double> robot_positions, slot_positions;
  std::vector<std::size_t> robot_order;
  for (const Entry& e : robot_entries) {
    robot_positions.push_back(e.s);
    robot_order.push_back(e.robot);
  }
  for (std::size_t v = 0; v < m.verts.size(); ++v) {
    for (int c = 0; c < m.demand[v]; ++c) {
      slot_positions.push_back(m.s_foot[v]);
    }
  }
  std::sort(slot_positions.begin(), slot_positions.end());

  const ArrangementString arr =
      arrangement_string(robot_positions, slot_positions, ctx.tol);
  std::size_t my_symbol = kNoRobot;
  for (std::size_t i = 0; i < arr.symbols.size(); ++i) {
    if (arr.symbols[i].is_robot &&
        robot_order[arr.symbols[i].source] == me) {
      my_symbol = i;
      break;
    }
  }
  if (my_symbol == kNoRobot) return ctx.stay();  // already covering a slot
  const std::size_t target_index = target_for(arr.bits, my_symbol + 1);
  const double target_s = arr.symbols[target_index - 1].position;
  return ctx.move_to(diameter_point(m, target_s));
}

Action phase2_impl(const Context& ctx) {
  if (ctx.a.angle.pattern_class.tag == PatternTag::n_points) {
    return phase2_many_impl(ctx);
  }
  return phase2_few_impl(ctx);
}

// ---------------------------------------------------------------------------
// Phase 3: advance the counter, stop, or rewind it between periods.

Action phase3_impl(const Context& ctx) {
  const Palette& pal = *ctx.pal;
  const Snapshot& s = *ctx.snap;
  const int my_color = ctx.self().color;

  if (ctx.a.reset_marker) {
    if (pal.is_counter(my_color) && my_color != pal.off()) {
      return ctx.stay_with(pal.off());
    }
    if (my_color == pal.lambda2()) {
      for (std::size_t i = 0; i < s.observed.size(); ++i) {
        if (pal.is_counter(ctx.color(i)) && ctx.color(i) != pal.off()) {
          return ctx.stay();
        }
      }
      // Wipe finished: exactly one marker turns back into the third leader.
      // When the markers are distinguishable (one off the enclosing circle's
      // boundary, one on it) the original identity is restored; otherwise
      // the first marker to act converts.
      std::size_t other = kNoRobot;
      for (std::size_t i = 0; i < s.observed.size(); ++i) {
        if (ctx.is_self(i)) continue;
        if (ctx.color(i) == pal.lambda2()) other = i;
      }
      auto on_boundary = [&](const Point& p) {
        return std::fabs(dist(p, ctx.config_circle.center) -
                         ctx.config_circle.radius) <= ctx.tol;
      };
      const bool me_on = on_boundary(ctx.self().position);
      const bool other_on = other != kNoRobot && on_boundary(ctx.pos(other));
      if (me_on && !other_on) return ctx.stay();
      return ctx.stay_with(pal.lambda3());
    }
    return ctx.stay();
  }

  const std::size_t index = ctx.a.counter_index;
  const std::size_t length = s.pattern_input.size();
  if (index + 1 == length) {
    // Only reachable for periodic choreographies (a finished finite one is
    // reported as done): the third leader opens the rewind.
    if (s.periodic && my_color == pal.lambda3()) {
      return ctx.stay_with(pal.lambda2());
    }
    return ctx.stay();
  }

  const int kprime = pal.counter_colors();
  const int population = static_cast<int>(s.observed.size()) - 3;
  const GrayList& list = cached_gray_list(population, kprime);
  const IncrementStep inc = increment_step(list, list.entries()[index]);
  if (my_color == inc.dec_color) {
    return ctx.stay_with(inc.inc_color);
  }
  return ctx.stay();
}

Action dispatch(const Context& ctx) {
  switch (ctx.a.phase) {
    case PhaseId::phase0:
      return phase0_impl(ctx);
    case PhaseId::phase1:
      return phase1_impl(ctx);
    case PhaseId::phase2:
      return phase2_impl(ctx);
    case PhaseId::phase3:
      return phase3_impl(ctx);
    case PhaseId::done:
      return ctx.stay();
  }
  return ctx.stay();
}

Action phase_rule(const Snapshot& s, const Palette& palette, PhaseId want) {
  Context ctx = build_context(s, palette);
  if (ctx.a.phase != want) {
    throw std::invalid_argument("snapshot is not in the required phase");
  }
  return dispatch(ctx);
}

}  // namespace

SnapshotAnalysis analyze(const Snapshot& s, const Palette& palette) {
  return build_context(s, palette).a;
}

PhaseId detect_phase(const Snapshot& s, const Palette& palette) {
  return build_context(s, palette).a.phase;
}

Action step(const Snapshot& s, const Palette& palette) {
  return dispatch(build_context(s, palette));
}

Action phase0_rule(const Snapshot& s, const Palette& palette) {
  return phase_rule(s, palette, PhaseId::phase0);
}

Action phase1_rule(const Snapshot& s, const Palette& palette) {
  return phase_rule(s, palette, PhaseId::phase1);
}

Action phase2_rule(const Snapshot& s, const Palette& palette) {
  return phase_rule(s, palette, PhaseId::phase2);
}

Action phase3_rule(const Snapshot& s, const Palette& palette) {
  return phase_rule(s, palette, PhaseId::phase3);
}

}  // namespace dancing
