#include "dancing/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace dancing {

namespace {

using nlohmann::json;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Local observation frame: random similarity with log-uniform scale in
// [0.1, 10], uniform rotation, fair-coin reflection, translated so the
// observer lands exactly on the origin.
Similarity draw_frame(std::mt19937_64& rng, const Point& observer) {
  Similarity f;
  f.scale = std::exp(std::log(0.1) +
                     uniform01(rng) * (std::log(10.0) - std::log(0.1)));
  f.rotation = uniform01(rng) * 2.0 * std::numbers::pi;
  f.reflect = (rng() & 1u) != 0;
  f.translation = Point{0.0, 0.0};
  const Point image = f(observer);
  f.translation = Point{-image.x, -image.y};
  return f;
}

std::string phase_name(PhaseId p) {
  switch (p) {
    case PhaseId::phase0: return "phase0";
    case PhaseId::phase1: return "phase1";
    case PhaseId::phase2: return "phase2";
    case PhaseId::phase3: return "phase3";
    case PhaseId::done: return "done";
  }
  return "phase0";
}

PhaseId phase_from_name(const std::string& s) {
  if (s == "phase0") return PhaseId::phase0;
  if (s == "phase1") return PhaseId::phase1;
  if (s == "phase2") return PhaseId::phase2;
  if (s == "phase3") return PhaseId::phase3;
  if (s == "done") return PhaseId::done;
  throw std::runtime_error("trace file: malformed record");
}

std::string status_name(RunStatus s) {
  switch (s) {
    case RunStatus::done: return "done";
    case RunStatus::periods_complete: return "periods_complete";
    case RunStatus::timeout: return "timeout";
  }
  return "timeout";
}

RunStatus status_from_name(const std::string& s) {
  if (s == "done") return RunStatus::done;
  if (s == "periods_complete") return RunStatus::periods_complete;
  if (s == "timeout") return RunStatus::timeout;
  throw std::runtime_error("trace file: malformed record");
}

std::string scheduler_name(SchedulerPolicy::Kind k) {
  switch (k) {
    case SchedulerPolicy::Kind::round_robin: return "round_robin";
    case SchedulerPolicy::Kind::random_fair: return "random_fair";
    case SchedulerPolicy::Kind::scripted: return "scripted";
  }
  return "round_robin";
}

std::string adversary_name(MovementAdversary::Kind k) {
  switch (k) {
    case MovementAdversary::Kind::rigid: return "rigid";
    case MovementAdversary::Kind::fixed_fraction: return "fixed_fraction";
    case MovementAdversary::Kind::random: return "random";
    case MovementAdversary::Kind::worst_stop: return "worst_stop";
  }
  return "rigid";
}

// Normalize a pattern so its enclosing circle is the unit circle at the
// origin (pure translation for single-point patterns). The algorithm is
// similarity-invariant, and normalized inputs keep the coincidence tolerance
// balanced between configuration and pattern coordinates.
Pattern normalize_pattern(const Pattern& p) {
  const Circle c = sec(p);
  Similarity t;
  t.scale = c.radius > 0.0 ? 1.0 / c.radius : 1.0;
  t.translation = Point{-t.scale * c.center.x, -t.scale * c.center.y};
  return apply(t, p);
}

std::vector<Point> robot_positions(const std::vector<RobotState>& robots) {
  std::vector<Point> pts;
  pts.reserve(robots.size());
  for (const RobotState& r : robots) pts.push_back(r.position);
  return pts;
}

// Shape test between the current swarm and a choreography pattern. The
// coincidence tolerance is floored at the run's reference scale (the initial
// enclosing-circle radius, which the algorithm preserves): a gather shrinks
// the configuration's own circle to roundoff size, so scaling the tolerance
// by it alone could never merge the arrivals into one multivertex.
bool forms(const std::vector<RobotState>& robots, const Pattern& target,
           double reference_radius) {
  const std::vector<Point> pts = robot_positions(robots);
  const double merge =
      kDefaultEps * std::max({sec(pts).radius, reference_radius, 1e-300});
  const Pattern config = Pattern::from_points(pts, merge);
  if (config.total_cardinality() != target.total_cardinality()) return false;
  return similar(config, target).has_value();
}

double reference_radius_of(const std::vector<RobotState>& robots) {
  return robots.empty() ? 0.0 : sec(robot_positions(robots)).radius;
}

// Deterministic fair random scheduler: uniform picks, but a robot whose
// starvation reaches half the watchdog window is activated immediately, so
// fairness holds by construction and the watchdog documents the contract.
class Scheduler {
 public:
  Scheduler(const SchedulerPolicy& policy, std::size_t n)
      : policy_(policy), n_(n), rng_(policy.seed), last_(n, -1) {
    window_ = policy.watchdog_window > 0
                  ? policy.watchdog_window
                  : static_cast<std::int64_t>(10 * n);
    if (policy.kind == SchedulerPolicy::Kind::scripted) {
      if (policy_.script.empty()) {
        throw std::invalid_argument("scripted schedule must include every robot");
      }
      std::vector<char> seen(n, 0);
      for (std::size_t r : policy_.script) {
        if (r >= n) {
          throw std::invalid_argument(
              "scripted schedule activates an unknown robot");
        }
        seen[r] = 1;
      }
      for (char c : seen) {
        if (!c) {
          throw std::invalid_argument(
              "scripted schedule must include every robot");
        }
      }
    }
  }

  std::size_t pick(std::int64_t round) {
    std::size_t robot = 0;
    switch (policy_.kind) {
      case SchedulerPolicy::Kind::round_robin:
        robot = static_cast<std::size_t>(round % static_cast<std::int64_t>(n_));
        break;
      case SchedulerPolicy::Kind::scripted:
        robot = policy_.script[static_cast<std::size_t>(
            round % static_cast<std::int64_t>(policy_.script.size()))];
        break;
      case SchedulerPolicy::Kind::random_fair: {
        std::size_t starved = 0;
        std::int64_t worst = -1;
        for (std::size_t i = 0; i < n_; ++i) {
          const std::int64_t gap = round - last_[i];
          if (gap > worst) {
            worst = gap;
            starved = i;
          }
        }
        if (worst >= window_ / 2) {
          robot = starved;
        } else {
          robot = static_cast<std::size_t>(rng_() % n_);
        }
        break;
      }
    }
    if (policy_.kind == SchedulerPolicy::Kind::random_fair) {
      for (std::size_t i = 0; i < n_; ++i) {
        const std::int64_t start = last_[i] < 0 ? 0 : last_[i];
        if (i != robot && round - start > window_) {
          throw std::runtime_error("fairness watchdog violation");
        }
      }
    }
    last_[robot] = round;
    return robot;
  }

 private:
  SchedulerPolicy policy_;
  std::size_t n_;
  std::mt19937_64 rng_;
  std::vector<std::int64_t> last_;
  std::int64_t window_ = 0;
};

// Truncates an intended straight move. Short moves always complete; longer
// ones travel at least delta, with the stop point picked by the policy.
class Adversary {
 public:
  explicit Adversary(const MovementAdversary& adv) : adv_(adv), rng_(adv.seed) {
    if (adv.kind != MovementAdversary::Kind::rigid && !(adv.delta > 0.0)) {
      throw std::invalid_argument("delta must be positive");
    }
    if (adv.kind == MovementAdversary::Kind::fixed_fraction &&
        !(adv.fraction > 0.0 && adv.fraction <= 1.0)) {
      throw std::invalid_argument("fraction must be in (0, 1]");
    }
  }

  // Returns the reached point; exact destination bits when the move
  // completes, so arrived robots coincide exactly with their targets.
  Point truncate(const Point& from, const Point& to) {
    if (adv_.kind == MovementAdversary::Kind::rigid) return to;
    const double full = dist(from, to);
    if (full <= adv_.delta) return to;
    double travel = full;
    switch (adv_.kind) {
      case MovementAdversary::Kind::rigid:
        break;
      case MovementAdversary::Kind::fixed_fraction:
        travel = std::max(adv_.delta, adv_.fraction * full);
        break;
      case MovementAdversary::Kind::worst_stop:
        travel = adv_.delta;
        break;
      case MovementAdversary::Kind::random:
        travel = adv_.delta + uniform01(rng_) * (full - adv_.delta);
        break;
    }
    if (travel >= full) return to;
    const double t = travel / full;
    return Point{from.x + t * (to.x - from.x), from.y + t * (to.y - from.y)};
  }

 private:
  MovementAdversary adv_;
  std::mt19937_64 rng_;
};

}  // namespace

Trace run(const ChoreographyFile& choreo, const Configuration& initial,
          const SchedulerPolicy& sched, const MovementAdversary& adv,
          std::uint64_t frame_seed, const RunLimits& limits) {
  const ValidationReport report =
      validate(choreo.choreography, choreo.n, choreo.k);
  if (!report.ok()) {
    throw std::invalid_argument("invalid choreography: " +
                                report.violations.front());
  }
  const std::size_t n = static_cast<std::size_t>(choreo.n);
  if (initial.robots.size() != n) {
    throw std::invalid_argument(
        "initial configuration size does not match the choreography");
  }
  const Palette palette = Palette::with_total(choreo.k);
  for (const RobotState& r : initial.robots) {
    if (r.color != palette.off()) {
      throw std::invalid_argument(
          "initial configuration must have all robots off");
    }
  }
  if (limits.max_rounds <= 0) {
    throw std::invalid_argument("max_rounds must be positive");
  }

  const std::size_t q = choreo.choreography.patterns.size();
  const bool periodic = choreo.choreography.periodic;
  std::vector<Pattern> patterns;
  patterns.reserve(q);
  for (const Pattern& p : choreo.choreography.patterns) {
    patterns.push_back(normalize_pattern(p));
  }

  Trace trace;
  trace.n = choreo.n;
  trace.k = choreo.k;
  trace.delta = adv.delta;
  trace.periodic = periodic;
  trace.pattern_count = q;
  trace.scheduler = scheduler_name(sched.kind);
  trace.scheduler_seed = sched.seed;
  trace.adversary = adversary_name(adv.kind);
  trace.adversary_seed = adv.seed;
  trace.fraction = adv.fraction;
  trace.frame_seed = frame_seed;
  trace.max_rounds = limits.max_rounds;
  trace.max_periods = limits.max_periods;
  trace.initial = initial.robots;
  trace.status = RunStatus::timeout;

  Scheduler scheduler(sched, n);
  Adversary adversary(adv);
  std::mt19937_64 frame_rng(frame_seed);

  std::vector<RobotState> robots = initial.robots;
  const double reference_radius = reference_radius_of(initial.robots);
  const std::size_t formations_needed =
      periodic ? q * static_cast<std::size_t>(std::max(limits.max_periods, 0))
               : q;

  // Global epoch bookkeeping: an epoch ends when every robot has been
  // activated since it began.
  std::vector<char> epoch_seen(n, 0);
  std::size_t epoch_count = 0;
  std::int64_t epoch_index = 0;

  std::int64_t freeze_until = -1;

  for (std::int64_t round = 0; round < limits.max_rounds; ++round) {
    const std::size_t robot = scheduler.pick(round);

    Snapshot global;
    global.observed = robots;
    global.self_index = robot;
    global.pattern_input = patterns;
    global.periodic = periodic;
    const SnapshotAnalysis analysis = analyze(global, palette);

    const Similarity frame = draw_frame(frame_rng, robots[robot].position);
    Snapshot local;
    local.observed.reserve(n);
    for (const RobotState& r : robots) {
      local.observed.push_back(RobotState{frame(r.position), r.color});
    }
    local.self_index = robot;
    local.pattern_input = patterns;
    local.periodic = periodic;

    const Action action = step(local, palette);

    const Point old_pos = robots[robot].position;
    const int old_color = robots[robot].color;
    Point arrived = old_pos;
    if (!(action.destination == local.observed[robot].position)) {
      const Point global_dest = frame.inverse()(action.destination);
      arrived = adversary.truncate(old_pos, global_dest);
    }

    if (freeze_until >= 0 &&
        (!(arrived == old_pos) || action.new_color != old_color)) {
      throw std::runtime_error("movement after termination");
    }

    robots[robot].position = arrived;
    robots[robot].color = action.new_color;

    TraceEvent event;
    event.round = round;
    event.robot = robot;
    event.from = old_pos;
    event.to = arrived;
    event.old_color = old_color;
    event.new_color = action.new_color;
    event.phase = analysis.phase;
    event.reset = analysis.reset_marker;
    event.epoch = epoch_index;
    event.counter = analysis.counter_index == kNoRobot
                        ? -1
                        : static_cast<std::int64_t>(analysis.counter_index);

    if (!epoch_seen[robot]) {
      epoch_seen[robot] = 1;
      ++epoch_count;
      if (epoch_count == n) {
        ++epoch_index;
        epoch_count = 0;
        std::fill(epoch_seen.begin(), epoch_seen.end(), 0);
      }
    }

    // Formation detection by shape similarity, in choreography order.
    if (trace.formations.size() < formations_needed) {
      const std::size_t expected = trace.formations.size() % q;
      if (forms(robots, patterns[expected], reference_radius)) {
        trace.formations.push_back(FormationEvent{expected, round});
        event.formed = static_cast<std::int64_t>(expected);
      }
    }

    trace.events.push_back(event);

    if (freeze_until >= 0) {
      if (round >= freeze_until) {
        trace.status = RunStatus::done;
        trace.rounds = round + 1;
        return trace;
      }
      continue;
    }

    if (trace.formations.size() == formations_needed) {
      Snapshot check;
      check.observed = robots;
      check.self_index = 0;
      check.pattern_input = patterns;
      check.periodic = periodic;
      const SnapshotAnalysis post = analyze(check, palette);
      if (!periodic && post.phase == PhaseId::done) {
        // Verify the freeze over a couple of full activation cycles.
        freeze_until = round + 2 * static_cast<std::int64_t>(n);
      }
      if (periodic && post.phase == PhaseId::phase1 &&
          post.counter_index == 0 && !post.reset_marker) {
        // The final period's counter rewind has completed.
        trace.status = RunStatus::periods_complete;
        trace.rounds = round + 1;
        return trace;
      }
    }
  }

  trace.status = RunStatus::timeout;
  trace.rounds = limits.max_rounds;
  return trace;
}

std::vector<FormationEvent> pattern_events(const Trace& t,
                                           const ChoreographyFile& choreo) {
  const std::size_t q = choreo.choreography.patterns.size();
  std::vector<Pattern> patterns;
  patterns.reserve(q);
  for (const Pattern& p : choreo.choreography.patterns) {
    patterns.push_back(normalize_pattern(p));
  }

  std::vector<RobotState> robots = t.initial;
  const double reference_radius = reference_radius_of(t.initial);
  std::vector<FormationEvent> derived;
  for (const TraceEvent& e : t.events) {
    if (e.robot >= robots.size()) {
      throw std::runtime_error("formation events out of order");
    }
    robots[e.robot].position = e.to;
    robots[e.robot].color = e.new_color;
    const std::size_t expected = derived.size() % q;
    const bool open = t.periodic || derived.size() < q;
    if (open && forms(robots, patterns[expected], reference_radius)) {
      derived.push_back(FormationEvent{expected, e.round});
    }
  }

  if (derived.size() < t.formations.size()) {
    throw std::runtime_error("formation events out of order");
  }
  for (std::size_t i = 0; i < t.formations.size(); ++i) {
    if (derived[i].index != t.formations[i].index ||
        derived[i].round != t.formations[i].round) {
      throw std::runtime_error("formation events out of order");
    }
    if (i > 0 && derived[i].round <= derived[i - 1].round) {
      throw std::runtime_error("formation events out of order");
    }
  }
  derived.resize(t.formations.size());
  return derived;
}

EpochStats epoch_stats(const Trace& t) {
  EpochStats stats;
  const std::size_t n = static_cast<std::size_t>(t.n);
  const Palette palette = Palette::with_total(t.k);

  // Phase segments with per-segment epoch counts.
  std::size_t i = 0;
  while (i < t.events.size()) {
    PhaseSegment seg;
    seg.counter = t.events[i].counter;
    seg.phase = t.events[i].phase;
    seg.reset = t.events[i].reset;
    seg.first_round = t.events[i].round;
    std::vector<char> seen(n, 0);
    std::size_t count = 0;
    std::int64_t completed = 0;
    std::size_t j = i;
    for (; j < t.events.size(); ++j) {
      const TraceEvent& e = t.events[j];
      if (e.counter != seg.counter || e.phase != seg.phase ||
          e.reset != seg.reset) {
        break;
      }
      seg.last_round = e.round;
      if (!seen[e.robot]) {
        seen[e.robot] = 1;
        ++count;
        if (count == n) {
          ++completed;
          count = 0;
          std::fill(seen.begin(), seen.end(), 0);
        }
      }
    }
    seg.epochs = completed + (count > 0 ? 1 : 0);
    stats.segments.push_back(seg);
    i = j;
  }

  // Supporting circles at formation rounds, via replay.
  std::vector<RobotState> robots = t.initial;
  const double reference_radius = reference_radius_of(t.initial);
  std::size_t next_formation = 0;
  for (const TraceEvent& e : t.events) {
    robots[e.robot].position = e.to;
    robots[e.robot].color = e.new_color;
    while (next_formation < t.formations.size() &&
           t.formations[next_formation].round == e.round) {
      const std::vector<Point> pts = robot_positions(robots);
      const Circle enclosing = sec(pts);
      const double merge =
          kDefaultEps * std::max({enclosing.radius, reference_radius, 1e-300});
      const Pattern config = Pattern::from_points(pts, merge);
      const PatternClass cls = classify(config, merge);

      Point lambda1_pos{};
      Point lambda2_pos{};
      for (const RobotState& r : robots) {
        if (r.color == palette.lambda1()) lambda1_pos = r.position;
        if (r.color == palette.lambda2()) lambda2_pos = r.position;
      }
      FormationCircle circle;
      circle.index = t.formations[next_formation].index;
      circle.round = e.round;
      circle.center = cls.tag == PatternTag::n_points ? enclosing.center
                                                      : lambda1_pos;
      circle.radius = dist(circle.center, lambda2_pos);
      circle.is_point = cls.tag == PatternTag::point;
      stats.circles.push_back(circle);
      ++next_formation;
    }
  }
  return stats;
}

namespace {

json event_to_json(const TraceEvent& e) {
  return json{{"type", "event"},
              {"round", e.round},
              {"robot", e.robot},
              {"from_x", e.from.x},
              {"from_y", e.from.y},
              {"to_x", e.to.x},
              {"to_y", e.to.y},
              {"old_color", e.old_color},
              {"new_color", e.new_color},
              {"phase", phase_name(e.phase)},
              {"reset", e.reset},
              {"epoch", e.epoch},
              {"counter", e.counter},
              {"formed", e.formed}};
}

}  // namespace

void write_trace(const Trace& t, std::ostream& out) {
  json header{{"type", "header"},
              {"n", t.n},
              {"k", t.k},
              {"delta", t.delta},
              {"periodic", t.periodic},
              {"pattern_count", t.pattern_count},
              {"scheduler", t.scheduler},
              {"scheduler_seed", t.scheduler_seed},
              {"adversary", t.adversary},
              {"adversary_seed", t.adversary_seed},
              {"fraction", t.fraction},
              {"frame_seed", t.frame_seed},
              {"max_rounds", t.max_rounds},
              {"max_periods", t.max_periods}};
  out << header.dump() << "\n";
  for (std::size_t i = 0; i < t.initial.size(); ++i) {
    json rec{{"type", "initial"},
             {"robot", i},
             {"x", t.initial[i].position.x},
             {"y", t.initial[i].position.y},
             {"color", t.initial[i].color}};
    out << rec.dump() << "\n";
  }
  for (const TraceEvent& e : t.events) {
    out << event_to_json(e).dump() << "\n";
  }
  for (const FormationEvent& f : t.formations) {
    json rec{{"type", "formation"}, {"index", f.index}, {"round", f.round}};
    out << rec.dump() << "\n";
  }
  json summary{{"type", "summary"},
               {"status", status_name(t.status)},
               {"rounds", t.rounds}};
  out << summary.dump() << "\n";
}

void write_trace(const Trace& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write trace file: " + path);
  }
  write_trace(t, out);
}

Trace read_trace(std::istream& in) {
  Trace t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("type")) {
      throw std::runtime_error("trace file: malformed record");
    }
    const std::string type = rec.at("type").get<std::string>();
    try {
      if (type == "header") {
        t.n = rec.at("n").get<int>();
        t.k = rec.at("k").get<int>();
        t.delta = rec.at("delta").get<double>();
        t.periodic = rec.at("periodic").get<bool>();
        t.pattern_count = rec.at("pattern_count").get<std::size_t>();
        t.scheduler = rec.at("scheduler").get<std::string>();
        t.scheduler_seed = rec.at("scheduler_seed").get<std::uint64_t>();
        t.adversary = rec.at("adversary").get<std::string>();
        t.adversary_seed = rec.at("adversary_seed").get<std::uint64_t>();
        t.fraction = rec.at("fraction").get<double>();
        t.frame_seed = rec.at("frame_seed").get<std::uint64_t>();
        t.max_rounds = rec.at("max_rounds").get<std::int64_t>();
        t.max_periods = rec.at("max_periods").get<int>();
        have_header = true;
      } else if (type == "initial") {
        RobotState r;
        r.position = Point{rec.at("x").get<double>(), rec.at("y").get<double>()};
        r.color = rec.at("color").get<int>();
        const std::size_t idx = rec.at("robot").get<std::size_t>();
        if (t.initial.size() != idx) {
          throw std::runtime_error("trace file: malformed record");
        }
        t.initial.push_back(r);
      } else if (type == "event") {
        TraceEvent e;
        e.round = rec.at("round").get<std::int64_t>();
        e.robot = rec.at("robot").get<std::size_t>();
        e.from = Point{rec.at("from_x").get<double>(),
                       rec.at("from_y").get<double>()};
        e.to = Point{rec.at("to_x").get<double>(), rec.at("to_y").get<double>()};
        e.old_color = rec.at("old_color").get<int>();
        e.new_color = rec.at("new_color").get<int>();
        e.phase = phase_from_name(rec.at("phase").get<std::string>());
        e.reset = rec.at("reset").get<bool>();
        e.epoch = rec.at("epoch").get<std::int64_t>();
        e.counter = rec.at("counter").get<std::int64_t>();
        e.formed = rec.at("formed").get<std::int64_t>();
        t.events.push_back(e);
      } else if (type == "formation") {
        FormationEvent f;
        f.index = rec.at("index").get<std::size_t>();
        f.round = rec.at("round").get<std::int64_t>();
        t.formations.push_back(f);
      } else if (type == "summary") {
        t.status = status_from_name(rec.at("status").get<std::string>());
        t.rounds = rec.at("rounds").get<std::int64_t>();
      } else {
        throw std::runtime_error("trace file: malformed record");
      }
    } catch (const json::exception&) {
      throw std::runtime_error("trace file: malformed record");
    }
  }
  if (!have_header) {
    throw std::runtime_error("trace file: malformed record");
  }
  return t;
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trace file: " + path);
  }
  return read_trace(in);
}

}  // namespace dancing
