#include "dancing/simulator.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dancing/chorfile.hpp"
#include "dancing/geometry.hpp"
#include "test_support.hpp"

namespace {

using dancing::ChoreographyFile;
using dancing::Configuration;
using dancing::MovementAdversary;
using dancing::Pattern;
using dancing::Point;
using dancing::RunLimits;
using dancing::RunStatus;
using dancing::SchedulerPolicy;
using dancing::Trace;
using testsup::make_pattern;

SchedulerPolicy round_robin() { return SchedulerPolicy{}; }

SchedulerPolicy random_fair(std::uint64_t seed, std::int64_t window = 0) {
  SchedulerPolicy p;
  p.kind = SchedulerPolicy::Kind::random_fair;
  p.seed = seed;
  p.watchdog_window = window;
  return p;
}

MovementAdversary rigid() { return MovementAdversary{}; }

MovementAdversary adversary(MovementAdversary::Kind kind, double delta,
                            double fraction = 1.0, std::uint64_t seed = 0) {
  MovementAdversary a;
  a.kind = kind;
  a.delta = delta;
  a.fraction = fraction;
  a.seed = seed;
  return a;
}

RunLimits limits(std::int64_t max_rounds, int max_periods = 3) {
  RunLimits l;
  l.max_rounds = max_rounds;
  l.max_periods = max_periods;
  return l;
}

// A three-robot one-pattern choreography and a start whose unique longest
// edge pins the whole election order under the round-robin scheduler.
ChoreographyFile tiny_choreography() {
  ChoreographyFile f;
  f.n = 3;
  f.k = 5;
  f.choreography.patterns = {make_pattern({{0, 0, 2}, {1, 0, 1}})};
  f.choreography.periodic = false;
  return f;
}

Configuration pinned_triangle() {
  Configuration c;
  c.robots = {{Point{0.0, 0.0}, 1},
              {Point{0.8, 0.55}, 1},
              {Point{0.8, -0.45}, 1}};
  return c;
}

// Seven robots forming a plus sign with a triple-weight hub.
ChoreographyFile plus_choreography() {
  ChoreographyFile f;
  f.n = 7;
  f.k = 5;
  f.choreography.patterns = {
      make_pattern({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}, {0, 0, 3}})};
  f.choreography.periodic = false;
  return f;
}

std::vector<dancing::RobotState> final_robots(const Trace& t) {
  std::vector<dancing::RobotState> robots = t.initial;
  for (const auto& e : t.events) {
    robots[e.robot].position = e.to;
    robots[e.robot].color = e.new_color;
  }
  return robots;
}

bool forms_shape(const std::vector<dancing::RobotState>& robots,
                 const Pattern& target) {
  std::vector<Point> pts;
  for (const auto& r : robots) pts.push_back(r.position);
  const double merge = 1e-9 * std::max(dancing::sec(pts).radius, 1e-300);
  const Pattern config = Pattern::from_points(pts, merge);
  if (config.total_cardinality() != target.total_cardinality()) return false;
  return dancing::similar(config, target).has_value();
}

std::string serialize(const Trace& t) {
  std::ostringstream out;
  dancing::write_trace(t, out);
  return out.str();
}

void expect_trace_equal(const Trace& a, const Trace& b) {
  EXPECT_EQ(a.n, b.n);
  EXPECT_EQ(a.k, b.k);
  EXPECT_EQ(a.delta, b.delta);
  EXPECT_EQ(a.periodic, b.periodic);
  EXPECT_EQ(a.pattern_count, b.pattern_count);
  EXPECT_EQ(a.scheduler, b.scheduler);
  EXPECT_EQ(a.scheduler_seed, b.scheduler_seed);
  EXPECT_EQ(a.adversary, b.adversary);
  EXPECT_EQ(a.adversary_seed, b.adversary_seed);
  EXPECT_EQ(a.fraction, b.fraction);
  EXPECT_EQ(a.frame_seed, b.frame_seed);
  EXPECT_EQ(a.max_rounds, b.max_rounds);
  EXPECT_EQ(a.max_periods, b.max_periods);
  ASSERT_EQ(a.initial.size(), b.initial.size());
  for (std::size_t i = 0; i < a.initial.size(); ++i) {
    EXPECT_EQ(a.initial[i].position.x, b.initial[i].position.x);
    EXPECT_EQ(a.initial[i].position.y, b.initial[i].position.y);
    EXPECT_EQ(a.initial[i].color, b.initial[i].color);
  }
  ASSERT_EQ(a.events.size(), b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    EXPECT_EQ(a.events[i].round, b.events[i].round);
    EXPECT_EQ(a.events[i].robot, b.events[i].robot);
    EXPECT_EQ(a.events[i].from.x, b.events[i].from.x);
    EXPECT_EQ(a.events[i].from.y, b.events[i].from.y);
    EXPECT_EQ(a.events[i].to.x, b.events[i].to.x);
    EXPECT_EQ(a.events[i].to.y, b.events[i].to.y);
    EXPECT_EQ(a.events[i].old_color, b.events[i].old_color);
    EXPECT_EQ(a.events[i].new_color, b.events[i].new_color);
    EXPECT_EQ(a.events[i].phase, b.events[i].phase);
    EXPECT_EQ(a.events[i].reset, b.events[i].reset);
    EXPECT_EQ(a.events[i].epoch, b.events[i].epoch);
    EXPECT_EQ(a.events[i].counter, b.events[i].counter);
    EXPECT_EQ(a.events[i].formed, b.events[i].formed);
  }
  ASSERT_EQ(a.formations.size(), b.formations.size());
  for (std::size_t i = 0; i < a.formations.size(); ++i) {
    EXPECT_EQ(a.formations[i].index, b.formations[i].index);
    EXPECT_EQ(a.formations[i].round, b.formations[i].round);
  }
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.rounds, b.rounds);
}

// ---------------------------------------------------------------------------
// End-to-end runs

TEST(Run, ThreeRobotsFormASingleShape) {
  const auto choreo = tiny_choreography();
  const Trace t = dancing::run(choreo, pinned_triangle(), round_robin(),
                               rigid(), 7, limits(5000));
  EXPECT_EQ(t.status, RunStatus::done);
  ASSERT_EQ(t.formations.size(), 1u);
  EXPECT_EQ(t.formations[0].index, 0u);
  EXPECT_EQ(t.formations[0].round, 6);
  EXPECT_TRUE(
      forms_shape(final_robots(t), choreo.choreography.patterns[0]));
  // One activation per round, in order.
  ASSERT_EQ(static_cast<std::int64_t>(t.events.size()), t.rounds);
  for (std::size_t i = 0; i < t.events.size(); ++i) {
    EXPECT_EQ(t.events[i].round, static_cast<std::int64_t>(i));
    EXPECT_EQ(t.events[i].robot, i % 3);
  }
}

TEST(Run, ScatteredSwarmPerformsTheShowcase) {
  const ChoreographyFile choreo = testsup::showcase_choreography();
  const Configuration start = testsup::scatter(choreo.n, 4242);
  const Trace t = dancing::run(choreo, start, round_robin(), rigid(), 99,
                               limits(300000));
  EXPECT_EQ(t.status, RunStatus::done);
  const std::size_t q = choreo.choreography.patterns.size();
  ASSERT_EQ(t.formations.size(), q);
  for (std::size_t i = 0; i < q; ++i) {
    EXPECT_EQ(t.formations[i].index, i);
    if (i > 0) EXPECT_GT(t.formations[i].round, t.formations[i - 1].round);
  }
  // Replay agrees with the recorded formation events.
  const auto derived = dancing::pattern_events(t, choreo);
  ASSERT_EQ(derived.size(), q);
  for (std::size_t i = 0; i < q; ++i) {
    EXPECT_EQ(derived[i].index, t.formations[i].index);
    EXPECT_EQ(derived[i].round, t.formations[i].round);
  }
}

TEST(Run, PeriodicChoreographyRewindsBetweenPeriods) {
  const ChoreographyFile choreo = testsup::periodic_choreography();
  const Configuration start = testsup::scatter(choreo.n, 777);
  const Trace t = dancing::run(choreo, start, round_robin(), rigid(), 5,
                               limits(400000, 2));
  EXPECT_EQ(t.status, RunStatus::periods_complete);
  const std::size_t q = choreo.choreography.patterns.size();
  ASSERT_EQ(t.formations.size(), 2 * q);
  for (std::size_t i = 0; i < t.formations.size(); ++i) {
    EXPECT_EQ(t.formations[i].index, i % q);
    if (i > 0) EXPECT_GT(t.formations[i].round, t.formations[i - 1].round);
  }
  bool saw_rewind = false;
  for (const auto& e : t.events) saw_rewind = saw_rewind || e.reset;
  EXPECT_TRUE(saw_rewind);
  const auto derived = dancing::pattern_events(t, choreo);
  ASSERT_EQ(derived.size(), t.formations.size());
}

// ---------------------------------------------------------------------------
// Determinism and frame opacity

TEST(Run, EqualSeedsGiveBitIdenticalTraces) {
  const ChoreographyFile choreo = testsup::periodic_choreography();
  const Configuration start = testsup::scatter(choreo.n, 31337);
  const auto sched = random_fair(5);
  const auto adv =
      adversary(MovementAdversary::Kind::random, 0.05, 1.0, 9);
  const Trace a = dancing::run(choreo, start, sched, adv, 11,
                               limits(400000, 2));
  const Trace b = dancing::run(choreo, start, sched, adv, 11,
                               limits(400000, 2));
  EXPECT_EQ(a.status, RunStatus::periods_complete);
  EXPECT_EQ(serialize(a), serialize(b));
}

TEST(Run, LocalFramesDoNotLeakIntoGlobalBehavior) {
  // The same run observed through two different per-activation frame streams
  // must produce the same decisions: equal colors, phases, and formation
  // rounds, and geometrically identical motion up to roundoff.
  const ChoreographyFile choreo = plus_choreography();
  const Configuration start = testsup::scatter(choreo.n, 99);
  const Trace a = dancing::run(choreo, start, round_robin(), rigid(), 1,
                               limits(100000));
  const Trace b = dancing::run(choreo, start, round_robin(), rigid(), 2,
                               limits(100000));
  EXPECT_EQ(a.status, RunStatus::done);
  EXPECT_EQ(b.status, RunStatus::done);
  ASSERT_EQ(a.events.size(), b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    EXPECT_EQ(a.events[i].robot, b.events[i].robot);
    EXPECT_EQ(a.events[i].old_color, b.events[i].old_color);
    EXPECT_EQ(a.events[i].new_color, b.events[i].new_color);
    EXPECT_EQ(a.events[i].phase, b.events[i].phase);
    EXPECT_NEAR(a.events[i].to.x, b.events[i].to.x, 1e-9);
    EXPECT_NEAR(a.events[i].to.y, b.events[i].to.y, 1e-9);
  }
  ASSERT_EQ(a.formations.size(), b.formations.size());
  for (std::size_t i = 0; i < a.formations.size(); ++i) {
    EXPECT_EQ(a.formations[i].round, b.formations[i].round);
  }
}

// ---------------------------------------------------------------------------
// Movement adversaries

TEST(Run, FixedFractionStopsMidway) {
  const auto choreo = tiny_choreography();
  const Trace full = dancing::run(choreo, pinned_triangle(), round_robin(),
                                  rigid(), 7, limits(5000));
  const Trace half = dancing::run(
      choreo, pinned_triangle(), round_robin(),
      adversary(MovementAdversary::Kind::fixed_fraction, 0.1, 0.5), 7,
      limits(5000));

  // Identical prefixes until the first actual move, which the adversary cuts
  // exactly in half (the target itself comes from the same frame stream).
  std::size_t first_move = full.events.size();
  for (std::size_t i = 0; i < full.events.size(); ++i) {
    if (!(full.events[i].from == full.events[i].to)) {
      first_move = i;
      break;
    }
  }
  ASSERT_LT(first_move, full.events.size());
  ASSERT_LT(first_move, half.events.size());
  const auto& want = full.events[first_move];
  const auto& got = half.events[first_move];
  EXPECT_EQ(got.robot, want.robot);
  EXPECT_EQ(got.from.x, want.from.x);
  EXPECT_EQ(got.from.y, want.from.y);
  EXPECT_NEAR(got.to.x, 0.5 * (want.from.x + want.to.x), 1e-12);
  EXPECT_NEAR(got.to.y, 0.5 * (want.from.y + want.to.y), 1e-12);

  // Repeated halving still converges and forms the shape.
  EXPECT_EQ(half.status, RunStatus::done);
  ASSERT_EQ(half.formations.size(), 1u);
  EXPECT_TRUE(
      forms_shape(final_robots(half), choreo.choreography.patterns[0]));
}

TEST(Run, WorstStopNeverTravelsBeyondDelta) {
  const auto choreo = tiny_choreography();
  const double delta = 0.1;
  const Trace t = dancing::run(
      choreo, pinned_triangle(), round_robin(),
      adversary(MovementAdversary::Kind::worst_stop, delta), 7,
      limits(10000));
  EXPECT_EQ(t.status, RunStatus::done);
  for (const auto& e : t.events) {
    EXPECT_LE(dancing::dist(e.from, e.to), delta + 1e-12);
  }
  EXPECT_TRUE(forms_shape(final_robots(t), choreo.choreography.patterns[0]));
}

TEST(Run, RandomAdversaryStillCompletes) {
  const auto choreo = plus_choreography();
  const Configuration start = testsup::scatter(choreo.n, 2024);
  const Trace t = dancing::run(
      choreo, start, round_robin(),
      adversary(MovementAdversary::Kind::random, 0.05, 1.0, 17), 3,
      limits(200000));
  EXPECT_EQ(t.status, RunStatus::done);
  EXPECT_TRUE(forms_shape(final_robots(t), choreo.choreography.patterns[0]));
}

// ---------------------------------------------------------------------------
// Schedulers

TEST(Run, ScriptedSchedulerFollowsItsScript) {
  SchedulerPolicy sched;
  sched.kind = SchedulerPolicy::Kind::scripted;
  sched.script = {2, 0, 1, 1, 0, 2};
  const auto choreo = tiny_choreography();
  const Trace t = dancing::run(choreo, pinned_triangle(), sched, rigid(), 7,
                               limits(5000));
  EXPECT_EQ(t.status, RunStatus::done);
  for (std::size_t i = 0; i < t.events.size(); ++i) {
    EXPECT_EQ(t.events[i].robot, sched.script[i % sched.script.size()]);
  }
}

TEST(Run, RandomFairSchedulerHonorsItsWindow) {
  const auto choreo = plus_choreography();
  const Configuration start = testsup::scatter(choreo.n, 8);
  const Trace t = dancing::run(choreo, start, random_fair(21), rigid(), 4,
                               limits(100000));
  EXPECT_EQ(t.status, RunStatus::done);
  const std::int64_t window = 10 * choreo.n;
  std::vector<std::int64_t> last(static_cast<std::size_t>(choreo.n), 0);
  for (const auto& e : t.events) {
    for (std::size_t i = 0; i < last.size(); ++i) {
      EXPECT_LE(e.round - last[i], window);
    }
    last[e.robot] = e.round;
  }
}

TEST(Run, TooSmallWatchdogWindowIsAHarnessError) {
  const auto choreo = plus_choreography();
  const Configuration start = testsup::scatter(choreo.n, 8);
  EXPECT_THROW(
      {
        try {
          dancing::run(choreo, start, random_fair(21, 3), rigid(), 4,
                       limits(100000));
        } catch (const std::runtime_error& e) {
          EXPECT_STREQ(e.what(), "fairness watchdog violation");
          throw;
        }
      },
      std::runtime_error);
}

// ---------------------------------------------------------------------------
// Input validation

TEST(Run, RejectsBadInputs) {
  const auto choreo = tiny_choreography();
  const Configuration start = pinned_triangle();
  const auto expect_invalid = [](auto fn, const char* message) {
    EXPECT_THROW(
        {
          try {
            fn();
          } catch (const std::invalid_argument& e) {
            EXPECT_STREQ(e.what(), message);
            throw;
          }
        },
        std::invalid_argument);
  };

  // Infeasible choreography: two consecutive similar shapes.
  ChoreographyFile twice;
  twice.n = 4;
  twice.k = 5;
  twice.choreography.patterns = {make_pattern({{0, 0, 2}, {1, 0, 2}}),
                                 make_pattern({{0, 0, 2}, {2, 0, 2}})};
  const Configuration four = testsup::scatter(4, 1);
  expect_invalid(
      [&] { dancing::run(twice, four, round_robin(), rigid(), 1, limits(10)); },
      "invalid choreography: consecutive similarity between patterns 0 and 1");

  expect_invalid(
      [&] {
        dancing::run(choreo, testsup::scatter(4, 1), round_robin(), rigid(), 1,
                     limits(10));
      },
      "initial configuration size does not match the choreography");

  Configuration colored = start;
  colored.robots[0].color = 2;
  expect_invalid(
      [&] { dancing::run(choreo, colored, round_robin(), rigid(), 1, limits(10)); },
      "initial configuration must have all robots off");

  expect_invalid(
      [&] { dancing::run(choreo, start, round_robin(), rigid(), 1, limits(0)); },
      "max_rounds must be positive");

  expect_invalid(
      [&] {
        dancing::run(choreo, start, round_robin(),
                     adversary(MovementAdversary::Kind::worst_stop, 0.0), 1,
                     limits(10));
      },
      "delta must be positive");

  expect_invalid(
      [&] {
        dancing::run(choreo, start, round_robin(),
                     adversary(MovementAdversary::Kind::fixed_fraction, 0.1,
                               0.0),
                     1, limits(10));
      },
      "fraction must be in (0, 1]");
  expect_invalid(
      [&] {
        dancing::run(choreo, start, round_robin(),
                     adversary(MovementAdversary::Kind::fixed_fraction, 0.1,
                               1.5),
                     1, limits(10));
      },
      "fraction must be in (0, 1]");

  SchedulerPolicy incomplete;
  incomplete.kind = SchedulerPolicy::Kind::scripted;
  incomplete.script = {0, 1};
  expect_invalid(
      [&] { dancing::run(choreo, start, incomplete, rigid(), 1, limits(10)); },
      "scripted schedule must include every robot");

  SchedulerPolicy unknown;
  unknown.kind = SchedulerPolicy::Kind::scripted;
  unknown.script = {0, 1, 5};
  expect_invalid(
      [&] { dancing::run(choreo, start, unknown, rigid(), 1, limits(10)); },
      "scripted schedule activates an unknown robot");
}

// ---------------------------------------------------------------------------
// Trace serialization

TEST(TraceIo, RoundTripsThroughStreamsAndFiles) {
  const auto choreo = tiny_choreography();
  const Trace t = dancing::run(choreo, pinned_triangle(), round_robin(),
                               adversary(MovementAdversary::Kind::random, 0.1,
                                         1.0, 3),
                               7, limits(5000));
  std::stringstream buf;
  dancing::write_trace(t, buf);
  const Trace back = dancing::read_trace(buf);
  expect_trace_equal(t, back);

  const std::string path =
      (std::filesystem::temp_directory_path() / "dancing_trace_test.jsonl")
          .string();
  dancing::write_trace(t, path);
  const Trace from_file = dancing::read_trace_file(path);
  expect_trace_equal(t, from_file);
  std::remove(path.c_str());
}

TEST(TraceIo, RejectsMalformedStreams) {
  const auto expect_malformed = [](const std::string& text) {
    std::istringstream in(text);
    EXPECT_THROW(
        {
          try {
            dancing::read_trace(in);
          } catch (const std::runtime_error& e) {
            EXPECT_STREQ(e.what(), "trace file: malformed record");
            throw;
          }
        },
        std::runtime_error);
  };
  expect_malformed("this is not json\n");
  expect_malformed("[1,2,3]\n");
  expect_malformed("{\"no_type\":1}\n");
  expect_malformed("{\"type\":\"mystery\"}\n");
  expect_malformed("");  // header missing entirely
  expect_malformed(
      "{\"type\":\"header\",\"n\":3}\n");  // header missing fields
  // Event with an unknown phase name.
  expect_malformed(
      "{\"type\":\"header\",\"n\":3,\"k\":5,\"delta\":0.0,\"periodic\":false,"
      "\"pattern_count\":1,\"scheduler\":\"round_robin\",\"scheduler_seed\":0,"
      "\"adversary\":\"rigid\",\"adversary_seed\":0,\"fraction\":1.0,"
      "\"frame_seed\":0,\"max_rounds\":10,\"max_periods\":3}\n"
      "{\"type\":\"event\",\"round\":0,\"robot\":0,\"from_x\":0.0,\"from_y\":"
      "0.0,\"to_x\":0.0,\"to_y\":0.0,\"old_color\":1,\"new_color\":1,"
      "\"phase\":\"phase9\",\"reset\":false,\"epoch\":0,\"counter\":-1,"
      "\"formed\":-1}\n");

  EXPECT_THROW(
      {
        try {
          dancing::read_trace_file("/nonexistent/nowhere.jsonl");
        } catch (const std::runtime_error& e) {
          EXPECT_STREQ(e.what(),
                       "cannot open trace file: /nonexistent/nowhere.jsonl");
          throw;
        }
      },
      std::runtime_error);
}

TEST(PatternEvents, DetectsTamperedTraces) {
  const auto choreo = tiny_choreography();
  Trace t = dancing::run(choreo, pinned_triangle(), round_robin(), rigid(), 7,
                         limits(5000));
  ASSERT_EQ(t.formations.size(), 1u);

  const auto expect_out_of_order = [&](const Trace& bad) {
    EXPECT_THROW(
        {
          try {
            dancing::pattern_events(bad, choreo);
          } catch (const std::runtime_error& e) {
            EXPECT_STREQ(e.what(), "formation events out of order");
            throw;
          }
        },
        std::runtime_error);
  };

  Trace wrong_round = t;
  wrong_round.formations[0].round += 1;
  expect_out_of_order(wrong_round);

  Trace wrong_index = t;
  wrong_index.formations[0].index = 7;
  expect_out_of_order(wrong_index);

  Trace invented = t;
  invented.formations.push_back({0, t.rounds + 5});
  expect_out_of_order(invented);
}

// ---------------------------------------------------------------------------
// Epoch accounting

TEST(EpochStats, SegmentsTileTheRunAndBoundTheCounterWork) {
  const ChoreographyFile choreo = testsup::showcase_choreography();
  const Configuration start = testsup::scatter(choreo.n, 4242);
  const Trace t = dancing::run(choreo, start, round_robin(), rigid(), 99,
                               limits(300000));
  ASSERT_EQ(t.status, RunStatus::done);
  const auto stats = dancing::epoch_stats(t);
  ASSERT_FALSE(stats.segments.empty());

  // Segments tile the rounds exactly.
  EXPECT_EQ(stats.segments.front().first_round, 0);
  for (std::size_t i = 1; i < stats.segments.size(); ++i) {
    EXPECT_EQ(stats.segments[i].first_round,
              stats.segments[i - 1].last_round + 1);
  }
  EXPECT_EQ(stats.segments.back().last_round, t.rounds - 1);

  const std::int64_t n = choreo.n;
  std::int64_t prev_counter = -1;
  for (const auto& seg : stats.segments) {
    // Round-robin pins the epoch count of a segment to its length.
    const std::int64_t len = seg.last_round - seg.first_round + 1;
    EXPECT_EQ(seg.epochs, (len + n - 1) / n);
    // The choreography index never regresses in a finite run.
    EXPECT_GE(seg.counter, prev_counter);
    prev_counter = seg.counter;
    // A counter update is a single recoloring: within one epoch.
    if (seg.phase == dancing::PhaseId::phase3 && !seg.reset) {
      EXPECT_EQ(seg.epochs, 1);
    }
  }
  EXPECT_EQ(stats.segments.back().phase, dancing::PhaseId::done);

  // One supporting circle per formation; only the closing gather collapses.
  const std::size_t q = choreo.choreography.patterns.size();
  ASSERT_EQ(stats.circles.size(), q);
  for (std::size_t i = 0; i < q; ++i) {
    EXPECT_EQ(stats.circles[i].index, i);
    EXPECT_EQ(stats.circles[i].is_point, i + 1 == q);
    if (!stats.circles[i].is_point) {
      EXPECT_GT(stats.circles[i].radius, 0.0);
    }
    // Concentric through the whole performance.
    const double tol = 1e-6 * std::max(stats.circles[0].radius, 1e-12);
    EXPECT_NEAR(stats.circles[i].center.x, stats.circles[0].center.x, tol);
    EXPECT_NEAR(stats.circles[i].center.y, stats.circles[0].center.y, tol);
  }
}

}  // namespace
