#pragma once

// Sequential execution engine: one robot per round is activated by a fair
// scheduler, observes the world through a fresh random similarity (its local
// frame), runs the per-robot algorithm, and moves along a straight segment
// that a movement adversary may truncate (never before delta). Produces a
// deterministic, serializable trace with formation events and epoch
// accounting.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dancing/chorfile.hpp"
#include "dancing/dancer.hpp"
#include "dancing/geometry.hpp"
#include "dancing/palette.hpp"

namespace dancing {

struct Configuration {
  std::vector<RobotState> robots;  // global-frame positions and colors
  std::int64_t time = 0;           // round counter
};

struct SchedulerPolicy {
  enum class Kind { round_robin, random_fair, scripted };
  Kind kind = Kind::round_robin;
  std::uint64_t seed = 0;             // random_fair
  std::vector<std::size_t> script;    // scripted: repeated cyclically
  // Fairness window for random_fair; 0 means the default of 10n rounds.
  // Exceeding it is a harness error, not an algorithm failure.
  std::int64_t watchdog_window = 0;
};

struct MovementAdversary {
  enum class Kind { rigid, fixed_fraction, random, worst_stop };
  Kind kind = Kind::rigid;
  double fraction = 1.0;    // fixed_fraction: stop point as a share of travel
  std::uint64_t seed = 0;   // random
  double delta = 0.0;       // guaranteed minimum travel; > 0 unless rigid
};

struct RunLimits {
  std::int64_t max_rounds = 1'000'000;
  int max_periods = 3;  // periodic choreographies stop after this many cycles
};

struct TraceEvent {
  std::int64_t round = 0;
  std::size_t robot = 0;
  Point from;
  Point to;
  int old_color = 1;
  int new_color = 1;
  PhaseId phase = PhaseId::phase0;
  bool reset = false;        // inside the two-marker counter rewind
  std::int64_t epoch = 0;    // global epoch ordinal (all-activated windows)
  std::int64_t counter = -1;  // choreography index being formed; -1 unknown
  std::int64_t formed = -1;   // choreography index completed this round
};

struct FormationEvent {
  std::size_t index = 0;  // index into the pattern list (wraps per period)
  std::int64_t round = 0;
};

enum class RunStatus { done, periods_complete, timeout };

struct Trace {
  // Run parameters (stable serialized names documented in the repo).
  int n = 0;
  int k = 0;
  double delta = 0.0;
  bool periodic = false;
  std::size_t pattern_count = 0;
  std::string scheduler;
  std::uint64_t scheduler_seed = 0;
  std::string adversary;
  std::uint64_t adversary_seed = 0;
  double fraction = 1.0;
  std::uint64_t frame_seed = 0;
  std::int64_t max_rounds = 0;
  int max_periods = 0;

  std::vector<RobotState> initial;
  std::vector<TraceEvent> events;
  std::vector<FormationEvent> formations;
  RunStatus status = RunStatus::timeout;
  std::int64_t rounds = 0;
};

// Executes the choreography from the given all-off initial configuration.
// Throws std::invalid_argument on precondition violations (invalid
// choreography, size mismatch, non-off initial colors, bad scheduler or
// adversary parameters) and std::runtime_error("fairness watchdog
// violation") when the random scheduler starves a robot beyond its window.
// Reaching max_rounds is not an error: the trace reports status timeout.
Trace run(const ChoreographyFile& choreo, const Configuration& initial,
          const SchedulerPolicy& sched, const MovementAdversary& adv,
          std::uint64_t frame_seed, const RunLimits& limits);

// Re-derives the formation events from the trace by replaying it and testing
// shape similarity against the choreography in order. Throws
// std::runtime_error("formation events out of order") when the trace's
// recorded events disagree with the replay or are not in choreography order
// at strictly increasing rounds.
std::vector<FormationEvent> pattern_events(const Trace& t,
                                           const ChoreographyFile& choreo);

// Epoch accounting per (choreography index, phase) segment plus the
// supporting circle observed at each formation, for runtime-bound and
// concentricity checks.
struct PhaseSegment {
  std::int64_t counter = -1;  // choreography index; -1 before leaders exist
  PhaseId phase = PhaseId::phase0;
  bool reset = false;
  std::int64_t first_round = 0;
  std::int64_t last_round = 0;
  std::int64_t epochs = 0;  // all-activated windows, trailing partial counts
};

struct FormationCircle {
  std::size_t index = 0;
  std::int64_t round = 0;
  Point center;
  double radius = 0.0;
  bool is_point = false;  // gather patterns have a degenerate circle
};

struct EpochStats {
  std::vector<PhaseSegment> segments;
  std::vector<FormationCircle> circles;
};

EpochStats epoch_stats(const Trace& t);

// Line-delimited serialization: one JSON record per line (header, one record
// per initial robot, one per event, summary). Field names are stable.
void write_trace(const Trace& t, std::ostream& out);
void write_trace(const Trace& t, const std::string& path);
Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);

}  // namespace dancing
