#pragma once

// The per-robot deterministic algorithm: given an egocentric snapshot and the
// choreography patterns expressed in the same frame, decide a destination and
// a color. Covers leader election, chiral-angle setup, pattern formation, and
// counter updates, and is a pure function of its arguments.

#include <cstddef>
#include <vector>

#include "dancing/chiral.hpp"
#include "dancing/geometry.hpp"
#include "dancing/palette.hpp"

namespace dancing {

inline constexpr std::size_t kNoRobot = static_cast<std::size_t>(-1);

struct Snapshot {
  // All robots as seen in the observer's coordinate frame.
  std::vector<RobotState> observed;
  // Which entry of observed is the observer itself.
  std::size_t self_index = 0;
  // The choreography's patterns. Only their shapes matter, but the
  // coincidence tolerance spans both the observed configuration and the
  // pattern coordinates, so the patterns should be expressed at a scale
  // comparable to the observed positions.
  std::vector<Pattern> pattern_input;
  // Whether the choreography repeats forever.
  bool periodic = false;
};

struct Action {
  // Destination in the observer's frame; the observer's own position encodes
  // a null movement.
  Point destination;
  int new_color = 1;
};

enum class PhaseId { phase0, phase1, phase2, phase3, done };

// Everything derivable from one snapshot: current phase, counter value,
// leader identities, the active chiral angle (from the leader markers, or
// re-derived from the enclosing-circle center while the first leader is
// heading to its final vertex), and whether the target pattern is formed.
struct SnapshotAnalysis {
  PhaseId phase = PhaseId::phase0;
  bool reset_marker = false;
  std::size_t counter_index = kNoRobot;
  std::size_t lambda1 = kNoRobot;
  std::size_t lambda2 = kNoRobot;
  std::size_t lambda3 = kNoRobot;
  bool has_angle = false;
  ChiralAngle angle{};
  bool formed = false;
  // Absolute coincidence tolerance used, proportional to snapshot scale.
  double tolerance = 0.0;
};

// Throws std::runtime_error("corrupt configuration") when the color multiset
// is not reachable by the algorithm (illegal leader counts, unreadable
// counter), and std::invalid_argument("snapshot is malformed") on structural
// defects (no robots, self_index out of range, empty pattern list).
SnapshotAnalysis analyze(const Snapshot& s, const Palette& palette);

PhaseId detect_phase(const Snapshot& s, const Palette& palette);

// The full dispatch: phase detection plus the phase-specific rule.
Action step(const Snapshot& s, const Palette& palette);

// Phase-specific rules; each requires detect_phase to report the matching
// phase and throws std::invalid_argument("snapshot is not in the required
// phase") otherwise.
Action phase0_rule(const Snapshot& s, const Palette& palette);
Action phase1_rule(const Snapshot& s, const Palette& palette);
Action phase2_rule(const Snapshot& s, const Palette& palette);
Action phase3_rule(const Snapshot& s, const Palette& palette);

}  // namespace dancing
