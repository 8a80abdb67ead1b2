#pragma once

// Choreography documents: an ordered pattern list with a periodicity flag,
// their structural validation, and the feasibility bound tying the palette
// size to the longest performable choreography.

#include <cstdint>
#include <string>
#include <vector>

#include "dancing/geometry.hpp"

namespace dancing {

struct Choreography {
  std::vector<Pattern> patterns;
  bool periodic = false;

  std::size_t length() const { return patterns.size(); }
};

// A choreography together with the swarm and palette sizes it is written
// for, as stored on disk.
struct ChoreographyFile {
  Choreography choreography;
  int n = 0;
  int k = 0;
};

// Longest feasible choreography length/period for n robots and k colors:
// the number of counter states of n-3 robots over k-3 colors. Throws
// std::invalid_argument ("n must be at least 3" / "k must be at least 4").
std::int64_t q_max(int n, int k);

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Checks every feasibility condition and reports all violations: swarm or
// palette too small, per-pattern cardinality mismatches, consecutive
// similarity (cyclically for periodic choreographies), sub-periodicity, and
// length beyond q_max.
ValidationReport validate(const Choreography& c, int n, int k);

// Document format: a JSON object {"n", "k", "periodic", "patterns"} where
// patterns is a list of patterns, each a list of [x, y, cardinality]
// triples. Unknown fields are rejected. Parse failures throw
// std::runtime_error naming the offending field or position.
ChoreographyFile parse_choreography(const std::string& text);
ChoreographyFile load_choreography(const std::string& path);
std::string serialize_choreography(const ChoreographyFile& file);
void save_choreography(const ChoreographyFile& file, const std::string& path);

}  // namespace dancing
