#pragma once

// Balanced boolean strings over {0,1} ('0' opens, '1' closes), their minimal
// factorization, bracket matching, and the robot-to-projection assignment
// strings used while formation robots shift along the main diameter.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dancing/geometry.hpp"

namespace dancing {

// Count of 0s minus count of 1s in the length-i prefix. Throws
// std::out_of_range when i > |bits| and std::invalid_argument on characters
// outside {0,1}.
int prefix_delta(const std::string& bits, std::size_t i);

bool is_balanced(const std::string& bits);

// True when bits is balanced and no prefix has more 1s than 0s.
bool is_dyck(const std::string& bits);

// Splits a balanced string into its minimal balanced factors (cut at every
// return of the running delta to zero). Each factor is a well-formed bracket
// string read left-to-right or right-to-left. Throws std::invalid_argument
// ("unbalanced string") on unbalanced input.
std::vector<std::string> factorize(const std::string& bits);

// (open_index, close_index) pairs, 1-based, open < close.
using Matching = std::vector<std::pair<std::size_t, std::size_t>>;

// Pairs every closing 1 at position b with the nearest preceding 0 at equal
// nesting depth (positions are 1-based). Input must pass is_dyck; otherwise
// throws std::invalid_argument("not a Dyck word").
Matching match_brackets(const std::string& bits);

// One emitted symbol of an arrangement string, mapped back to its physical
// source: a robot ('1') or an uncovered projection ('0').
struct ArrangementSymbol {
  bool is_robot = false;
  std::size_t source = 0;  // index into the robots (resp. projections) input
  double position = 0.0;   // coordinate along the segment
};

struct ArrangementString {
  std::string bits;
  std::vector<ArrangementSymbol> symbols;  // parallel to bits
};

// Merges robot and projection coordinates along a segment (measured from the
// anchor end) into the boolean arrangement string: '1' per robot not sitting
// on a projection, '0' per projection not covered by a robot. A robot within
// eps of a projection cancels it (both omitted). Coincident inputs keep
// their input order ("unrolled" multiplicities become adjacent equal
// symbols).
ArrangementString arrangement_string(std::vector<double> robots,
                                     std::vector<double> projections,
                                     double eps = kDefaultEps);

// For the robot symbol at 1-based position robot_index of a balanced string,
// returns the 1-based position of the projection symbol it must reach:
// locate the minimal factor containing the index, orient it to read as a
// Dyck word (reverse when it starts with '1'), take the matched opening 0,
// and map back to original coordinates. Throws std::invalid_argument when
// the index does not hold a '1'.
std::size_t target_for(const std::string& bits, std::size_t robot_index);

}  // namespace dancing
