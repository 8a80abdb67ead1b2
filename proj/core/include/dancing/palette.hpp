#pragma once

// Light colors available to the robots: a totally ordered set of k >= 4
// colors encoded as integers 1..k. Colors 1..k-3 are the counter colors held
// by non-leaders (1 = off, the initial color); the top three are the leader
// colors.

#include <stdexcept>

#include "dancing/geometry.hpp"

namespace dancing {

struct Palette {
  int k = 4;  // total number of colors

  static Palette with_total(int k) {
    if (k < 4) {
      throw std::invalid_argument("palette needs at least four colors");
    }
    return Palette{k};
  }

  int counter_colors() const { return k - 3; }
  int off() const { return 1; }
  int lambda1() const { return k - 2; }
  int lambda2() const { return k - 1; }
  int lambda3() const { return k; }

  bool valid(int color) const { return color >= 1 && color <= k; }
  bool is_counter(int color) const { return color >= 1 && color <= k - 3; }
  bool is_leader(int color) const { return color >= k - 2 && color <= k; }
};

// One robot as seen in a configuration or snapshot.
struct RobotState {
  Point position;
  int color = 1;
};

}  // namespace dancing
