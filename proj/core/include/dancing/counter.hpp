#pragma once

// Composition Gray codes: cyclic-free enumeration of all weak compositions
// of a population m into kprime parts such that consecutive entries differ
// by moving exactly one unit between two parts. The swarm uses an entry as a
// distributed counter: part j holds the number of robots showing color j.

#include <cstdint>
#include <map>
#include <vector>

namespace dancing {

// (x_1, ..., x_kprime), x_j >= 0, sum = m.
using CompositionVector = std::vector<int>;

class GrayList {
 public:
  GrayList(int population, int color_count,
           std::vector<CompositionVector> entries);

  int population() const { return population_; }
  int color_count() const { return color_count_; }
  const std::vector<CompositionVector>& entries() const { return entries_; }

  // Position of x in the list, or npos when x is not an entry.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find(const CompositionVector& x) const;

 private:
  int population_;
  int color_count_;
  std::vector<CompositionVector> entries_;
  std::map<CompositionVector, std::size_t> index_;
};

// Builds the full Gray list for population m and kprime >= 2 colors.
// The construction is recursive: the two-color base lists (m,0),(m-1,1),...,
// (0,m); each additional color appends a final coordinate l = 0..m to the
// sub-list for population m-l, reversing the sub-list for odd l so that the
// seams stay adjacent. Throws std::invalid_argument("at least two colors
// required") when kprime < 2, and std::invalid_argument for m < 0.
GrayList gray_list(int m, int kprime);

// Position of x in g. Throws std::invalid_argument("not a valid counter
// state") when x is not an entry of g.
std::size_t index_of(const GrayList& g, const CompositionVector& x);

// The color pair realizing the step from x to its successor: part dec_color
// loses one unit, part inc_color gains one. Indices are 1-based (color
// numbers). Throws std::runtime_error("counter exhausted") on the last
// entry and std::invalid_argument("not a valid counter state") when x is
// not an entry.
struct IncrementStep {
  int dec_color = 0;
  int inc_color = 0;
};
IncrementStep increment_step(const GrayList& g, const CompositionVector& x);

// Number of weak compositions of m into kprime parts:
// C(m + kprime - 1, kprime - 1), computed with checked 64-bit arithmetic.
// Throws std::overflow_error on overflow; std::invalid_argument for m < 0
// or kprime < 1.
std::int64_t capacity(int m, int kprime);

}  // namespace dancing
