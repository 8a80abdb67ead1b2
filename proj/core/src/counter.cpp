#include "dancing/counter.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dancing {

GrayList::GrayList(int population, int color_count,
                   std::vector<CompositionVector> entries)
    : population_(population),
      color_count_(color_count),
      entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    index_.emplace(entries_[i], i);
  }
}

std::size_t GrayList::find(const CompositionVector& x) const {
  const auto it = index_.find(x);
  return it == index_.end() ? npos : it->second;
}

namespace {

std::vector<CompositionVector> build(int m, int kprime) {
  if (kprime == 2) {
    std::vector<CompositionVector> base;
    base.reserve(static_cast<std::size_t>(m) + 1);
    for (int a = 0; a <= m; ++a) base.push_back({m - a, a});
    return base;
  }
  std::vector<CompositionVector> out;
  for (int l = 0; l <= m; ++l) {
    std::vector<CompositionVector> sub = build(m - l, kprime - 1);
    if (l % 2 == 1) std::reverse(sub.begin(), sub.end());
    for (auto& entry : sub) {
      entry.push_back(l);
      out.push_back(std::move(entry));
    }
  }
  return out;
}

}  // namespace

GrayList gray_list(int m, int kprime) {
  if (kprime < 2) throw std::invalid_argument("at least two colors required");
  if (m < 0) throw std::invalid_argument("population must be nonnegative");
  return GrayList(m, kprime, build(m, kprime));
}

std::size_t index_of(const GrayList& g, const CompositionVector& x) {
  const std::size_t pos = g.find(x);
  if (pos == GrayList::npos) {
    throw std::invalid_argument("not a valid counter state");
  }
  return pos;
}

IncrementStep increment_step(const GrayList& g, const CompositionVector& x) {
  const std::size_t pos = index_of(g, x);
  if (pos + 1 == g.entries().size()) {
    throw std::runtime_error("counter exhausted");
  }
  const CompositionVector& next = g.entries()[pos + 1];
  IncrementStep step;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (next[j] == x[j] - 1) step.dec_color = static_cast<int>(j) + 1;
    if (next[j] == x[j] + 1) step.inc_color = static_cast<int>(j) + 1;
  }
  return step;
}

std::int64_t capacity(int m, int kprime) {
  if (m < 0) throw std::invalid_argument("population must be nonnegative");
  if (kprime < 1) throw std::invalid_argument("at least one color required");
  // C(m + kprime - 1, kprime - 1), built incrementally; each partial product
  // divided by i is exact.
  const int top = m + kprime - 1;
  const int pick = std::min(kprime - 1, m);
  __int128 result = 1;
  for (int i = 1; i <= pick; ++i) {
    result = result * (top - pick + i) / i;
    if (result > std::numeric_limits<std::int64_t>::max()) {
      throw std::overflow_error("capacity overflow");
    }
  }
  return static_cast<std::int64_t>(result);
}

}  // namespace dancing
