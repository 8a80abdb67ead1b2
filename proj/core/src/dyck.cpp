#include "dancing/dyck.hpp"

#include <algorithm>
#include <stdexcept>

namespace dancing {
namespace {

void check_alphabet(const std::string& bits) {
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("string contains characters outside {0,1}");
    }
  }
}

}  // namespace

int prefix_delta(const std::string& bits, std::size_t i) {
  check_alphabet(bits);
  if (i > bits.size()) {
    throw std::out_of_range("prefix length exceeds string length");
  }
  int delta = 0;
  for (std::size_t j = 0; j < i; ++j) {
    delta += bits[j] == '0' ? 1 : -1;
  }
  return delta;
}

bool is_balanced(const std::string& bits) {
  check_alphabet(bits);
  return prefix_delta(bits, bits.size()) == 0;
}

bool is_dyck(const std::string& bits) {
  check_alphabet(bits);
  int delta = 0;
  for (char c : bits) {
    delta += c == '0' ? 1 : -1;
    if (delta < 0) return false;
  }
  return delta == 0;
}

std::vector<std::string> factorize(const std::string& bits) {
  if (!is_balanced(bits)) {
    throw std::invalid_argument("unbalanced string");
  }
  std::vector<std::string> factors;
  int delta = 0;
  std::size_t start = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    delta += bits[j] == '0' ? 1 : -1;
    if (delta == 0) {
      factors.push_back(bits.substr(start, j + 1 - start));
      start = j + 1;
    }
  }
  return factors;
}

Matching match_brackets(const std::string& bits) {
  if (!is_dyck(bits)) {
    throw std::invalid_argument("not a Dyck word");
  }
  // Running deltas: delta[i] is the delta of the length-i prefix.
  std::vector<int> delta(bits.size() + 1, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    delta[i + 1] = delta[i] + (bits[i] == '0' ? 1 : -1);
  }
  Matching pairs;
  for (std::size_t b = 1; b <= bits.size(); ++b) {
    if (bits[b - 1] != '1') continue;
    std::size_t open = 0;
    for (std::size_t a = b; a-- > 1;) {
      if (bits[a - 1] == '0' && delta[a] - 1 == delta[b]) {
        open = a;
        break;
      }
    }
    if (open == 0) {
      throw std::invalid_argument("not a Dyck word");
    }
    pairs.emplace_back(open, b);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

ArrangementString arrangement_string(std::vector<double> robots,
                                     std::vector<double> projections,
                                     double eps) {
  struct Entry {
    double position;
    bool is_robot;
    std::size_t source;
  };
  std::vector<Entry> entries;
  entries.reserve(robots.size() + projections.size());
  for (std::size_t i = 0; i < robots.size(); ++i) {
    entries.push_back({robots[i], true, i});
  }
  for (std::size_t i = 0; i < projections.size(); ++i) {
    entries.push_back({projections[i], false, i});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) {
                     return a.position < b.position;
                   });

  // A robot sitting on a projection covers it: cancel such pairs greedily in
  // coordinate order so only unmatched symbols are emitted.
  std::vector<bool> cancelled(entries.size(), false);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (cancelled[i] || !entries[i].is_robot) continue;
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (cancelled[j] || entries[j].is_robot) continue;
      if (std::abs(entries[i].position - entries[j].position) <= eps) {
        cancelled[i] = true;
        cancelled[j] = true;
        break;
      }
    }
  }

  ArrangementString out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (cancelled[i]) continue;
    out.bits.push_back(entries[i].is_robot ? '1' : '0');
    out.symbols.push_back({entries[i].is_robot, entries[i].source,
                           entries[i].position});
  }
  return out;
}

std::size_t target_for(const std::string& bits, std::size_t robot_index) {
  if (robot_index == 0 || robot_index > bits.size() ||
      bits[robot_index - 1] != '1') {
    throw std::invalid_argument("index does not hold a robot symbol");
  }
  const std::vector<std::string> factors = factorize(bits);
  std::size_t offset = 0;  // symbols before the current factor
  for (const std::string& factor : factors) {
    if (robot_index > offset + factor.size()) {
      offset += factor.size();
      continue;
    }
    const std::size_t local = robot_index - offset;  // 1-based within factor
    if (factor.front() == '0') {
      for (const auto& [open, close] : match_brackets(factor)) {
        if (close == local) return offset + open;
      }
    } else {
      std::string reversed(factor.rbegin(), factor.rend());
      const std::size_t local_rev = factor.size() + 1 - local;
      for (const auto& [open, close] : match_brackets(reversed)) {
        if (close == local_rev) return offset + factor.size() + 1 - open;
      }
    }
    throw std::invalid_argument("not a Dyck word");
  }
  throw std::invalid_argument("index does not hold a robot symbol");
}

}  // namespace dancing
