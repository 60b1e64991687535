#pragma once

// Instance builders and reference oracles shared by the unit tests. The
// oracles here share no code with the library routes they check.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cbp/core.hpp"
#include "cbp/instance_io.hpp"

namespace cbp::testing {

inline Instance zero_sized(const std::vector<std::string>& colors) {
  Instance instance;
  for (const auto& c : colors) instance.add(Color(c), Size::zero());
  return instance;
}

inline Instance sized(const std::vector<std::pair<std::string, std::string>>& items) {
  Instance instance;
  for (const auto& [c, s] : items) instance.add(Color(c), Size(parse_rational(s)));
  return instance;
}

// Maximum over all intervals and colors of 2 * count - length, by direct
// counting.
inline std::int64_t reference_lb1(const Instance& instance) {
  const auto items = instance.items();
  std::int64_t best = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::map<std::string, std::int64_t> count;
    for (std::size_t j = i; j < items.size(); ++j) {
      ++count[items[j].color.token()];
      const auto length = static_cast<std::int64_t>(j - i + 1);
      for (const auto& [color, c] : count) best = std::max(best, 2 * c - length);
    }
  }
  return best;
}

// Minimum number of blocks over all set partitions of the items (restricted
// growth strings) such that every block, read in input order, has total size
// at most one and no two consecutive items of one color.
inline std::size_t reference_opt(const Instance& instance) {
  const auto items = instance.items();
  const std::size_t n = items.size();
  if (n == 0) return 0;
  std::vector<std::size_t> label(n, 0);
  std::size_t best = std::numeric_limits<std::size_t>::max();

  auto feasible = [&](std::size_t blocks) {
    for (std::size_t b = 0; b < blocks; ++b) {
      Rational load = 0;
      const Color* last = nullptr;
      for (std::size_t t = 0; t < n; ++t) {
        if (label[t] != b) continue;
        load += items[t].size.value();
        if (last && *last == items[t].color) return false;
        last = &items[t].color;
      }
      if (load > 1) return false;
    }
    return true;
  };

  // Iterative enumeration of restricted growth strings.
  std::vector<std::size_t> max_prefix(n, 0);
  while (true) {
    std::size_t blocks = 0;
    for (std::size_t t = 0; t < n; ++t) blocks = std::max(blocks, label[t] + 1);
    if (blocks < best && feasible(blocks)) best = blocks;

    std::size_t t = n - 1;
    while (t > 0 && label[t] == max_prefix[t - 1] + 1) --t;
    if (t == 0) break;
    ++label[t];
    for (std::size_t u = t; u < n; ++u) {
      if (u > t) label[u] = 0;
      max_prefix[u] = std::max(u > 0 ? max_prefix[u - 1] : 0, label[u]);
    }
  }
  return best;
}

}  // namespace cbp::testing
