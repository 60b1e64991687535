#pragma once

// Offline lower bounds on the number of bins.
//
// lb0 is the total size. lb1 is the color-discrepancy bound: over every
// contiguous run of items i..j and every color c, the count of c minus the
// count of all other colors in the run.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "cbp/core.hpp"

namespace cbp {

struct Lb1Witness {
  std::size_t first = 0;  // 1-based, inclusive
  std::size_t last = 0;   // 1-based, inclusive
  Color color;

  friend bool operator==(const Lb1Witness&, const Lb1Witness&) = default;
};

struct Lb1Result {
  std::int64_t value = 0;
  std::optional<Lb1Witness> witness;  // lexicographically smallest (first, last, color)
};

Rational lb0(std::span<const Item> items);
inline Rational lb0(const Instance& instance) { return lb0(instance.items()); }

// O(n * colors): per color, a maximum-sum interval scan over the sequence
// with +1 for that color and -1 for every other item. Empty input gives 0
// with no witness.
Lb1Result lb1(std::span<const Item> items);
inline Lb1Result lb1(const Instance& instance) { return lb1(instance.items()); }

inline constexpr std::size_t kLb1BruteforceMaxItems = 2000;

// Direct enumeration over all (i, j, c). Throws std::length_error above
// kLb1BruteforceMaxItems items.
Lb1Result lb1_bruteforce(std::span<const Item> items);
inline Lb1Result lb1_bruteforce(const Instance& instance) { return lb1_bruteforce(instance.items()); }

// 2*C(i,j,c) - (j-i+1) evaluated directly on the instance.
std::int64_t lb1_term(const Instance& instance, const Lb1Witness& witness);

struct BoundsReport {
  Rational lb0;
  std::int64_t lb0_bins = 0;  // ceil(lb0)
  std::int64_t lb1 = 0;
  std::optional<Lb1Witness> witness;
  std::int64_t combined = 0;  // max(lb0_bins, lb1, [n > 0])
};

BoundsReport compute_bounds(const Instance& instance);

std::int64_t ceil_to_int(const Rational& value);

}  // namespace cbp
