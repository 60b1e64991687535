#pragma once

// Exact offline optimum for ordered colorful bin packing: the minimum number
// of bins over all packings that keep every bin in input order. Exponential;
// meant for small instances only.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>

#include "cbp/core.hpp"

namespace cbp {

struct OracleLimits {
  std::size_t max_items_general = 20;
  std::size_t max_items_zero = 48;
  std::chrono::milliseconds budget{10'000};  // <= 0: report limit exceeded without searching
  // Route all-zero-size instances to opt_zero_size.
  bool zero_size_fast_path = true;
};

struct OptResult {
  std::size_t bins = 0;
  // False when a limit was hit; `bins` is then only an upper bound
  // (witnessed by the certificate).
  bool exact = false;
  Packing certificate;
  std::string note;
  std::uint64_t nodes = 0;
};

OptResult opt(const Instance& instance, const OracleLimits& limits = {});

// Depth-first branch-and-bound over canonical open-bin states, regardless
// of whether sizes are zero.
OptResult opt_branch_and_bound(const Instance& instance, const OracleLimits& limits = {});

// All sizes zero: only the multiset of last colors matters, so the state is
// (position, open bins per color). Throws std::invalid_argument if any size
// is non-zero.
OptResult solve_zero_size(const Instance& instance);
std::size_t opt_zero_size(const Instance& instance);

inline constexpr std::size_t kExhaustiveMaxItems = 12;

// Plain enumeration of every order-respecting placement, with no
// memoization or pruning. Reference for the solvers above.
std::size_t opt_exhaustive(const Instance& instance);

}  // namespace cbp
