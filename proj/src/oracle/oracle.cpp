#include "cbp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cbp/algorithms.hpp"
#include "cbp/bounds.hpp"

namespace cbp {

namespace {

using Clock = std::chrono::steady_clock;

struct Timeout {};

struct VectorHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Sizes rescaled to integers over the least common denominator, and colors
// interned to small ids.
struct ScaledInstance {
  std::int64_t capacity = 1;
  std::vector<std::int64_t> size;
  std::vector<std::int64_t> color;
};

constexpr std::int64_t kMaxCapacity = std::int64_t{1} << 52;

std::optional<ScaledInstance> scale(const Instance& instance) {
  mpz_class lcm = 1;
  for (const auto& item : instance.items()) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), item.size.value().get_den_mpz_t());
    if (lcm > kMaxCapacity) return std::nullopt;
  }
  ScaledInstance out;
  out.capacity = lcm.get_si();
  std::map<Color, std::int64_t> ids;
  for (const auto& item : instance.items()) {
    mpz_class scaled = item.size.value().get_num() * (lcm / item.size.value().get_den());
    out.size.push_back(scaled.get_si());
    auto [it, inserted] = ids.emplace(item.color, static_cast<std::int64_t>(ids.size()));
    out.color.push_back(it->second);
  }
  return out;
}

// Upper bound from the cheapest of a few online runs; used as the initial
// incumbent and as the fallback answer when a limit is hit.
OptResult incumbent(const Instance& instance) {
  OptResult best;
  bool have = false;
  for (std::string_view token : {"ff", "bf", "bap"}) {
    RunResult r = run(token, instance);
    if (!have || r.packing.bin_count() < best.bins) {
      best.bins = r.packing.bin_count();
      best.certificate = std::move(r.packing);
      best.note = "online " + std::string(token) + " upper bound";
      have = true;
    }
  }
  return best;
}

class BranchAndBound {
 public:
  BranchAndBound(const Instance& instance, ScaledInstance scaled, Clock::time_point deadline)
      : instance_(instance), s_(std::move(scaled)), deadline_(deadline) {
    const std::size_t n = s_.size.size();
    suffix_sum_.assign(n + 1, 0);
    suffix_min_.assign(n + 1, std::numeric_limits<std::int64_t>::max());
    suffix_lb1_.assign(n + 1, 0);
    for (std::size_t p = n; p-- > 0;) {
      suffix_sum_[p] = suffix_sum_[p + 1] + s_.size[p];
      suffix_min_[p] = std::min(suffix_min_[p + 1], s_.size[p]);
      suffix_lb1_[p] = lb1(instance.items().subspan(p)).value;
    }
  }

  // Minimum number of additional bins for a fresh start if it is at most
  // `cap`; otherwise some value above `cap`.
  std::int64_t solve(std::int64_t cap) {
    std::vector<Bin> open;
    return search(0, open, cap);
  }

  // Rebuilds an optimal packing along the memoized choices. Only valid after
  // solve() returned a value within its cap.
  Packing reconstruct() const {
    Packing packing;
    std::vector<Bin> open;
    std::vector<std::int64_t> residual;
    std::vector<std::int64_t> color;
    for (std::size_t p = 0; p < s_.size.size(); ++p) {
      const Entry& e = memo_.at(key(p, open));
      const Item& item = instance_.items()[p];
      if (e.new_bin) {
        packing.place(item, std::nullopt);
        residual.push_back(s_.capacity - s_.size[p]);
        color.push_back(s_.color[p]);
      } else {
        std::size_t b = 0;
        while (residual[b] != e.choice.residual || color[b] != e.choice.color) ++b;
        packing.place(item, b);
        residual[b] -= s_.size[p];
        color[b] = s_.color[p];
      }
      open.clear();
      for (std::size_t b = 0; b < residual.size(); ++b) open.push_back({residual[b], color[b]});
      canonicalize(p + 1, open);
    }
    return packing;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Bin {
    std::int64_t residual;
    std::int64_t color;
    friend auto operator<=>(const Bin&, const Bin&) = default;
  };

  struct Entry {
    std::int64_t value = 0;
    bool exact = false;
    bool new_bin = false;
    Bin choice{0, 0};
  };

  // Bins too full for every remaining item are dropped; the rest sorted.
  void canonicalize(std::size_t p, std::vector<Bin>& open) const {
    const std::int64_t smallest = suffix_min_[p];
    std::erase_if(open, [&](const Bin& b) { return b.residual < smallest; });
    std::sort(open.begin(), open.end());
  }

  static std::vector<std::int64_t> key(std::size_t p, const std::vector<Bin>& open) {
    std::vector<std::int64_t> k;
    k.reserve(1 + 2 * open.size());
    k.push_back(static_cast<std::int64_t>(p));
    for (const auto& b : open) {
      k.push_back(b.residual);
      k.push_back(b.color);
    }
    return k;
  }

  std::int64_t lower_bound(std::size_t p, const std::vector<Bin>& open) const {
    std::int64_t room = 0;
    for (const auto& b : open) room += b.residual;
    const std::int64_t overflow = suffix_sum_[p] - room;
    const std::int64_t by_size = overflow > 0 ? (overflow + s_.capacity - 1) / s_.capacity : 0;
    const std::int64_t by_color = suffix_lb1_[p] - static_cast<std::int64_t>(open.size());
    return std::max<std::int64_t>({0, by_size, by_color});
  }

  std::int64_t search(std::size_t p, const std::vector<Bin>& open, std::int64_t cap) {
    if (p == s_.size.size()) return 0;
    if ((++nodes_ & 0xfff) == 0 && Clock::now() > deadline_) throw Timeout{};

    auto k = key(p, open);
    std::int64_t lb = lower_bound(p, open);
    if (auto it = memo_.find(k); it != memo_.end()) {
      if (it->second.exact || it->second.value > cap) return it->second.value;
      lb = std::max(lb, it->second.value);
    }
    if (lb > cap) {
      memo_[k] = Entry{lb};
      return lb;
    }

    const std::int64_t size = s_.size[p];
    const std::int64_t col = s_.color[p];
    std::int64_t bound = cap;
    std::optional<Entry> best;
    std::int64_t failed_min = std::numeric_limits<std::int64_t>::max();

    auto try_child = [&](std::vector<Bin> child, std::int64_t cost, bool new_bin, Bin choice) {
      if (cost > bound) {
        failed_min = std::min(failed_min, cost);
        return;
      }
      canonicalize(p + 1, child);
      const std::int64_t r = cost + search(p + 1, child, bound - cost);
      if (r <= bound) {
        best = Entry{r, true, new_bin, choice};
        bound = r - 1;
      } else {
        failed_min = std::min(failed_min, r);
      }
    };

    // Existing bins, largest residual first; identical bins are one branch.
    for (std::size_t idx = open.size(); idx-- > 0;) {
      const Bin& b = open[idx];
      if (idx + 1 < open.size() && open[idx + 1] == b) continue;
      if (b.color == col || b.residual < size) continue;
      std::vector<Bin> child = open;
      child[idx] = Bin{b.residual - size, col};
      try_child(std::move(child), 0, false, b);
      if (best && best->value == lb) break;
    }
    if (!best || best->value > lb) {
      std::vector<Bin> child = open;
      child.push_back(Bin{s_.capacity - size, col});
      try_child(std::move(child), 1, true, Bin{0, 0});
    }

    if (best) {
      memo_[k] = *best;
      return best->value;
    }
    const std::int64_t proven = std::max(failed_min, cap + 1);
    memo_[k] = Entry{proven};
    return proven;
  }

  const Instance& instance_;
  ScaledInstance s_;
  Clock::time_point deadline_;
  std::vector<std::int64_t> suffix_sum_;
  std::vector<std::int64_t> suffix_min_;
  std::vector<std::int64_t> suffix_lb1_;
  std::unordered_map<std::vector<std::int64_t>, Entry, VectorHash> memo_;
  std::uint64_t nodes_ = 0;
};

class ZeroSizeSolver {
 public:
  ZeroSizeSolver(const Instance& instance, std::optional<Clock::time_point> deadline)
      : instance_(instance), deadline_(deadline) {
    std::map<Color, std::int64_t> ids;
    for (const auto& item : instance.items()) {
      if (!item.size.is_zero()) throw std::invalid_argument("zero-size solver given a non-zero item");
      auto [it, inserted] = ids.emplace(item.color, static_cast<std::int64_t>(ids.size()));
      color_.push_back(it->second);
    }
    palette_ = ids.size();
  }

  std::int64_t solve() {
    std::vector<std::int64_t> counts(palette_, 0);
    return search(0, counts);
  }

  // Replays the optimal choices. Any bin whose last color matches the
  // recorded color class is interchangeable with the others of that class.
  Packing reconstruct() {
    Packing packing;
    std::vector<std::int64_t> counts(palette_, 0);
    std::vector<std::int64_t> bin_color;
    for (std::size_t p = 0; p < color_.size(); ++p) {
      const std::int64_t from = choice_.at(key(p, counts));
      const Item& item = instance_.items()[p];
      if (from < 0) {
        packing.place(item, std::nullopt);
        bin_color.push_back(color_[p]);
      } else {
        std::size_t b = 0;
        while (bin_color[b] != from) ++b;
        packing.place(item, b);
        bin_color[b] = color_[p];
        --counts[from];
      }
      ++counts[color_[p]];
    }
    return packing;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  static std::vector<std::int64_t> key(std::size_t p, const std::vector<std::int64_t>& counts) {
    std::vector<std::int64_t> k{static_cast<std::int64_t>(p)};
    k.insert(k.end(), counts.begin(), counts.end());
    return k;
  }

  std::int64_t search(std::size_t p, std::vector<std::int64_t>& counts) {
    if (p == color_.size()) return 0;
    if (deadline_ && (++nodes_ & 0xfff) == 0 && Clock::now() > *deadline_) throw Timeout{};
    auto k = key(p, counts);
    if (auto it = value_.find(k); it != value_.end()) return it->second;

    const std::int64_t c = color_[p];
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::int64_t best_from = -1;
    // Opening a bin while a compatible one exists never helps: the spare bin
    // could equally be opened later, when it is first needed.
    for (std::int64_t from = 0; from < static_cast<std::int64_t>(palette_); ++from) {
      if (from == c || counts[from] == 0) continue;
      --counts[from];
      ++counts[c];
      const std::int64_t r = search(p + 1, counts);
      --counts[c];
      ++counts[from];
      if (r < best) {
        best = r;
        best_from = from;
      }
    }
    if (best_from < 0) {
      ++counts[c];
      best = 1 + search(p + 1, counts);
      --counts[c];
    }
    value_[k] = best;
    choice_[k] = best_from;
    return best;
  }

  const Instance& instance_;
  std::optional<Clock::time_point> deadline_;
  std::vector<std::int64_t> color_;
  std::size_t palette_ = 0;
  std::unordered_map<std::vector<std::int64_t>, std::int64_t, VectorHash> value_;
  std::unordered_map<std::vector<std::int64_t>, std::int64_t, VectorHash> choice_;
  std::uint64_t nodes_ = 0;
};

OptResult limit_exceeded(const Instance& instance, const std::string& why) {
  OptResult result = incumbent(instance);
  result.exact = false;
  result.note = "limit exceeded (" + why + "); " + result.note;
  return result;
}

OptResult zero_size_with_deadline(const Instance& instance, std::optional<Clock::time_point> deadline) {
  ZeroSizeSolver solver(instance, deadline);
  OptResult result;
  result.bins = static_cast<std::size_t>(solver.solve());
  result.certificate = solver.reconstruct();
  result.exact = true;
  result.nodes = solver.nodes();
  result.note = "zero-size dynamic program";
  return result;
}

}  // namespace

OptResult opt_branch_and_bound(const Instance& instance, const OracleLimits& limits) {
  if (instance.size() > limits.max_items_general) {
    return limit_exceeded(instance, std::to_string(instance.size()) + " items > " +
                                        std::to_string(limits.max_items_general));
  }
  if (limits.budget.count() <= 0) return limit_exceeded(instance, "time budget");
  auto scaled = scale(instance);
  if (!scaled) return limit_exceeded(instance, "common denominator too large");

  OptResult upper = incumbent(instance);
  BranchAndBound search(instance, std::move(*scaled), Clock::now() + limits.budget);
  try {
    const std::int64_t cap = static_cast<std::int64_t>(upper.bins) - 1;
    const std::int64_t found = search.solve(cap);
    if (found <= cap) {
      upper.bins = static_cast<std::size_t>(found);
      upper.certificate = search.reconstruct();
      upper.note = "branch and bound";
    } else {
      upper.note = "branch and bound confirmed " + upper.note;
    }
    upper.exact = true;
  } catch (const Timeout&) {
    upper.exact = false;
    upper.note = "limit exceeded (time budget); " + upper.note;
  }
  upper.nodes = search.nodes();
  return upper;
}

OptResult solve_zero_size(const Instance& instance) { return zero_size_with_deadline(instance, std::nullopt); }

std::size_t opt_zero_size(const Instance& instance) { return solve_zero_size(instance).bins; }

OptResult opt(const Instance& instance, const OracleLimits& limits) {
  if (limits.zero_size_fast_path && instance.all_zero_size()) {
    if (instance.size() > limits.max_items_zero) {
      return limit_exceeded(instance, std::to_string(instance.size()) + " zero-size items > " +
                                          std::to_string(limits.max_items_zero));
    }
    if (limits.budget.count() <= 0) return limit_exceeded(instance, "time budget");
    try {
      return zero_size_with_deadline(instance, Clock::now() + limits.budget);
    } catch (const Timeout&) {
      return limit_exceeded(instance, "time budget");
    }
  }
  return opt_branch_and_bound(instance, limits);
}

namespace {

void enumerate(const Instance& instance, std::size_t p, std::vector<cbp::Bin>& bins, std::size_t& best) {
  if (p == instance.size()) {
    best = std::min(best, bins.size());
    return;
  }
  const Item& item = instance.items()[p];
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (!can_accept(bins[b], item)) continue;
    cbp::Bin saved = bins[b];
    bins[b].push(item);
    enumerate(instance, p + 1, bins, best);
    bins[b] = std::move(saved);
  }
  bins.emplace_back();
  bins.back().push(item);
  enumerate(instance, p + 1, bins, best);
  bins.pop_back();
}

}  // namespace

std::size_t opt_exhaustive(const Instance& instance) {
  if (instance.size() > kExhaustiveMaxItems) {
    throw std::length_error("opt_exhaustive limited to " + std::to_string(kExhaustiveMaxItems) + " items");
  }
  std::vector<cbp::Bin> bins;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  if (instance.empty()) return 0;
  enumerate(instance, 0, bins, best);
  return best;
}

}  // namespace cbp
