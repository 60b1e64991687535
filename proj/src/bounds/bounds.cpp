#include "cbp/bounds.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace cbp {

Rational lb0(std::span<const Item> items) {
  Rational total = 0;
  for (const auto& item : items) total += item.size.value();
  return total;
}

std::int64_t ceil_to_int(const Rational& value) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q.get_si();
}

namespace {

bool witness_less(const Lb1Witness& a, const Lb1Witness& b) {
  return std::tie(a.first, a.last, a.color) < std::tie(b.first, b.last, b.color);
}

void offer(Lb1Result& best, std::int64_t value, Lb1Witness witness) {
  if (!best.witness || value > best.value || (value == best.value && witness_less(witness, *best.witness))) {
    best.value = value;
    best.witness = std::move(witness);
  }
}

}  // namespace

Lb1Result lb1(std::span<const Item> items) {
  Lb1Result best;
  if (items.empty()) return best;
  std::set<Color> colors;
  for (const auto& item : items) colors.insert(item.color);

  for (const Color& color : colors) {
    // prefix[t] = sum of the first t signs. For an interval ending at t the
    // best start follows the earliest minimum of prefix[0..t-1]; that start
    // never moves backwards, so the first end reaching the maximum also
    // gives the smallest start.
    std::int64_t prefix = 0;
    std::int64_t min_prefix = 0;
    std::size_t min_at = 0;
    std::int64_t color_best = 0;
    std::size_t best_first = 0, best_last = 0;
    bool found = false;
    for (std::size_t t = 0; t < items.size(); ++t) {
      prefix += items[t].color == color ? 1 : -1;
      const std::int64_t value = prefix - min_prefix;
      if (!found || value > color_best) {
        found = true;
        color_best = value;
        best_first = min_at;
        best_last = t;
      }
      if (prefix < min_prefix) {
        min_prefix = prefix;
        min_at = t + 1;
      }
    }
    offer(best, color_best, Lb1Witness{items[best_first].index, items[best_last].index, color});
  }
  return best;
}

Lb1Result lb1_bruteforce(std::span<const Item> items) {
  if (items.size() > kLb1BruteforceMaxItems) {
    throw std::length_error("lb1_bruteforce limited to " + std::to_string(kLb1BruteforceMaxItems) + " items");
  }
  Lb1Result best;
  std::set<Color> colors;
  for (const auto& item : items) colors.insert(item.color);
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::map<Color, std::int64_t> count;
    for (std::size_t j = i; j < items.size(); ++j) {
      ++count[items[j].color];
      const auto length = static_cast<std::int64_t>(j - i + 1);
      for (const Color& c : colors) {
        auto it = count.find(c);
        const std::int64_t in_run = it == count.end() ? 0 : it->second;
        offer(best, 2 * in_run - length, Lb1Witness{items[i].index, items[j].index, c});
      }
    }
  }
  return best;
}

std::int64_t lb1_term(const Instance& instance, const Lb1Witness& witness) {
  std::int64_t in_run = 0;
  for (std::size_t t = witness.first; t <= witness.last; ++t) {
    if (instance.at(t).color == witness.color) ++in_run;
  }
  return 2 * in_run - static_cast<std::int64_t>(witness.last - witness.first + 1);
}

BoundsReport compute_bounds(const Instance& instance) {
  BoundsReport report;
  report.lb0 = lb0(instance);
  report.lb0_bins = ceil_to_int(report.lb0);
  auto one = lb1(instance);
  report.lb1 = one.value;
  report.witness = one.witness;
  report.combined = std::max({report.lb0_bins, report.lb1, std::int64_t{instance.empty() ? 0 : 1}});
  return report;
}

}  // namespace cbp
