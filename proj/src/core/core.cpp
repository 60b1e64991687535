#include "cbp/core.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace cbp {

Color::Color(std::string token) : token_(std::move(token)) {
  if (token_.empty()) throw std::invalid_argument("color token must not be empty");
  for (unsigned char ch : token_) {
    if (std::isspace(ch)) throw std::invalid_argument("color token contains whitespace: '" + token_ + "'");
  }
}

Size::Size(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (sgn(value_) < 0 || value_ > 1) {
    throw std::out_of_range("size " + value_.get_str() + " outside [0,1]");
  }
}

Size::Size(long numerator, long denominator) : Size(Rational(numerator, denominator)) {}

const Item& Instance::add(Color color, Size size) {
  items_.push_back(Item{std::move(size), std::move(color), items_.size() + 1});
  return items_.back();
}

const Item& Instance::at(std::size_t index) const {
  if (index == 0 || index > items_.size()) {
    throw std::out_of_range("item index " + std::to_string(index) + " out of range");
  }
  return items_[index - 1];
}

bool Instance::all_zero_size() const {
  return std::all_of(items_.begin(), items_.end(), [](const Item& it) { return it.size.is_zero(); });
}

std::vector<Color> Instance::colors() const {
  std::set<Color> seen;
  for (const auto& item : items_) seen.insert(item.color);
  return {seen.begin(), seen.end()};
}

bool can_accept(const Bin& bin, const Item& item) {
  if (bin.empty()) return true;
  if (bin.last_color() == item.color) return false;
  return bin.load() + item.size.value() <= 1;
}

void Bin::push(const Item& item) {
  if (!can_accept(*this, item)) {
    throw std::logic_error("item " + std::to_string(item.index) + " does not fit bin");
  }
  contents_.push_back(item.index);
  load_ += item.size.value();
  last_color_ = item.color;
}

std::size_t Packing::place(const Item& item, std::optional<std::size_t> bin) {
  if (assignment_.contains(item.index)) {
    throw std::logic_error("item " + std::to_string(item.index) + " already placed");
  }
  std::size_t target;
  if (bin) {
    if (*bin >= bins_.size()) throw std::logic_error("bin index out of range");
    target = *bin;
  } else {
    target = bins_.size();
    bins_.emplace_back();
  }
  Bin& b = bins_[target];
  std::optional<Color> previous = b.last_color();
  b.push(item);
  if (previous) {
    auto it = color_counts_.find(*previous);
    if (--it->second == 0) color_counts_.erase(it);
  }
  ++color_counts_[item.color];
  assignment_[item.index] = Placement{target, b.item_count() - 1};
  return target;
}

std::optional<Placement> Packing::placement_of(std::size_t item_index) const {
  auto it = assignment_.find(item_index);
  if (it == assignment_.end()) return std::nullopt;
  return it->second;
}

std::size_t Packing::bins_with_last_color(const Color& color) const {
  auto it = color_counts_.find(color);
  return it == color_counts_.end() ? 0 : it->second;
}

Layout Packing::layout() const {
  Layout out;
  out.reserve(bins_.size());
  for (const auto& b : bins_) out.emplace_back(b.contents().begin(), b.contents().end());
  return out;
}

Packing Packing::from_layout(const Instance& instance, const Layout& layout) {
  if (auto result = validate_packing(instance, layout); !result) {
    throw std::invalid_argument("invalid layout: " + result.violation->message);
  }
  // Bins are opened in order of their first item so that replaying in index
  // order reproduces the layout's bin numbering.
  std::vector<std::pair<std::size_t, std::size_t>> where(instance.size() + 1);
  for (std::size_t b = 0; b < layout.size(); ++b) {
    for (std::size_t p = 0; p < layout[b].size(); ++p) where[layout[b][p]] = {b, p};
  }
  std::vector<std::size_t> order(layout.size());
  for (std::size_t b = 0; b < layout.size(); ++b) order[b] = b;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return layout[a][0] < layout[b][0]; });
  std::vector<std::size_t> opened_as(layout.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) opened_as[order[rank]] = rank;

  Packing packing;
  for (const auto& item : instance.items()) {
    auto [b, p] = where[item.index];
    packing.place(item, p == 0 ? std::nullopt : std::optional<std::size_t>(opened_as[b]));
  }
  return packing;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::capacity: return "capacity";
    case ViolationKind::color_adjacency: return "color-adjacency";
    case ViolationKind::order: return "order";
    case ViolationKind::missing_item: return "missing-item";
    case ViolationKind::duplicate_item: return "duplicate-item";
    case ViolationKind::unknown_item: return "unknown-item";
    case ViolationKind::empty_bin: return "empty-bin";
  }
  return "unknown";
}

namespace {

ValidationResult fail(ViolationKind kind, std::size_t bin, std::size_t position, std::size_t item,
                      const std::string& what) {
  Violation v{kind, bin, position, item,
              std::string(to_string(kind)) + " violation at bin " + std::to_string(bin + 1) + " position " +
                  std::to_string(position + 1) + ": " + what};
  return ValidationResult{std::move(v)};
}

}  // namespace

ValidationResult validate_packing(const Instance& instance, const Layout& layout) {
  const std::size_t n = instance.size();
  std::vector<bool> seen(n + 1, false);
  for (std::size_t b = 0; b < layout.size(); ++b) {
    const auto& contents = layout[b];
    if (contents.empty()) return fail(ViolationKind::empty_bin, b, 0, 0, "bin holds no items");
    Rational load = 0;
    for (std::size_t p = 0; p < contents.size(); ++p) {
      const std::size_t idx = contents[p];
      if (idx == 0 || idx > n) {
        return fail(ViolationKind::unknown_item, b, p, idx, "item " + std::to_string(idx) + " not in instance");
      }
      if (seen[idx]) {
        return fail(ViolationKind::duplicate_item, b, p, idx, "item " + std::to_string(idx) + " packed twice");
      }
      seen[idx] = true;
      const Item& item = instance.at(idx);
      if (p > 0) {
        const std::size_t prev = contents[p - 1];
        if (prev >= idx) {
          return fail(ViolationKind::order, b, p, idx,
                      "item " + std::to_string(idx) + " follows item " + std::to_string(prev));
        }
        if (instance.at(prev).color == item.color) {
          return fail(ViolationKind::color_adjacency, b, p, idx,
                      "items " + std::to_string(prev) + " and " + std::to_string(idx) + " share color " +
                          item.color.token());
        }
      }
      load += item.size.value();
      if (load > 1) {
        return fail(ViolationKind::capacity, b, p, idx, "load " + load.get_str() + " exceeds 1");
      }
    }
  }
  for (std::size_t idx = 1; idx <= n; ++idx) {
    if (!seen[idx]) {
      Violation v{ViolationKind::missing_item, 0, 0, idx,
                  "missing-item violation: item " + std::to_string(idx) + " is not packed"};
      return ValidationResult{std::move(v)};
    }
  }
  return {};
}

ValidationResult validate_packing(const Instance& instance, const Packing& packing) {
  return validate_packing(instance, packing.layout());
}

}  // namespace cbp
