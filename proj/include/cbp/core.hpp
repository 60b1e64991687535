#pragma once

// Domain model for colorful bin packing: colored items of exact rational
// size, ordered instances, unit-capacity bins and packings.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cbp {

using Rational = mpq_class;

// mpq_class(num, den) leaves the fraction unreduced; comparisons need it reduced.
inline Rational ratio(const mpz_class& numerator, const mpz_class& denominator) {
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

// An opaque color tag. Tokens are non-empty and whitespace-free; the lexical
// order is only ever used to break ties deterministically.
class Color {
 public:
  Color() = default;
  explicit Color(std::string token);

  const std::string& token() const { return token_; }

  friend auto operator<=>(const Color&, const Color&) = default;
  friend bool operator==(const Color&, const Color&) = default;

 private:
  std::string token_;
};

// Exact item size in [0, 1].
class Size {
 public:
  Size() = default;
  // Throws std::out_of_range unless 0 <= value <= 1.
  explicit Size(Rational value);
  Size(long numerator, long denominator);

  const Rational& value() const { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }

  static Size zero() { return Size(); }
  static Size one() { return Size(1, 1); }

  friend bool operator==(const Size& a, const Size& b) { return a.value_ == b.value_; }
  friend bool operator<(const Size& a, const Size& b) { return a.value_ < b.value_; }

 private:
  Rational value_{0};
};

struct Item {
  Size size;
  Color color;
  std::size_t index = 0;  // 1-based position in the owning instance

  friend bool operator==(const Item&, const Item&) = default;
};

// The ordered input sequence. Item indices are always 1..n.
class Instance {
 public:
  Instance() = default;

  const Item& add(Color color, Size size);

  std::span<const Item> items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  // 1-based access.
  const Item& at(std::size_t index) const;
  bool all_zero_size() const;
  // Distinct colors in token order.
  std::vector<Color> colors() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Item> items_;
};

class Bin {
 public:
  // Item indices in packing order.
  std::span<const std::size_t> contents() const { return contents_; }
  bool empty() const { return contents_.empty(); }
  std::size_t item_count() const { return contents_.size(); }
  const Rational& load() const { return load_; }
  Rational residual() const { return 1 - load_; }
  const std::optional<Color>& last_color() const { return last_color_; }

  // Precondition: can_accept(*this, item). Throws std::logic_error otherwise.
  void push(const Item& item);

 private:
  std::vector<std::size_t> contents_;
  Rational load_{0};
  std::optional<Color> last_color_;
};

// True iff the bin is empty, or its last color differs from the item's and
// the item fits (load + size <= 1).
bool can_accept(const Bin& bin, const Item& item);

struct Placement {
  std::size_t bin = 0;       // 0-based bin index
  std::size_t position = 0;  // 0-based position within the bin

  friend bool operator==(const Placement&, const Placement&) = default;
};

// Bin contents as plain item-index lists, the form used for certificates
// and for validating packings of unknown provenance.
using Layout = std::vector<std::vector<std::size_t>>;

class Packing {
 public:
  Packing() = default;

  // Places item into bin `bin`, or into a freshly opened bin when nullopt.
  // Returns the index of the receiving bin. Throws std::logic_error when the
  // placement is infeasible.
  std::size_t place(const Item& item, std::optional<std::size_t> bin);

  std::span<const Bin> bins() const { return bins_; }
  const Bin& bin(std::size_t index) const { return bins_.at(index); }
  std::size_t bin_count() const { return bins_.size(); }
  std::size_t item_count() const { return assignment_.size(); }
  std::optional<Placement> placement_of(std::size_t item_index) const;

  // Number of bins per last color.
  const std::map<Color, std::size_t>& bins_by_last_color() const { return color_counts_; }
  std::size_t bins_with_last_color(const Color& color) const;

  Layout layout() const;

  // Builds a packing by replaying `layout` against `instance`, placing
  // items in index order. Throws std::invalid_argument when the layout
  // does not validate.
  static Packing from_layout(const Instance& instance, const Layout& layout);

 private:
  std::vector<Bin> bins_;
  std::map<std::size_t, Placement> assignment_;
  std::map<Color, std::size_t> color_counts_;
};

enum class ViolationKind { capacity, color_adjacency, order, missing_item, duplicate_item, unknown_item, empty_bin };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t bin = 0;       // 0-based
  std::size_t position = 0;  // 0-based
  std::size_t item = 0;      // offending item index, when meaningful
  std::string message;
};

struct ValidationResult {
  std::optional<Violation> violation;

  bool ok() const { return !violation.has_value(); }
  explicit operator bool() const { return ok(); }
};

ValidationResult validate_packing(const Instance& instance, const Layout& layout);
ValidationResult validate_packing(const Instance& instance, const Packing& packing);

}  // namespace cbp
