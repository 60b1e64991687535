#pragma once

// Online algorithms and the stepping engine that drives them.
//
// An algorithm sees one item at a time together with read access to the
// packing built so far, and returns where the item goes. The engine checks
// feasibility, commits the placement and records a trace.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbp/core.hpp"

namespace cbp {

// Tie resolution shared by all algorithms.
//
//   min_index  lowest index wins; BaP color ties go to the color owning the
//              lowest-indexed qualifying pseudo-bin.
//   max_index  highest index wins, mirrored.
//   min_color  BaP color ties go to the smallest color token; everything
//              else uses the lowest index.
enum class TieBreak { min_index, max_index, min_color };

std::string_view to_string(TieBreak rule);
std::optional<TieBreak> parse_tie_break(std::string_view text);

struct Decision {
  std::optional<std::size_t> bin;         // nullopt: open a new bin
  std::optional<std::size_t> pseudo_bin;  // set by pseudo-bin algorithms

  static Decision new_bin() { return {}; }
  static Decision into(std::size_t bin) { return {bin, std::nullopt}; }
};

struct PseudoBin {
  std::vector<std::size_t> bins;  // indices into the packing
  Color color;                    // color of the last assigned item
};

// Pseudo-bin bookkeeping with a per-color index so both Pseudo and BaP can
// pick candidates without scanning every pseudo-bin.
class PseudoBinState {
 public:
  std::span<const PseudoBin> pseudo_bins() const { return pseudo_bins_; }
  const PseudoBin& at(std::size_t j) const { return pseudo_bins_.at(j); }
  std::size_t k() const { return pseudo_bins_.size(); }
  // Pseudo-bin indices grouped by current color.
  const std::map<Color, std::set<std::size_t>>& by_color() const { return by_color_; }
  std::size_t count(const Color& color) const;

  std::size_t open(const Color& color, std::size_t first_bin);
  void assign(std::size_t j, const Color& color, std::optional<std::size_t> new_bin);

 private:
  std::vector<PseudoBin> pseudo_bins_;
  std::map<Color, std::set<std::size_t>> by_color_;
};

class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;

  virtual std::string_view name() const = 0;
  // Chooses a placement for `item` and commits it to the algorithm's own
  // state. The engine applies the decision to `packing` immediately after.
  virtual Decision place(const Item& item, const Packing& packing) = 0;
  virtual const PseudoBinState* pseudo_bins() const { return nullptr; }
};

class NextFit final : public OnlineAlgorithm {
 public:
  std::string_view name() const override { return "nf"; }
  Decision place(const Item& item, const Packing& packing) override;

 private:
  std::optional<std::size_t> active_;
};

// Picks one bin out of the (non-empty, increasing) list of feasible bins.
using BinSelector =
    std::function<std::size_t(std::span<const std::size_t> feasible, const Item& item, const Packing& packing)>;

BinSelector first_fit_selector();
BinSelector best_fit_selector(TieBreak rule);
BinSelector worst_fit_selector(TieBreak rule);

// Any Fit: a new bin is opened only when no existing bin can take the item.
class AnyFit final : public OnlineAlgorithm {
 public:
  AnyFit(std::string name, BinSelector selector);

  std::string_view name() const override { return name_; }
  Decision place(const Item& item, const Packing& packing) override;

 private:
  std::string name_;
  BinSelector selector_;
};

// Shared machinery of Pseudo and BaP: once a pseudo-bin is chosen, the item
// goes to its last bin if it fits by size, otherwise to a new bin appended
// to that pseudo-bin.
class PseudoBinAlgorithm : public OnlineAlgorithm {
 public:
  explicit PseudoBinAlgorithm(TieBreak rule) : rule_(rule) {}

  Decision place(const Item& item, const Packing& packing) final;
  const PseudoBinState* pseudo_bins() const final { return &state_; }

 protected:
  // Pseudo-bin for `item`, or nullopt to open a new one.
  virtual std::optional<std::size_t> choose(const Item& item) const = 0;

  const PseudoBinState& state() const { return state_; }
  TieBreak rule() const { return rule_; }

 private:
  PseudoBinState state_;
  TieBreak rule_;
};

// Assigns to the minimum-index pseudo-bin whose color differs from the item.
class Pseudo final : public PseudoBinAlgorithm {
 public:
  explicit Pseudo(TieBreak rule = TieBreak::min_index) : PseudoBinAlgorithm(rule) {}
  std::string_view name() const override { return "pseudo"; }

 protected:
  std::optional<std::size_t> choose(const Item& item) const override;
};

// Balanced-Pseudo: assigns to a pseudo-bin of the most frequent color other
// than the item's own, opening a new pseudo-bin only when every pseudo-bin
// already has the item's color.
class BalancedPseudo final : public PseudoBinAlgorithm {
 public:
  explicit BalancedPseudo(TieBreak rule = TieBreak::min_color) : PseudoBinAlgorithm(rule) {}
  std::string_view name() const override { return "bap"; }

 protected:
  std::optional<std::size_t> choose(const Item& item) const override;
};

// nf | ff | bf | wf | pseudo | bap. Throws std::invalid_argument otherwise.
std::unique_ptr<OnlineAlgorithm> make_algorithm(std::string_view token, TieBreak rule = TieBreak::min_color);
std::span<const std::string_view> algorithm_tokens();

struct TraceStep {
  std::size_t item = 0;
  std::size_t bin = 0;
  bool opened_new_bin = false;
  std::optional<std::size_t> pseudo_bin;
  bool opened_new_pseudo_bin = false;
};

// What an adversary gets to see after each placement.
struct Observation {
  std::size_t item = 0;
  std::size_t bin = 0;
  bool opened_new_bin = false;
  std::map<Color, std::size_t> bins_by_last_color;
};

// Incremental driver: items are fed one at a time, so an adversary can pick
// the next item after looking at the previous decision.
class OnlineRun {
 public:
  explicit OnlineRun(OnlineAlgorithm& algorithm) : algorithm_(algorithm) {}

  Observation feed(Color color, Size size);
  Observation feed(const Item& item) { return feed(item.color, item.size); }

  const Instance& instance() const { return instance_; }
  const Packing& packing() const { return packing_; }
  std::span<const TraceStep> trace() const { return trace_; }
  const OnlineAlgorithm& algorithm() const { return algorithm_; }

 private:
  OnlineAlgorithm& algorithm_;
  Instance instance_;
  Packing packing_;
  std::vector<TraceStep> trace_;
};

struct RunResult {
  Packing packing;
  std::vector<TraceStep> trace;
  std::size_t pseudo_bin_count = 0;  // 0 for algorithms without pseudo-bins
};

RunResult run(OnlineAlgorithm& algorithm, const Instance& instance);
RunResult run(std::string_view token, const Instance& instance, TieBreak rule = TieBreak::min_color);

// Rebuilds the packing from a trace alone.
Packing replay(const Instance& instance, std::span<const TraceStep> trace);

}  // namespace cbp
