#include "cbp/algorithms.hpp"

#include <array>
#include <stdexcept>

namespace cbp {

std::string_view to_string(TieBreak rule) {
  switch (rule) {
    case TieBreak::min_index: return "min-index";
    case TieBreak::max_index: return "max-index";
    case TieBreak::min_color: return "min-color";
  }
  return "?";
}

std::optional<TieBreak> parse_tie_break(std::string_view text) {
  if (text == "min-index") return TieBreak::min_index;
  if (text == "max-index") return TieBreak::max_index;
  if (text == "min-color") return TieBreak::min_color;
  return std::nullopt;
}

std::size_t PseudoBinState::count(const Color& color) const {
  auto it = by_color_.find(color);
  return it == by_color_.end() ? 0 : it->second.size();
}

std::size_t PseudoBinState::open(const Color& color, std::size_t first_bin) {
  const std::size_t j = pseudo_bins_.size();
  pseudo_bins_.push_back(PseudoBin{{first_bin}, color});
  by_color_[color].insert(j);
  return j;
}

void PseudoBinState::assign(std::size_t j, const Color& color, std::optional<std::size_t> new_bin) {
  PseudoBin& pb = pseudo_bins_.at(j);
  auto old = by_color_.find(pb.color);
  old->second.erase(j);
  if (old->second.empty()) by_color_.erase(old);
  pb.color = color;
  by_color_[color].insert(j);
  if (new_bin) pb.bins.push_back(*new_bin);
}

Decision NextFit::place(const Item& item, const Packing& packing) {
  if (active_ && can_accept(packing.bin(*active_), item)) return Decision::into(*active_);
  active_ = packing.bin_count();
  return Decision::new_bin();
}

BinSelector first_fit_selector() {
  return [](std::span<const std::size_t> feasible, const Item&, const Packing&) { return feasible.front(); };
}

namespace {

// Residual-capacity selector; `prefer_smaller` selects Best Fit, otherwise
// Worst Fit. Equal residuals fall back to the index rule.
BinSelector residual_selector(bool prefer_smaller, TieBreak rule) {
  return [prefer_smaller, rule](std::span<const std::size_t> feasible, const Item&, const Packing& packing) {
    std::size_t best = feasible.front();
    for (std::size_t b : feasible.subspan(1)) {
      const Rational& cand = packing.bin(b).load();
      const Rational& cur = packing.bin(best).load();
      // Smaller residual == larger load.
      const int cmp_load = cmp(cand, cur);
      const bool better = prefer_smaller ? cmp_load > 0 : cmp_load < 0;
      if (better || (cmp_load == 0 && rule == TieBreak::max_index)) best = b;
    }
    return best;
  };
}

}  // namespace

BinSelector best_fit_selector(TieBreak rule) { return residual_selector(true, rule); }
BinSelector worst_fit_selector(TieBreak rule) { return residual_selector(false, rule); }

AnyFit::AnyFit(std::string name, BinSelector selector) : name_(std::move(name)), selector_(std::move(selector)) {}

Decision AnyFit::place(const Item& item, const Packing& packing) {
  std::vector<std::size_t> feasible;
  for (std::size_t b = 0; b < packing.bin_count(); ++b) {
    if (can_accept(packing.bin(b), item)) feasible.push_back(b);
  }
  if (feasible.empty()) return Decision::new_bin();
  const std::size_t chosen = selector_(feasible, item, packing);
  if (!can_accept(packing.bin(chosen), item)) {
    throw std::logic_error("bin selector '" + name_ + "' returned an infeasible bin");
  }
  return Decision::into(chosen);
}

Decision PseudoBinAlgorithm::place(const Item& item, const Packing& packing) {
  const std::optional<std::size_t> j = choose(item);
  if (!j) {
    const std::size_t bin = packing.bin_count();
    const std::size_t opened = state_.open(item.color, bin);
    return Decision{std::nullopt, opened};
  }
  const std::size_t last = state_.at(*j).bins.back();
  if (packing.bin(last).load() + item.size.value() <= 1) {
    state_.assign(*j, item.color, std::nullopt);
    return Decision{last, *j};
  }
  state_.assign(*j, item.color, packing.bin_count());
  return Decision{std::nullopt, *j};
}

std::optional<std::size_t> Pseudo::choose(const Item& item) const {
  std::optional<std::size_t> best;
  for (const auto& [color, members] : state().by_color()) {
    if (color == item.color) continue;
    const std::size_t cand = rule() == TieBreak::max_index ? *members.rbegin() : *members.begin();
    if (!best || (rule() == TieBreak::max_index ? cand > *best : cand < *best)) best = cand;
  }
  return best;
}

std::optional<std::size_t> BalancedPseudo::choose(const Item& item) const {
  std::size_t max_count = 0;
  for (const auto& [color, members] : state().by_color()) {
    if (color != item.color) max_count = std::max(max_count, members.size());
  }
  // Every pseudo-bin (possibly none) has the item's color.
  if (max_count == 0) return std::nullopt;

  const bool high = rule() == TieBreak::max_index;
  std::optional<std::size_t> best;
  for (const auto& [color, members] : state().by_color()) {
    if (color == item.color || members.size() != max_count) continue;
    const std::size_t cand = high ? *members.rbegin() : *members.begin();
    // by_color() iterates in token order, so the first maximal color is the
    // smallest token.
    if (rule() == TieBreak::min_color) return cand;
    if (!best || (high ? cand > *best : cand < *best)) best = cand;
  }
  return best;
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(std::string_view token, TieBreak rule) {
  if (token == "nf") return std::make_unique<NextFit>();
  if (token == "ff") return std::make_unique<AnyFit>("ff", first_fit_selector());
  if (token == "bf") return std::make_unique<AnyFit>("bf", best_fit_selector(rule));
  if (token == "wf") return std::make_unique<AnyFit>("wf", worst_fit_selector(rule));
  if (token == "pseudo") return std::make_unique<Pseudo>(rule);
  if (token == "bap") return std::make_unique<BalancedPseudo>(rule);
  throw std::invalid_argument("unknown algorithm '" + std::string(token) + "'");
}

std::span<const std::string_view> algorithm_tokens() {
  static constexpr std::array<std::string_view, 6> kTokens = {"nf", "ff", "bf", "wf", "pseudo", "bap"};
  return kTokens;
}

Observation OnlineRun::feed(Color color, Size size) {
  const Item& item = instance_.add(std::move(color), std::move(size));
  const std::size_t pseudo_before = algorithm_.pseudo_bins() ? algorithm_.pseudo_bins()->k() : 0;
  const Decision decision = algorithm_.place(item, packing_);
  if (decision.bin && !can_accept(packing_.bin(*decision.bin), item)) {
    throw std::logic_error(std::string(algorithm_.name()) + " chose an infeasible bin for item " +
                           std::to_string(item.index));
  }
  const std::size_t bin = packing_.place(item, decision.bin);
  TraceStep step{item.index, bin, !decision.bin.has_value(), decision.pseudo_bin, false};
  if (const auto* pbs = algorithm_.pseudo_bins()) step.opened_new_pseudo_bin = pbs->k() > pseudo_before;
  trace_.push_back(step);
  return Observation{item.index, bin, step.opened_new_bin, packing_.bins_by_last_color()};
}

RunResult run(OnlineAlgorithm& algorithm, const Instance& instance) {
  OnlineRun driver(algorithm);
  for (const auto& item : instance.items()) driver.feed(item);
  RunResult result{driver.packing(), {driver.trace().begin(), driver.trace().end()}, 0};
  if (const auto* pbs = algorithm.pseudo_bins()) result.pseudo_bin_count = pbs->k();
  return result;
}

RunResult run(std::string_view token, const Instance& instance, TieBreak rule) {
  auto algorithm = make_algorithm(token, rule);
  return run(*algorithm, instance);
}

Packing replay(const Instance& instance, std::span<const TraceStep> trace) {
  if (trace.size() != instance.size()) throw std::invalid_argument("trace length does not match instance");
  Packing packing;
  for (const auto& step : trace) {
    const Item& item = instance.at(step.item);
    const std::size_t bin = packing.place(item, step.opened_new_bin ? std::nullopt : std::optional(step.bin));
    if (bin != step.bin) throw std::invalid_argument("trace bin numbering is inconsistent");
  }
  return packing;
}

}  // namespace cbp
