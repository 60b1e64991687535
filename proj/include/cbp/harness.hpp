#pragma once

// Experiment plumbing: seeded random instances, labeled ratio reports and
// their JSON/CSV/table renderings.

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cbp/adversaries.hpp"
#include "cbp/algorithms.hpp"
#include "cbp/core.hpp"
#include "cbp/oracle.hpp"

namespace cbp {

inline constexpr const char* kVersion = "1.0.0";

enum class SizeMode { zero, rational, mixed };

const char* to_string(SizeMode mode);
std::optional<SizeMode> parse_size_mode(std::string_view text);

// Item count uniform in [min_items, max_items]; colors uniform over
// `palette` tokens c1..cK; sizes zero, uniform p/q with q <= max_denominator
// and 0 <= p <= q, or (mixed) zero with probability 1/3 and rational
// otherwise.
struct RandomInstanceSpec {
  std::size_t min_items = 1;
  std::size_t max_items = 20;
  std::size_t palette = 3;
  SizeMode sizes = SizeMode::mixed;
  std::int64_t max_denominator = 12;
};

nlohmann::json to_json(const RandomInstanceSpec& spec);

Instance random_instance(const RandomInstanceSpec& spec, std::mt19937_64& rng);

enum class DenominatorKind { oracle, certificate, bounds };

const char* to_string(DenominatorKind kind);
std::optional<DenominatorKind> parse_denominator_kind(std::string_view text);

// The value a ratio is taken against. `kind` decides what the ratio means:
//   oracle       exact OPT: the ratio is the instance's competitive ratio
//   certificate  upper bound on OPT: the ratio is a lower bound on it
//   bounds       lower bound on OPT: the ratio is an upper bound on it
struct Denominator {
  DenominatorKind kind = DenominatorKind::oracle;
  std::size_t value = 0;
  std::string note;
};

// "=", ">=" or "<=": how the printed ratio relates to the true instance ratio.
const char* ratio_relation(DenominatorKind kind);

struct RunReport {
  std::string label;
  std::string algorithm;
  std::size_t items = 0;
  std::size_t bins_alg = 0;
  Denominator denominator;
  Rational ratio;
  std::vector<LemmaCheck> checks;
};

struct ExperimentSpec {
  std::vector<std::string> algorithms;
  std::string source;  // "file", "family", "random", "adversary"
  nlohmann::json source_params;
  TieBreak tie_break = TieBreak::min_color;
  std::chrono::milliseconds oracle_budget{10'000};
  DenominatorKind denominator = DenominatorKind::oracle;
  std::uint64_t seed = 1;
  std::string format = "json";
};

nlohmann::json to_json(const ExperimentSpec& spec);

struct Aggregate {
  DenominatorKind kind;
  std::size_t runs = 0;
  Rational max_ratio;
  Rational mean_ratio;
};

struct RatioReport {
  ExperimentSpec spec;
  std::vector<RunReport> runs;

  std::vector<Aggregate> aggregates() const;
};

// Runs `algorithm` on `instance` and measures it against the requested
// denominator. When the oracle cannot solve the instance within its limits
// the run falls back to the bounds denominator, labeled as such.
RunReport measure(const std::string& label, std::string_view algorithm, const Instance& instance,
                  DenominatorKind wanted, TieBreak tie_break, const OracleLimits& limits,
                  const std::optional<GeneratedInstance>& generated = std::nullopt);

nlohmann::json to_json(const RunReport& run);
nlohmann::json to_json(const RatioReport& report);
std::string to_csv(const RatioReport& report);
std::string to_table(const RatioReport& report);

nlohmann::json layout_to_json(const Layout& layout);
nlohmann::json instance_to_json(const Instance& instance);
nlohmann::json to_json(const AdversaryTranscript& transcript);

}  // namespace cbp
