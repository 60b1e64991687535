#include "cbp/harness.hpp"

#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cbp/bounds.hpp"
#include "cbp/instance_io.hpp"

namespace cbp {

const char* to_string(SizeMode mode) {
  switch (mode) {
    case SizeMode::zero: return "zero";
    case SizeMode::rational: return "rational";
    case SizeMode::mixed: return "mixed";
  }
  return "?";
}

std::optional<SizeMode> parse_size_mode(std::string_view text) {
  if (text == "zero") return SizeMode::zero;
  if (text == "rational") return SizeMode::rational;
  if (text == "mixed") return SizeMode::mixed;
  return std::nullopt;
}

nlohmann::json to_json(const RandomInstanceSpec& spec) {
  return {{"min_items", spec.min_items},
          {"max_items", spec.max_items},
          {"palette", spec.palette},
          {"sizes", to_string(spec.sizes)},
          {"max_denominator", spec.max_denominator}};
}

Instance random_instance(const RandomInstanceSpec& spec, std::mt19937_64& rng) {
  if (spec.min_items > spec.max_items || spec.palette == 0 || spec.max_denominator < 1) {
    throw std::invalid_argument("bad random instance spec");
  }
  std::uniform_int_distribution<std::size_t> count(spec.min_items, spec.max_items);
  std::uniform_int_distribution<std::size_t> color(1, spec.palette);
  std::uniform_int_distribution<std::int64_t> denominator(1, spec.max_denominator);
  std::uniform_int_distribution<int> coin(0, 2);

  Instance instance;
  const std::size_t n = count(rng);
  for (std::size_t t = 0; t < n; ++t) {
    Color c("c" + std::to_string(color(rng)));
    bool zero = spec.sizes == SizeMode::zero || (spec.sizes == SizeMode::mixed && coin(rng) == 0);
    if (zero) {
      instance.add(std::move(c), Size::zero());
      continue;
    }
    const std::int64_t q = denominator(rng);
    std::uniform_int_distribution<std::int64_t> numerator(0, q);
    instance.add(std::move(c), Size(numerator(rng), q));
  }
  return instance;
}

const char* to_string(DenominatorKind kind) {
  switch (kind) {
    case DenominatorKind::oracle: return "oracle";
    case DenominatorKind::certificate: return "certificate";
    case DenominatorKind::bounds: return "bounds";
  }
  return "?";
}

std::optional<DenominatorKind> parse_denominator_kind(std::string_view text) {
  if (text == "oracle") return DenominatorKind::oracle;
  if (text == "certificate") return DenominatorKind::certificate;
  if (text == "bounds") return DenominatorKind::bounds;
  return std::nullopt;
}

const char* ratio_relation(DenominatorKind kind) {
  switch (kind) {
    case DenominatorKind::oracle: return "=";
    case DenominatorKind::certificate: return ">=";
    case DenominatorKind::bounds: return "<=";
  }
  return "?";
}

nlohmann::json to_json(const ExperimentSpec& spec) {
  return {{"algorithms", spec.algorithms},
          {"source", spec.source},
          {"source_params", spec.source_params},
          {"tiebreak", std::string(to_string(spec.tie_break))},
          {"oracle_budget_ms", spec.oracle_budget.count()},
          {"denominator", to_string(spec.denominator)},
          {"seed", spec.seed},
          {"format", spec.format}};
}

std::vector<Aggregate> RatioReport::aggregates() const {
  std::map<DenominatorKind, Aggregate> by_kind;
  for (const auto& r : runs) {
    auto [it, inserted] = by_kind.try_emplace(r.denominator.kind, Aggregate{r.denominator.kind, 0, r.ratio, 0});
    Aggregate& a = it->second;
    ++a.runs;
    if (r.ratio > a.max_ratio) a.max_ratio = r.ratio;
    a.mean_ratio += r.ratio;
  }
  std::vector<Aggregate> out;
  for (auto& [kind, a] : by_kind) {
    a.mean_ratio /= static_cast<long>(a.runs);
    out.push_back(a);
  }
  return out;
}

RunReport measure(const std::string& label, std::string_view algorithm, const Instance& instance,
                  DenominatorKind wanted, TieBreak tie_break, const OracleLimits& limits,
                  const std::optional<GeneratedInstance>& generated) {
  RunResult result = run(algorithm, instance, tie_break);
  if (auto v = validate_packing(instance, result.packing); !v) {
    throw std::logic_error("algorithm " + std::string(algorithm) + " produced an invalid packing: " +
                           v.violation->message);
  }
  RunReport report;
  report.label = label;
  report.algorithm = std::string(algorithm);
  report.items = instance.size();
  report.bins_alg = result.packing.bin_count();

  auto bounds_denominator = [&](std::string note) {
    const auto b = compute_bounds(instance);
    return Denominator{DenominatorKind::bounds, static_cast<std::size_t>(b.combined), std::move(note)};
  };

  switch (wanted) {
    case DenominatorKind::oracle: {
      OptResult o = opt(instance, limits);
      if (o.exact) {
        report.denominator = Denominator{DenominatorKind::oracle, o.bins, o.note};
      } else {
        report.denominator = bounds_denominator("oracle fallback: " + o.note);
      }
      break;
    }
    case DenominatorKind::certificate: {
      if (!generated) throw std::invalid_argument("certificate denominator needs a generated instance");
      auto v = validate_packing(instance, generated->certificate);
      report.checks.push_back({"certificate-valid", v.ok(), v.ok() ? "" : v.violation->message});
      report.denominator =
          Denominator{DenominatorKind::certificate, generated->certificate.size(), generated->family};
      break;
    }
    case DenominatorKind::bounds:
      report.denominator = bounds_denominator("max(ceil(lb0), lb1)");
      break;
  }
  if (report.denominator.value == 0) {
    report.ratio = 1;
  } else {
    report.ratio = ratio(report.bins_alg, report.denominator.value);
  }
  return report;
}

namespace {

std::string decimal(const Rational& r) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << r.get_d();
  return out.str();
}

nlohmann::json checks_to_json(const std::vector<LemmaCheck>& checks) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : checks) out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

}  // namespace

nlohmann::json to_json(const RunReport& run) {
  return {{"label", run.label},
          {"algorithm", run.algorithm},
          {"items", run.items},
          {"bins_alg", run.bins_alg},
          {"denominator",
           {{"kind", to_string(run.denominator.kind)},
            {"value", run.denominator.value},
            {"note", run.denominator.note}}},
          {"relation", ratio_relation(run.denominator.kind)},
          {"ratio", format_rational(run.ratio)},
          {"ratio_decimal", decimal(run.ratio)},
          {"checks", checks_to_json(run.checks)}};
}

nlohmann::json to_json(const RatioReport& report) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : report.runs) runs.push_back(to_json(r));
  nlohmann::json aggregates = nlohmann::json::array();
  for (const auto& a : report.aggregates()) {
    aggregates.push_back({{"denominator", to_string(a.kind)},
                          {"runs", a.runs},
                          {"max_ratio", format_rational(a.max_ratio)},
                          {"max_ratio_decimal", decimal(a.max_ratio)},
                          {"mean_ratio", format_rational(a.mean_ratio)},
                          {"mean_ratio_decimal", decimal(a.mean_ratio)}});
  }
  return {{"version", kVersion}, {"spec", to_json(report.spec)}, {"runs", runs}, {"aggregates", aggregates}};
}

std::string to_csv(const RatioReport& report) {
  std::ostringstream out;
  out << "# version=" << kVersion << " spec=" << to_json(report.spec).dump() << "\n";
  out << "label,algorithm,items,bins_alg,denominator_kind,denominator,relation,ratio,ratio_decimal,checks_passed\n";
  for (const auto& r : report.runs) {
    bool passed = true;
    for (const auto& c : r.checks) passed = passed && c.passed;
    out << r.label << ',' << r.algorithm << ',' << r.items << ',' << r.bins_alg << ','
        << to_string(r.denominator.kind) << ',' << r.denominator.value << ',' << ratio_relation(r.denominator.kind)
        << ',' << format_rational(r.ratio) << ',' << decimal(r.ratio) << ',' << (passed ? "true" : "false")
        << "\n";
  }
  return out.str();
}

std::string to_table(const RatioReport& report) {
  std::ostringstream out;
  out << "cbp " << kVersion << "  tiebreak=" << to_string(report.spec.tie_break) << "  seed=" << report.spec.seed
      << "\n";
  out << std::left << std::setw(28) << "label" << std::setw(8) << "alg" << std::setw(8) << "bins" << std::setw(13)
      << "denominator" << std::setw(6) << "" << "ratio\n";
  for (const auto& r : report.runs) {
    out << std::left << std::setw(28) << r.label << std::setw(8) << r.algorithm << std::setw(8) << r.bins_alg
        << std::setw(13) << (std::string(to_string(r.denominator.kind)) + "=" + std::to_string(r.denominator.value))
        << std::setw(6) << ratio_relation(r.denominator.kind) << format_rational(r.ratio) << " ("
        << decimal(r.ratio) << ")\n";
  }
  for (const auto& a : report.aggregates()) {
    out << "aggregate[" << to_string(a.kind) << "] runs=" << a.runs << " max=" << decimal(a.max_ratio)
        << " mean=" << decimal(a.mean_ratio) << "\n";
  }
  return out.str();
}

nlohmann::json layout_to_json(const Layout& layout) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& bin : layout) out.push_back(bin);
  return out;
}

nlohmann::json instance_to_json(const Instance& instance) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& item : instance.items()) {
    out.push_back({{"color", item.color.token()}, {"size", format_rational(item.size.value())}});
  }
  return out;
}

nlohmann::json to_json(const AdversaryTranscript& t) {
  nlohmann::json phases = nlohmann::json::array();
  for (std::size_t p = 0; p < t.phase_colors.size(); ++p) {
    phases.push_back({{"phase", p}, {"color", t.phase_colors[p].token()}, {"bins", t.phase_bins[p]}});
  }
  return {{"version", kVersion},
          {"adversary", t.adversary},
          {"algorithm", t.algorithm},
          {"instance", instance_to_json(t.instance)},
          {"bins_alg", t.bins_alg},
          {"packing", layout_to_json(t.packing)},
          {"opt_upper_bound", t.certificate_bins},
          {"certificate", layout_to_json(t.certificate)},
          {"ratio_lower_bound", format_rational(t.ratio_lower_bound())},
          {"ratio_lower_bound_decimal", decimal(t.ratio_lower_bound())},
          {"counters", t.counters},
          {"phases", phases},
          {"lemma_checks", checks_to_json(t.checks)},
          {"all_checks_passed", t.all_checks_passed()}};
}

}  // namespace cbp
