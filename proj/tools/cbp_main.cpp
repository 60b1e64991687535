// cbp: command-line front end for the colorful bin packing library.
//
// Exit codes: 0 ok, 1 criterion or check failure, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbp/acceptance.hpp"
#include "cbp/adversaries.hpp"
#include "cbp/algorithms.hpp"
#include "cbp/bounds.hpp"
#include "cbp/harness.hpp"
#include "cbp/instance_io.hpp"
#include "cbp/oracle.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Thrown for semantically bad arguments detected after CLI parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string tiebreak;  // empty: command default
  std::uint64_t seed = 1;
  std::int64_t budget_ms = 10'000;
  std::string format = "json";
  std::string output;
};

cbp::TieBreak tie_break_or(const GlobalOptions& g, cbp::TieBreak fallback) {
  if (g.tiebreak.empty()) return fallback;
  auto rule = cbp::parse_tie_break(g.tiebreak);
  if (!rule) throw UsageError("unknown tie-break rule '" + g.tiebreak + "'");
  return *rule;
}

cbp::OracleLimits oracle_limits(const GlobalOptions& g) {
  cbp::OracleLimits limits;
  limits.budget = std::chrono::milliseconds(g.budget_ms);
  return limits;
}

void emit(const GlobalOptions& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw std::runtime_error("cannot write " + g.output);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string render_json(const json& j) { return j.dump(2); }

void require_algorithm(const std::string& token) {
  for (auto t : cbp::algorithm_tokens()) {
    if (t == token) return;
  }
  throw UsageError("unknown algorithm '" + token + "'");
}

// ---- pack -----------------------------------------------------------------

struct PackArgs {
  std::string alg;
  std::string input;
};

int cmd_pack(const GlobalOptions& g, const PackArgs& a) {
  require_algorithm(a.alg);
  const auto rule = tie_break_or(g, cbp::TieBreak::min_color);
  const cbp::Instance instance = cbp::read_instance_file(a.input);
  cbp::RunResult r = cbp::run(a.alg, instance, rule);
  if (auto v = cbp::validate_packing(instance, r.packing); !v) {
    std::cerr << "internal error: " << a.alg << " produced an invalid packing: " << v.violation->message << "\n";
    return kExitFailure;
  }
  std::size_t new_bins = 0, new_pseudo_bins = 0;
  for (const auto& step : r.trace) {
    new_bins += step.opened_new_bin;
    new_pseudo_bins += step.opened_new_pseudo_bin;
  }
  if (g.format == "json") {
    json out = {{"version", cbp::kVersion},
                {"algorithm", a.alg},
                {"tiebreak", std::string(cbp::to_string(rule))},
                {"items", instance.size()},
                {"bins", r.packing.bin_count()},
                {"packing", cbp::layout_to_json(r.packing.layout())},
                {"trace", {{"steps", r.trace.size()}, {"new_bins", new_bins}}}};
    if (r.pseudo_bin_count > 0 || a.alg == "pseudo" || a.alg == "bap") {
      out["trace"]["pseudo_bins"] = r.pseudo_bin_count;
    }
    emit(g, render_json(out));
  } else if (g.format == "csv") {
    std::ostringstream out;
    out << "algorithm,tiebreak,items,bins,pseudo_bins\n"
        << a.alg << ',' << cbp::to_string(rule) << ',' << instance.size() << ',' << r.packing.bin_count() << ','
        << r.pseudo_bin_count << "\n";
    emit(g, out.str());
  } else {
    std::ostringstream out;
    out << a.alg << " (" << cbp::to_string(rule) << "): " << r.packing.bin_count() << " bins for "
        << instance.size() << " items\n";
    const auto layout = r.packing.layout();
    for (std::size_t b = 0; b < layout.size(); ++b) {
      out << "  bin " << b + 1 << ":";
      for (std::size_t idx : layout[b]) {
        const auto& item = instance.at(idx);
        out << ' ' << idx << '(' << item.color.token() << ' ' << cbp::format_rational(item.size.value()) << ')';
      }
      out << "\n";
    }
    emit(g, out.str());
  }
  return kExitOk;
}

// ---- bounds ---------------------------------------------------------------

int cmd_bounds(const GlobalOptions& g, const std::string& input) {
  const cbp::Instance instance = cbp::read_instance_file(input);
  const auto b = cbp::compute_bounds(instance);
  json witness = nullptr;
  if (b.witness) witness = {{"first", b.witness->first}, {"last", b.witness->last}, {"color", b.witness->color.token()}};
  if (g.format == "json") {
    emit(g, render_json({{"lb0", cbp::format_rational(b.lb0)},
                         {"lb0_bins", b.lb0_bins},
                         {"lb1", b.lb1},
                         {"witness", witness},
                         {"combined", b.combined}}));
  } else {
    std::ostringstream out;
    if (g.format == "csv") {
      out << "lb0,lb0_bins,lb1,combined\n"
          << cbp::format_rational(b.lb0) << ',' << b.lb0_bins << ',' << b.lb1 << ',' << b.combined << "\n";
    } else {
      out << "lb0 = " << cbp::format_rational(b.lb0) << " (ceil " << b.lb0_bins << ")\nlb1 = " << b.lb1;
      if (b.witness) {
        out << "  [items " << b.witness->first << ".." << b.witness->last << ", color " << b.witness->color.token()
            << "]";
      }
      out << "\ncombined = " << b.combined << "\n";
    }
    emit(g, out.str());
  }
  return kExitOk;
}

// ---- opt ------------------------------------------------------------------

struct OptArgs {
  std::string input;
  std::size_t max_items = 0;  // 0: library default
};

int cmd_opt(const GlobalOptions& g, const OptArgs& a) {
  const cbp::Instance instance = cbp::read_instance_file(a.input);
  auto limits = oracle_limits(g);
  if (a.max_items > 0) limits.max_items_general = a.max_items;
  const cbp::OptResult o = cbp::opt(instance, limits);
  json certificate = nullptr;
  if (o.exact) certificate = cbp::layout_to_json(o.certificate.layout());
  if (g.format == "json") {
    emit(g, render_json({{"bins", o.exact ? json(o.bins) : json(nullptr)},
                         {"exact", o.exact},
                         {"certificate", certificate},
                         {"upper_bound", o.certificate.bin_count()},
                         {"note", o.note},
                         {"nodes", o.nodes}}));
  } else {
    std::ostringstream out;
    if (g.format == "csv") {
      out << "bins,exact,nodes\n" << o.bins << ',' << (o.exact ? "true" : "false") << ',' << o.nodes << "\n";
    } else {
      out << (o.exact ? "OPT = " : "OPT <= ") << o.bins << "  (" << o.note << ")\n";
    }
    emit(g, out.str());
  }
  return o.exact ? kExitOk : kExitFailure;
}

// ---- gen ------------------------------------------------------------------

struct FamilyArgs {
  std::string family;
  std::int64_t M = 0;
  std::int64_t N = 0;
  std::string eps;
};

cbp::GeneratedInstance generate(const FamilyArgs& a) {
  auto need = [&](std::int64_t v, const char* name) {
    if (v <= 0) throw UsageError(std::string("--") + name + " is required for family " + a.family);
  };
  if (a.family == "prop1-eps" || a.family == "prop1-wf") {
    need(a.M, "M");
    need(a.N, "N");
    return cbp::gen_prop1(a.family == "prop1-eps" ? cbp::Prop1Variant::eps : cbp::Prop1Variant::wf, a.M, a.N);
  }
  need(a.N, "N");
  if (a.family == "bap-zero") return cbp::gen_bap_zero(a.N);
  const cbp::Rational eps = a.eps.empty() ? cbp::default_cascade_eps(a.N) : cbp::parse_rational(a.eps);
  if (a.family == "bap-general") return cbp::gen_bap_general(a.N, eps);
  if (a.family == "bap-3color") return cbp::gen_bap_3color(a.N, eps);
  throw UsageError("unknown family '" + a.family + "'");
}

int cmd_gen(const GlobalOptions& g, const FamilyArgs& a, const std::string& certificate_path) {
  const auto generated = generate(a);
  std::ostringstream text;
  text << "# " << generated.family << " (" << generated.instance.size() << " items, certificate "
       << generated.certificate_bins << " bins)\n"
       << cbp::serialize_instance(generated.instance);
  emit(g, text.str());
  if (!certificate_path.empty()) {
    std::ofstream out(certificate_path);
    if (!out) throw std::runtime_error("cannot write " + certificate_path);
    out << render_json({{"family", generated.family},
                        {"bins", generated.certificate_bins},
                        {"certificate", cbp::layout_to_json(generated.certificate)}})
        << "\n";
  }
  return kExitOk;
}

// ---- duel -----------------------------------------------------------------

struct DuelArgs {
  std::string alg;
  std::string adversary;
  std::int64_t N = 10;
  std::int64_t M = 9;
  std::int64_t phases = cbp::kDefaultZero3Phases;
};

cbp::AdversaryTranscript play(const GlobalOptions& g, const DuelArgs& a) {
  require_algorithm(a.alg);
  auto algorithm = cbp::make_algorithm(a.alg, tie_break_or(g, cbp::TieBreak::min_color));
  if (a.adversary == "lb2") return cbp::adversary_lb2(*algorithm, a.N);
  if (a.adversary == "zero3") return cbp::adversary_zero3(*algorithm, a.M, a.phases);
  throw UsageError("unknown adversary '" + a.adversary + "'");
}

int cmd_duel(const GlobalOptions& g, const DuelArgs& a) {
  const auto t = play(g, a);
  if (g.format == "json") {
    json out = cbp::to_json(t);
    out["tiebreak"] = std::string(cbp::to_string(tie_break_or(g, cbp::TieBreak::min_color)));
    emit(g, render_json(out));
  } else {
    std::ostringstream out;
    out << t.adversary << " vs " << t.algorithm << ": " << t.bins_alg << " bins, OPT <= " << t.certificate_bins
        << ", ratio >= " << t.ratio_lower_bound().get_str() << " (" << t.ratio_lower_bound().get_d() << ")\n";
    for (const auto& c : t.checks) {
      out << "  [" << (c.passed ? "ok" : "FAILED") << "] " << c.name << "  " << c.detail << "\n";
    }
    emit(g, out.str());
  }
  return t.all_checks_passed() ? kExitOk : kExitFailure;
}

// ---- ratio ----------------------------------------------------------------

struct RatioArgs {
  std::vector<std::string> algs;
  std::string input;
  FamilyArgs family;
  DuelArgs duel;
  std::size_t random = 0;
  cbp::RandomInstanceSpec random_spec;
  std::string sizes = "mixed";
  std::string denominator = "oracle";
};

int cmd_ratio(const GlobalOptions& g, RatioArgs a) {
  for (const auto& alg : a.algs) require_algorithm(alg);
  const auto rule = tie_break_or(g, cbp::TieBreak::min_color);
  auto kind = cbp::parse_denominator_kind(a.denominator);
  if (!kind) throw UsageError("unknown denominator '" + a.denominator + "'");

  const int sources = !a.input.empty() + !a.family.family.empty() + (a.random > 0) + !a.duel.adversary.empty();
  if (sources != 1) throw UsageError("give exactly one of --input, --family, --random, --adversary");

  cbp::RatioReport report;
  report.spec.algorithms = a.algs;
  report.spec.tie_break = rule;
  report.spec.oracle_budget = std::chrono::milliseconds(g.budget_ms);
  report.spec.denominator = *kind;
  report.spec.seed = g.seed;
  report.spec.format = g.format;
  const auto limits = oracle_limits(g);

  if (!a.input.empty()) {
    report.spec.source = "file";
    report.spec.source_params = {{"input", a.input}};
    const auto instance = cbp::read_instance_file(a.input);
    if (*kind == cbp::DenominatorKind::certificate) throw UsageError("file instances carry no certificate");
    for (const auto& alg : a.algs) report.runs.push_back(cbp::measure(a.input, alg, instance, *kind, rule, limits));
  } else if (!a.family.family.empty()) {
    report.spec.source = "family";
    const auto generated = generate(a.family);
    report.spec.source_params = {{"family", a.family.family}, {"M", a.family.M}, {"N", a.family.N}};
    if (!a.family.eps.empty()) report.spec.source_params["eps"] = a.family.eps;
    for (const auto& alg : a.algs) {
      report.runs.push_back(
          cbp::measure(generated.family, alg, generated.instance, *kind, rule, limits, generated));
    }
  } else if (a.random > 0) {
    report.spec.source = "random";
    auto sizes = cbp::parse_size_mode(a.sizes);
    if (!sizes) throw UsageError("unknown size mode '" + a.sizes + "'");
    a.random_spec.sizes = *sizes;
    if (*kind == cbp::DenominatorKind::certificate) throw UsageError("random instances carry no certificate");
    report.spec.source_params = cbp::to_json(a.random_spec);
    report.spec.source_params["count"] = a.random;
    std::mt19937_64 rng(g.seed);
    for (std::size_t t = 0; t < a.random; ++t) {
      const auto instance = cbp::random_instance(a.random_spec, rng);
      for (const auto& alg : a.algs) {
        report.runs.push_back(cbp::measure("random#" + std::to_string(t), alg, instance, *kind, rule, limits));
      }
    }
  } else {
    report.spec.source = "adversary";
    report.spec.source_params = {
        {"adversary", a.duel.adversary}, {"N", a.duel.N}, {"M", a.duel.M}, {"phases", a.duel.phases}};
    if (*kind != cbp::DenominatorKind::certificate) {
      throw UsageError("adversary runs are measured against their certificate (--denominator certificate)");
    }
    for (const auto& alg : a.algs) {
      DuelArgs d = a.duel;
      d.alg = alg;
      const auto t = play(g, d);
      cbp::RunReport r;
      r.label = t.adversary;
      r.algorithm = alg;
      r.items = t.instance.size();
      r.bins_alg = t.bins_alg;
      r.denominator = {cbp::DenominatorKind::certificate, t.certificate_bins, t.adversary};
      r.ratio = t.ratio_lower_bound();
      r.checks = t.checks;
      report.runs.push_back(std::move(r));
    }
  }

  if (g.format == "json") {
    emit(g, render_json(cbp::to_json(report)));
  } else if (g.format == "csv") {
    emit(g, cbp::to_csv(report));
  } else {
    emit(g, cbp::to_table(report));
  }
  for (const auto& r : report.runs) {
    for (const auto& c : r.checks) {
      if (!c.passed) return kExitFailure;
    }
  }
  return kExitOk;
}

// ---- suite ----------------------------------------------------------------

int cmd_suite(const GlobalOptions& g, const std::vector<int>& only, bool seed_given) {
  cbp::SuiteOptions options;
  options.bap_tie_break = tie_break_or(g, cbp::TieBreak::min_index);
  options.oracle_budget = std::chrono::milliseconds(g.budget_ms);
  if (seed_given) options.seed = g.seed;
  cbp::AcceptanceSuite suite(options);

  std::vector<cbp::CriterionResult> results;
  auto print = [&](const cbp::CriterionResult& r) {
    if (g.format == "table") std::cout << cbp::format_result_line(r) << std::endl;
  };
  if (only.empty()) {
    results = suite.run_all(print);
  } else {
    for (int id : only) {
      if (id < 1 || id > cbp::AcceptanceSuite::kCriteria) throw UsageError("no criterion " + std::to_string(id));
      results.push_back(suite.run(id));
      print(results.back());
    }
  }

  bool failed = false;
  json rows = json::array();
  std::ostringstream csv;
  csv << "id,status,seconds,limit_seconds,title,detail\n";
  for (const auto& r : results) {
    failed = failed || r.status == cbp::CriterionStatus::fail;
    rows.push_back({{"id", r.id},
                    {"title", r.title},
                    {"status", cbp::to_string(r.status)},
                    {"detail", r.detail},
                    {"seconds", r.seconds},
                    {"limit_seconds", r.limit_seconds}});
    csv << r.id << ',' << cbp::to_string(r.status) << ',' << r.seconds << ',' << r.limit_seconds << ",\"" << r.title
        << "\",\"" << r.detail << "\"\n";
  }
  if (g.format == "json") {
    emit(g, render_json({{"version", cbp::kVersion},
                         {"tiebreak", std::string(cbp::to_string(options.bap_tie_break))},
                         {"oracle_budget_ms", g.budget_ms},
                         {"seed", options.seed},
                         {"criteria", rows},
                         {"passed", !failed}}));
  } else if (g.format == "csv") {
    emit(g, csv.str());
  } else if (!g.output.empty()) {
    std::ostringstream out;
    for (const auto& r : results) out << cbp::format_result_line(r) << "\n";
    emit(g, out.str());
  }
  return failed ? kExitFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online colorful bin packing: algorithms, bounds, exact oracle and adversaries"};
  app.set_version_flag("--version", std::string(cbp::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--tiebreak", g.tiebreak, "Tie-break rule: min-index, max-index or min-color")
      ->check(CLI::IsMember({"min-index", "max-index", "min-color"}));
  auto* seed_opt = app.add_option("--seed", g.seed, "Seed for random instances");
  app.add_option("--budget-ms", g.budget_ms, "Oracle time budget in milliseconds")->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("-o,--output", g.output, "Write output to FILE instead of stdout");

  const std::vector<std::string> algs = {"nf", "ff", "bf", "wf", "pseudo", "bap"};

  PackArgs pack;
  auto* pack_cmd = app.add_subcommand("pack", "Run an online algorithm on an instance file");
  pack_cmd->add_option("--alg", pack.alg, "Algorithm token")->required()->check(CLI::IsMember(algs));
  pack_cmd->add_option("--input", pack.input, "Instance file")->required()->check(CLI::ExistingFile);

  std::string bounds_input;
  auto* bounds_cmd = app.add_subcommand("bounds", "Lower bounds LB0 and LB1 for an instance file");
  bounds_cmd->add_option("--input", bounds_input, "Instance file")->required()->check(CLI::ExistingFile);

  OptArgs opt;
  auto* opt_cmd = app.add_subcommand("opt", "Exact offline optimum for an instance file");
  opt_cmd->add_option("--input", opt.input, "Instance file")->required()->check(CLI::ExistingFile);
  opt_cmd->add_option("--max-items", opt.max_items, "Raise the item limit for arbitrary sizes");

  const std::vector<std::string> families = {"prop1-eps", "prop1-wf", "bap-zero", "bap-general", "bap-3color"};
  FamilyArgs gen;
  std::string certificate_path;
  auto* gen_cmd = app.add_subcommand("gen", "Write a lower-bound family instance");
  gen_cmd->add_option("--family", gen.family, "Family name")->required()->check(CLI::IsMember(families));
  gen_cmd->add_option("--M", gen.M, "Parameter M");
  gen_cmd->add_option("--N", gen.N, "Parameter N");
  gen_cmd->add_option("--eps", gen.eps, "Epsilon as p/q (cascade families)");
  gen_cmd->add_option("--certificate", certificate_path, "Also write the offline certificate as JSON");

  DuelArgs duel;
  auto* duel_cmd = app.add_subcommand("duel", "Play an adaptive adversary against an algorithm");
  duel_cmd->add_option("--alg", duel.alg, "Algorithm token")->required()->check(CLI::IsMember(algs));
  duel_cmd->add_option("--adversary", duel.adversary, "lb2 or zero3")
      ->required()
      ->check(CLI::IsMember({"lb2", "zero3"}));
  duel_cmd->add_option("--N", duel.N, "lb2: parameter N (> 3)");
  duel_cmd->add_option("--M", duel.M, "zero3: parameter M");
  duel_cmd->add_option("--phases", duel.phases, "zero3: number of phases");

  RatioArgs ratio;
  auto* ratio_cmd = app.add_subcommand("ratio", "Measure labeled ratios");
  ratio_cmd->add_option("--alg", ratio.algs, "Algorithm token(s)")->required()->check(CLI::IsMember(algs));
  ratio_cmd->add_option("--denominator", ratio.denominator, "oracle, certificate or bounds")
      ->check(CLI::IsMember({"oracle", "certificate", "bounds"}));
  ratio_cmd->add_option("--input", ratio.input, "Instance file source")->check(CLI::ExistingFile);
  ratio_cmd->add_option("--family", ratio.family.family, "Family source")->check(CLI::IsMember(families));
  ratio_cmd->add_option("--M", ratio.family.M, "Family/zero3 parameter M");
  ratio_cmd->add_option("--N", ratio.family.N, "Family/lb2 parameter N");
  ratio_cmd->add_option("--eps", ratio.family.eps, "Family epsilon as p/q");
  ratio_cmd->add_option("--adversary", ratio.duel.adversary, "Adversary source: lb2 or zero3")
      ->check(CLI::IsMember({"lb2", "zero3"}));
  ratio_cmd->add_option("--phases", ratio.duel.phases, "zero3 phases");
  ratio_cmd->add_option("--random", ratio.random, "Number of random instances");
  ratio_cmd->add_option("--min-items", ratio.random_spec.min_items, "Random: minimum item count");
  ratio_cmd->add_option("--max-items", ratio.random_spec.max_items, "Random: maximum item count");
  ratio_cmd->add_option("--palette", ratio.random_spec.palette, "Random: number of colors");
  ratio_cmd->add_option("--sizes", ratio.sizes, "Random: zero, rational or mixed")
      ->check(CLI::IsMember({"zero", "rational", "mixed"}));
  ratio_cmd->add_option("--max-denominator", ratio.random_spec.max_denominator, "Random: size denominator bound");

  std::vector<int> only;
  auto* suite_cmd = app.add_subcommand("suite", "Run the acceptance battery");
  suite_cmd->add_option("--only", only, "Run only these criterion ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*pack_cmd) return cmd_pack(g, pack);
    if (*bounds_cmd) return cmd_bounds(g, bounds_input);
    if (*opt_cmd) return cmd_opt(g, opt);
    if (*gen_cmd) return cmd_gen(g, gen, certificate_path);
    if (*duel_cmd) return cmd_duel(g, duel);
    if (*ratio_cmd) {
      if (ratio.family.family.empty() && !ratio.duel.adversary.empty()) {
        if (ratio.family.N > 0) ratio.duel.N = ratio.family.N;
        if (ratio.family.M > 0) ratio.duel.M = ratio.family.M;
      }
      return cmd_ratio(g, ratio);
    }
    if (*suite_cmd) return cmd_suite(g, only, seed_opt->count() > 0);
  } catch (const cbp::ParseError& e) {
    std::cerr << "parse error: line " << e.line() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
