#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "cbp/adversaries.hpp"

namespace cbp {

bool AdversaryTranscript::all_checks_passed() const {
  for (const auto& check : checks) {
    if (!check.passed) return false;
  }
  return true;
}

namespace {

// Accumulates one named condition over many evaluations, keeping the first
// failure for the report.
class CheckAccumulator {
 public:
  explicit CheckAccumulator(std::string name) : check_{std::move(name), true, ""} {}

  void expect(bool condition, const std::string& detail) {
    ++evaluated_;
    if (!condition && check_.passed) {
      check_.passed = false;
      check_.detail = detail;
    }
  }

  LemmaCheck finish() const {
    LemmaCheck out = check_;
    if (out.passed) out.detail = std::to_string(evaluated_) + " evaluations";
    return out;
  }

 private:
  LemmaCheck check_;
  std::size_t evaluated_ = 0;
};

void check_certificate(AdversaryTranscript& t, std::size_t claimed) {
  auto result = validate_packing(t.instance, t.certificate);
  t.checks.push_back({"certificate-valid", result.ok(), result.ok() ? "" : result.violation->message});
  t.certificate_bins = t.certificate.size();
  t.checks.push_back({"certificate-bins<=" + std::to_string(claimed), t.certificate_bins <= claimed,
                      std::to_string(t.certificate_bins) + " bins"});
}

std::string ratio_text(const Rational& r) { return r.get_str() + " (" + std::to_string(r.get_d()) + ")"; }

}  // namespace

AdversaryTranscript adversary_lb2(OnlineAlgorithm& algorithm, std::int64_t N) {
  if (N <= 3) throw std::invalid_argument("lb2 adversary requires N > 3");
  enum class Role { regular_white, regular_black, special_black, huge_white };
  struct Meta {
    Role role;
    std::int64_t phase;
  };

  const Rational eps(1, N * N * N);
  std::vector<Rational> delta(static_cast<std::size_t>(N * N) + 1);
  delta[0] = eps;
  for (std::size_t t = 1; t < delta.size(); ++t) delta[t] = delta[t - 1] / 5;

  OnlineRun run(algorithm);
  AdversaryTranscript t;
  t.adversary = "lb2";
  t.algorithm = std::string(algorithm.name());
  std::vector<Meta> meta;
  auto feed = [&](const Color& color, const Rational& size, Role role, std::int64_t phase) {
    meta.push_back({role, phase});
    Observation obs = run.feed(color, Size(size));
    t.observations.push_back(obs);
    return obs;
  };

  CheckAccumulator bins_vs_i("bins>=i");
  CheckAccumulator black_bins("black-bins>=2j+1");
  std::int64_t i = 0, j = 0;
  bool stopped_at_round_limit = false;
  while (j < N) {
    if (i == N * N) {
      for (std::int64_t k = 0; k < N - j; ++k) feed(colors::white, 1, Role::huge_white, i + 1);
      stopped_at_round_limit = true;
      break;
    }
    ++i;
    feed(colors::white, eps, Role::regular_white, i);
    const Observation obs = feed(colors::black, delta[i], Role::regular_black, i);
    if (!obs.opened_new_bin) {
      // A black item can only join a bin whose last item is white.
      ++j;
      feed(colors::black, 3 * delta[i], Role::special_black, i);
      feed(colors::white, 1 - 2 * delta[i], Role::huge_white, i);
      feed(colors::black, delta[i], Role::regular_black, i);
    }
    const std::size_t bins = run.packing().bin_count();
    const std::size_t blacks = run.packing().bins_with_last_color(colors::black);
    bins_vs_i.expect(static_cast<std::int64_t>(bins) >= i,
                     "round " + std::to_string(i) + ": " + std::to_string(bins) + " bins");
    black_bins.expect(static_cast<std::int64_t>(blacks) >= 2 * j + 1,
                      "round " + std::to_string(i) + ", j=" + std::to_string(j) + ": " + std::to_string(blacks) +
                          " black bins");
  }

  t.instance = run.instance();
  t.packing = run.packing().layout();
  t.bins_alg = run.packing().bin_count();
  t.counters = {{"N", N}, {"i", i}, {"j", j}};

  CheckAccumulator huge_size("huge-white>1-eps");
  CheckAccumulator black_size("black<eps");
  CheckAccumulator cross_phase("huge-white+earlier-black>1");
  const auto items = t.instance.items();
  for (std::size_t h = 0; h < items.size(); ++h) {
    const Rational& s = items[h].size.value();
    if (meta[h].role == Role::huge_white) {
      huge_size.expect(s > 1 - eps, "item " + std::to_string(h + 1));
      for (std::size_t b = 0; b < items.size(); ++b) {
        if (items[b].color != colors::black || meta[b].phase >= meta[h].phase) continue;
        cross_phase.expect(s + items[b].size.value() > 1,
                           "items " + std::to_string(b + 1) + " and " + std::to_string(h + 1));
      }
    } else if (items[h].color == colors::black) {
      black_size.expect(s < eps, "item " + std::to_string(h + 1));
    }
  }
  for (const auto& acc : {huge_size, black_size, cross_phase, bins_vs_i, black_bins}) t.checks.push_back(acc.finish());

  // Certificate: unit whites alone, every other huge white between the
  // regular black before it and the one after it (sum exactly 1), and the
  // alternating remainder in one bin.
  Layout& cert = t.certificate;
  std::vector<std::size_t> rest;
  for (std::size_t h = 0; h < items.size(); ++h) {
    const Meta& m = meta[h];
    if (m.role != Role::huge_white) continue;
    if (items[h].size.value() == 1) {
      cert.push_back({h + 1});
    } else {
      cert.push_back({h - 1, h + 1, h + 2});  // 1-based: regular black, huge white, regular black
    }
  }
  std::vector<bool> used(items.size() + 1, false);
  for (const auto& bin : cert) {
    for (std::size_t idx : bin) used[idx] = true;
  }
  for (std::size_t idx = 1; idx <= items.size(); ++idx) {
    if (!used[idx]) rest.push_back(idx);
  }
  if (!rest.empty()) cert.push_back(std::move(rest));
  check_certificate(t, static_cast<std::size_t>(N + 1));

  const Rational ratio = t.ratio_lower_bound();
  if (stopped_at_round_limit) {
    t.checks.push_back({"bins>=N^2+N-j", static_cast<std::int64_t>(t.bins_alg) >= N * N + N - j,
                        std::to_string(t.bins_alg) + " bins"});
    const Rational target(N * N + 1, N + 1);
    t.checks.push_back({"ratio>=(N^2+1)/(N+1)", ratio >= target, ratio_text(ratio)});
  } else {
    const Rational target = 2 - Rational(1, N + 1);
    t.checks.push_back({"ratio>=2-1/(N+1)", ratio >= target, ratio_text(ratio)});
  }
  return t;
}

AdversaryTranscript adversary_zero3(OnlineAlgorithm& algorithm, std::int64_t M, std::int64_t phases) {
  if (M < 2 || phases < 1) throw std::invalid_argument("zero3 adversary requires M >= 2 and phases >= 1");
  const std::array<Color, 3> palette = {colors::white, colors::red, colors::blue};

  OnlineRun run(algorithm);
  AdversaryTranscript t;
  t.adversary = "zero3";
  t.algorithm = std::string(algorithm.name());
  auto feed = [&](const Color& color) {
    const Observation obs = run.feed(color, Size::zero());
    t.observations.push_back(obs);
    return obs.item;
  };

  // The offline packing: M regular bins sharing one color, plus at most one
  // special bin per color.
  std::vector<std::vector<std::size_t>> regular(static_cast<std::size_t>(M));
  std::map<Color, std::vector<std::size_t>> special;
  for (auto& bin : regular) bin.push_back(feed(colors::white));

  Color previous = colors::white;
  std::size_t prev_bins = run.packing().bin_count();
  t.phase_colors.push_back(previous);
  t.phase_bins.push_back(prev_bins);

  CheckAccumulator recurrence("N_i>=N_{i-1}/3+M");
  CheckAccumulator closed_form("N_i>=M(3^(i+1)-1)/(2*3^i)");
  CheckAccumulator legality("argmax-count>=ceil(N_{i-1}/3)");
  Rational growth = 1;  // (3^(i+1) - 1) / (2 * 3^i)
  for (std::int64_t i = 1; i <= phases; ++i) {
    std::vector<Color> others;
    for (const auto& c : palette) {
      if (c != previous) others.push_back(c);
    }
    std::vector<std::size_t> block;
    for (std::int64_t t2 = 0; t2 < 2 * M; ++t2) block.push_back(feed(others[t2 % 2]));

    Color chosen = palette[0];
    std::size_t best = run.packing().bins_with_last_color(palette[0]);
    for (const auto& c : palette) {
      if (run.packing().bins_with_last_color(c) > best) {
        best = run.packing().bins_with_last_color(c);
        chosen = c;
      }
    }
    legality.expect(3 * best >= prev_bins, "phase " + std::to_string(i) + ": " + chosen.token() + " has " +
                                               std::to_string(best) + " of " + std::to_string(prev_bins));

    std::vector<std::size_t> tail;
    for (std::int64_t k = 0; k < M; ++k) tail.push_back(feed(chosen));

    if (chosen != previous) {
      auto& bin = special[others[1]];
      bin.insert(bin.end(), block.begin(), block.end());
      for (std::int64_t k = 0; k < M; ++k) regular[k].push_back(tail[k]);
    } else {
      for (std::int64_t k = 0; k < M; ++k) {
        regular[k].push_back(block[2 * k]);
        regular[k].push_back(block[2 * k + 1]);
        regular[k].push_back(tail[k]);
      }
    }
    previous = chosen;

    const std::size_t bins = run.packing().bin_count();
    recurrence.expect(3 * bins >= prev_bins + 3 * static_cast<std::size_t>(M),
                      "phase " + std::to_string(i) + ": " + std::to_string(bins) + " after " +
                          std::to_string(prev_bins));
    growth = growth / 3 + 1;
    closed_form.expect(Rational(bins) >= growth * M, "phase " + std::to_string(i) + ": " + std::to_string(bins));
    prev_bins = bins;
    t.phase_colors.push_back(chosen);
    t.phase_bins.push_back(bins);
  }

  t.instance = run.instance();
  t.packing = run.packing().layout();
  t.bins_alg = run.packing().bin_count();
  t.counters = {{"M", M}, {"phases", phases}};
  for (const auto& acc : {recurrence, closed_form, legality}) t.checks.push_back(acc.finish());

  t.certificate.assign(regular.begin(), regular.end());
  for (auto& [color, bin] : special) {
    if (!bin.empty()) t.certificate.push_back(bin);
  }
  check_certificate(t, static_cast<std::size_t>(M + 3));

  const Rational target = ratio(M, M + 3) * growth;
  const Rational ratio = t.ratio_lower_bound();
  t.checks.push_back({"ratio>=M/(M+3)*(3^(P+1)-1)/(2*3^P)", ratio >= target, ratio_text(ratio)});
  return t;
}

}  // namespace cbp
