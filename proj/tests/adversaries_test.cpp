#include <gtest/gtest.h>

#include <set>

#include "cbp/adversaries.hpp"
#include "cbp/algorithms.hpp"
#include "cbp/oracle.hpp"

namespace cbp {
namespace {

std::size_t count_color(const Instance& instance, std::size_t first, std::size_t last, const Color& color) {
  std::size_t n = 0;
  for (std::size_t i = first; i <= last; ++i) n += instance.at(i).color == color;
  return n;
}

void expect_certificate(const GeneratedInstance& g, std::size_t bins) {
  const auto v = validate_packing(g.instance, g.certificate);
  EXPECT_TRUE(v.ok()) << g.family << ": " << (v.ok() ? "" : v.violation->message);
  EXPECT_EQ(g.certificate.size(), bins) << g.family;
  EXPECT_EQ(g.certificate_bins, bins) << g.family;
}

TEST(Prop1, EpsVariantSizesAndCertificate) {
  const auto g = gen_prop1(Prop1Variant::eps, 4, 2);
  ASSERT_EQ(g.instance.size(), 24u);
  for (const auto& item : g.instance.items()) EXPECT_EQ(item.size.value(), Rational(1, 64));
  EXPECT_EQ(g.instance.at(5).color, colors::red);
  EXPECT_EQ(g.instance.at(6).color, colors::blue);
  expect_certificate(g, 4);
}

TEST(Prop1, WfVariantSizes) {
  const auto g = gen_prop1(Prop1Variant::wf, 4, 2);
  const Rational eps(1, 64);
  for (const auto& item : g.instance.items()) {
    const std::size_t offset = (item.index - 1) % 12;
    const bool late_white = offset >= 1 && offset < 4;
    EXPECT_EQ(item.size.value(), late_white ? eps : eps * eps) << item.index;
  }
  expect_certificate(g, 4);
}

TEST(Prop1, OracleAgreesWithCertificate) {
  OracleLimits limits;
  limits.max_items_general = 24;
  const auto o = opt(gen_prop1(Prop1Variant::eps, 4, 2).instance, limits);
  ASSERT_TRUE(o.exact);
  EXPECT_EQ(o.bins, 4u);
}

TEST(Prop1, Guards) {
  EXPECT_THROW(gen_prop1(Prop1Variant::eps, 3, 2), std::invalid_argument);
  EXPECT_THROW(gen_prop1(Prop1Variant::eps, 4, 1), std::invalid_argument);
}

TEST(CascadeFactor, ClosedFormMatchesRecurrence) {
  Rational a = 1;
  for (int i = 1; i <= 8; ++i) {
    EXPECT_EQ(cascade_factor(i), a) << i;
    a = (3 * a + 2) / 4;
  }
}

TEST(BapZero, PhaseCountsForNTwo) {
  const auto g = gen_bap_zero(2);
  const std::size_t M = 64;
  ASSERT_EQ(g.instance.size(), M + 2 * (M + M));
  EXPECT_EQ(count_color(g.instance, 1, M, colors::white), M);
  EXPECT_EQ(count_color(g.instance, M + 1, M + 32, colors::red), 32u);
  EXPECT_EQ(count_color(g.instance, M + 33, M + 64, colors::blue), 32u);
  const std::size_t p2 = 3 * M;
  EXPECT_EQ(count_color(g.instance, p2 + 1, p2 + 40, colors::red), 40u);
  EXPECT_EQ(count_color(g.instance, p2 + 41, p2 + 64, colors::blue), 24u);
  EXPECT_EQ(count_color(g.instance, p2 + 65, p2 + 128, colors::white), M);
  EXPECT_TRUE(g.instance.all_zero_size());
  expect_certificate(g, M);
}

TEST(BapZero, PseudoBinGrowthOnSmallCascade) {
  const auto g = gen_bap_zero_cascade(16, 1);
  BalancedPseudo bap(TieBreak::min_index);
  OnlineRun driver(bap);
  for (std::size_t i = 1; i <= 16; ++i) driver.feed(g.instance.at(i));
  EXPECT_EQ(bap.pseudo_bins()->k(), 16u);
  for (std::size_t i = 17; i <= g.instance.size(); ++i) driver.feed(g.instance.at(i));
  EXPECT_EQ(bap.pseudo_bins()->k(), 20u);
}

TEST(BapZero, OracleOnSmallCascade) {
  const auto g = gen_bap_zero_cascade(4, 1);
  ASSERT_EQ(g.instance.size(), 12u);
  EXPECT_EQ(opt_zero_size(g.instance), 4u);
}

TEST(BapZero, NTwoPseudoBinCount) {
  const auto r = run("bap", gen_bap_zero(2).instance, TieBreak::min_index);
  EXPECT_EQ(r.pseudo_bin_count, 92u);
  EXPECT_EQ(r.packing.bin_count(), 92u);
}

TEST(BapZero, Guards) {
  EXPECT_THROW(gen_bap_zero(1), std::invalid_argument);
  EXPECT_THROW(gen_bap_zero(kMaxCascadeN + 1), std::invalid_argument);
}

TEST(BapGeneral, ContinuationShape) {
  const auto g = gen_bap_general(2, default_cascade_eps(2));
  const std::size_t base = gen_bap_zero(2).instance.size();
  ASSERT_EQ(g.instance.size(), base + 91 + 63 + 62);
  std::set<Color> fresh;
  for (std::size_t i = base + 1; i <= g.instance.size(); ++i) {
    const Item& item = g.instance.at(i);
    if (i > base + 91 && i <= base + 154) {
      EXPECT_EQ(item.color, colors::black);
      EXPECT_EQ(item.size.value(), 1 - default_cascade_eps(2));
    } else {
      EXPECT_TRUE(fresh.insert(item.color).second) << item.color.token();
      EXPECT_EQ(item.size.value(), 2 * default_cascade_eps(2));
    }
  }
  for (const auto& c : {colors::white, colors::red, colors::blue, colors::black}) EXPECT_FALSE(fresh.count(c));
  expect_certificate(g, 64);
}

TEST(BapGeneral, EpsGuard) {
  EXPECT_THROW(gen_bap_general(2, Rational(1, 512)), std::invalid_argument);
  EXPECT_THROW(gen_bap_general(2, Rational(0)), std::invalid_argument);
  EXPECT_NO_THROW(gen_bap_general(2, Rational(1, 513)));
}

TEST(Bap3Color, TraceAndCertificate) {
  const auto g = gen_bap_3color(2, default_cascade_eps(2));
  expect_certificate(g, 66);
  BalancedPseudo bap(TieBreak::min_index);
  const auto r = run(bap, g.instance);
  EXPECT_GE(r.packing.bin_count(), 220u);
  for (std::size_t j = 0; j < 64; ++j) EXPECT_EQ(bap.pseudo_bins()->at(j).bins.size(), 3u) << j;
}

TEST(Lb2, ChecksHoldForEveryAlgorithm) {
  for (std::int64_t N : {4, 6, 10}) {
    for (auto token : algorithm_tokens()) {
      auto algorithm = make_algorithm(token, TieBreak::min_index);
      const auto t = adversary_lb2(*algorithm, N);
      for (const auto& c : t.checks) EXPECT_TRUE(c.passed) << token << " N=" << N << ": " << c.name << " " << c.detail;
      EXPECT_LE(t.certificate_bins, static_cast<std::size_t>(N + 1));
      EXPECT_EQ(t.observations.size(), t.instance.size());
      if (t.counters.at("j") == N) {
        EXPECT_GE(t.bins_alg, static_cast<std::size_t>(2 * N + 1));
      }
      if (t.counters.at("i") == N * N) {
        EXPECT_GE(t.bins_alg, static_cast<std::size_t>(N * N + 1));
      }
    }
  }
}

TEST(Lb2, Guard) {
  auto algorithm = make_algorithm("ff");
  EXPECT_THROW(adversary_lb2(*algorithm, 3), std::invalid_argument);
}

TEST(Zero3, GrowthAfterTwoPhases) {
  for (auto token : algorithm_tokens()) {
    auto algorithm = make_algorithm(token);
    const auto t = adversary_zero3(*algorithm, 9, 2);
    EXPECT_TRUE(t.all_checks_passed()) << token;
    ASSERT_EQ(t.phase_bins.size(), 3u);
    EXPECT_GE(t.phase_bins[2], 13u) << token;
    EXPECT_LE(t.certificate_bins, 12u);
  }
}

TEST(Zero3, PseudoReplay) {
  Pseudo pseudo(TieBreak::min_index);
  const auto t = adversary_zero3(pseudo, 3, 1);
  EXPECT_TRUE(t.all_checks_passed());
  EXPECT_TRUE(validate_packing(t.instance, t.certificate).ok());
  EXPECT_EQ(run("pseudo", t.instance, TieBreak::min_index).packing.layout(), t.packing);
}

TEST(Zero3, DefaultPhasesApproachThreeHalves) {
  auto algorithm = make_algorithm("bap");
  const auto t = adversary_zero3(*algorithm, 30, kDefaultZero3Phases);
  EXPECT_TRUE(t.all_checks_passed());
  EXPECT_GE(t.ratio_lower_bound(), ratio(30, 33) * Rational(3, 2) - Rational(1, 10000));
}

}  // namespace
}  // namespace cbp
