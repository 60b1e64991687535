#include <gtest/gtest.h>

#include <array>
#include <random>

#include "cbp/algorithms.hpp"
#include "cbp/bounds.hpp"
#include "cbp/harness.hpp"
#include "cbp/oracle.hpp"
#include "test_support.hpp"

namespace cbp {
namespace {

using testing::reference_opt;
using testing::sized;
using testing::zero_sized;

void expect_exact(const Instance& instance, std::size_t bins) {
  const OptResult o = opt(instance);
  ASSERT_TRUE(o.exact) << o.note;
  EXPECT_EQ(o.bins, bins);
  EXPECT_TRUE(validate_packing(instance, o.certificate).ok());
  EXPECT_EQ(o.certificate.bin_count(), bins);
}

TEST(Opt, Examples) {
  expect_exact(zero_sized({"R", "R", "R"}), 3);
  expect_exact(sized({{"white", "1/4"}, {"black", "1/4"}, {"white", "1/4"}, {"black", "1/4"}}), 1);
  expect_exact(zero_sized({"R", "R", "B", "R"}), 2);
  expect_exact(Instance{}, 0);
}

TEST(Opt, BranchAndBoundWithoutFastPath) {
  OracleLimits limits;
  limits.zero_size_fast_path = false;
  const auto o = opt(zero_sized({"R", "R", "B", "R"}), limits);
  ASSERT_TRUE(o.exact);
  EXPECT_EQ(o.bins, 2u);
  EXPECT_TRUE(validate_packing(zero_sized({"R", "R", "B", "R"}), o.certificate).ok());
}

TEST(OptZeroSize, Examples) {
  std::vector<std::string> blocks(5, "red");
  blocks.insert(blocks.end(), 5, "blue");
  EXPECT_EQ(opt_zero_size(zero_sized(blocks)), 5u);

  std::vector<std::string> alternating;
  for (int t = 0; t < 30; ++t) alternating.push_back(std::array<const char*, 3>{"a", "b", "c"}[t % 3]);
  EXPECT_EQ(opt_zero_size(zero_sized(alternating)), 1u);
}

TEST(Opt, LimitsAreReportedNotHidden) {
  OracleLimits limits;
  limits.max_items_general = 3;
  const auto o = opt(sized({{"a", "1/2"}, {"b", "1/2"}, {"a", "1/2"}, {"b", "1/2"}}), limits);
  EXPECT_FALSE(o.exact);
  EXPECT_NE(o.note.find("limit exceeded"), std::string::npos);
  EXPECT_TRUE(validate_packing(sized({{"a", "1/2"}, {"b", "1/2"}, {"a", "1/2"}, {"b", "1/2"}}), o.certificate).ok());

  limits = {};
  limits.budget = std::chrono::milliseconds(0);
  EXPECT_FALSE(opt(zero_sized({"a", "a"}), limits).exact);
  EXPECT_FALSE(opt(sized({{"a", "1/2"}}), limits).exact);
}

TEST(Opt, HugeDenominatorsAreRefused) {
  Instance instance;
  instance.add(Color("a"), Size(Rational(1, mpz_class("1000000000000000000000"))));
  instance.add(Color("b"), Size(1, 3));
  const auto o = opt(instance);
  EXPECT_FALSE(o.exact);
  EXPECT_EQ(o.bins, 1u);
}

TEST(OptExhaustive, Guard) {
  std::vector<std::string> colors(kExhaustiveMaxItems + 1, "x");
  EXPECT_THROW(opt_exhaustive(zero_sized(colors)), std::length_error);
  EXPECT_EQ(opt_exhaustive(Instance{}), 0u);
}

// Three independent routes must agree: set-partition enumeration in test
// code, the library's placement enumeration, and the memoized search.
TEST(OptProperty, AgreesWithEnumeration) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 150; ++t) {
    const Instance instance =
        random_instance({1, 9, std::size_t(2 + t % 3), t % 3 == 0 ? SizeMode::zero : SizeMode::mixed, 6}, rng);
    const std::size_t expected = reference_opt(instance);
    ASSERT_EQ(opt_exhaustive(instance), expected) << serialize_instance(instance);
    const auto bnb = opt_branch_and_bound(instance);
    ASSERT_TRUE(bnb.exact);
    ASSERT_EQ(bnb.bins, expected) << serialize_instance(instance);
    ASSERT_TRUE(validate_packing(instance, bnb.certificate).ok());
    if (instance.all_zero_size()) {
      ASSERT_EQ(opt_zero_size(instance), expected);
    }
  }
}

TEST(OptProperty, BoundsOnlineAndLowerBounds) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 150; ++t) {
    const Instance instance = random_instance({1, 16, 3, SizeMode::rational, 8}, rng);
    const auto o = opt(instance);
    ASSERT_TRUE(o.exact);
    const auto b = compute_bounds(instance);
    ASSERT_GE(static_cast<std::int64_t>(o.bins), b.combined);
    for (auto token : algorithm_tokens()) ASSERT_GE(run(token, instance).packing.bin_count(), o.bins) << token;
  }
}

TEST(OptProperty, ZeroSizeSolverMatchesSearch) {
  std::mt19937_64 rng(29);
  OracleLimits slow;
  slow.zero_size_fast_path = false;
  for (int t = 0; t < 100; ++t) {
    const Instance instance = random_instance({1, 14, 3, SizeMode::zero, 1}, rng);
    const auto fast = solve_zero_size(instance);
    ASSERT_TRUE(validate_packing(instance, fast.certificate).ok());
    ASSERT_EQ(fast.certificate.bin_count(), fast.bins);
    ASSERT_EQ(fast.bins, opt(instance, slow).bins) << serialize_instance(instance);
  }
}

TEST(OptProperty, PseudoOptimalForTwoColorsZeroSize) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const Instance instance = random_instance({1, 40, 2, SizeMode::zero, 1}, rng);
    ASSERT_EQ(run("pseudo", instance).packing.bin_count(), opt_zero_size(instance)) << serialize_instance(instance);
  }
}

}  // namespace
}  // namespace cbp
