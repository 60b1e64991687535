#include <gtest/gtest.h>

#include "cbp/core.hpp"
#include "test_support.hpp"

namespace cbp {
namespace {

using testing::sized;
using testing::zero_sized;

TEST(Color, RejectsEmptyAndWhitespaceTokens) {
  EXPECT_THROW(Color(""), std::invalid_argument);
  EXPECT_THROW(Color("light blue"), std::invalid_argument);
  EXPECT_THROW(Color("tab\there"), std::invalid_argument);
  EXPECT_NO_THROW(Color("fresh-17"));
}

TEST(Size, RangeIsClosedUnitInterval) {
  EXPECT_NO_THROW(Size(0, 1));
  EXPECT_NO_THROW(Size(1, 1));
  EXPECT_THROW(Size(3, 2), std::out_of_range);
  EXPECT_THROW(Size(-1, 2), std::out_of_range);
  EXPECT_EQ(Size(2, 4), Size(1, 2));
  EXPECT_TRUE(Size::zero().is_zero());
}

TEST(CanAccept, EmptyBinAcceptsAnything) {
  Bin bin;
  Item item{Size::one(), Color("white"), 1};
  EXPECT_TRUE(can_accept(bin, item));
}

TEST(CanAccept, SameColorForbiddenEvenAtZeroSize) {
  Bin bin;
  bin.push(Item{Size::zero(), Color("white"), 1});
  EXPECT_FALSE(can_accept(bin, Item{Size::zero(), Color("white"), 2}));
}

TEST(CanAccept, ExactFitIsAllowed) {
  Bin bin;
  bin.push(Item{Size(3, 5), Color("black"), 1});
  EXPECT_TRUE(can_accept(bin, Item{Size(2, 5), Color("white"), 2}));
  EXPECT_FALSE(can_accept(bin, Item{Size(41, 100), Color("white"), 2}));
}

TEST(Bin, PushRejectsInfeasibleItem) {
  Bin bin;
  bin.push(Item{Size(1, 2), Color("red"), 1});
  EXPECT_THROW(bin.push(Item{Size(1, 4), Color("red"), 2}), std::logic_error);
  EXPECT_EQ(bin.item_count(), 1u);
  EXPECT_EQ(bin.residual(), Rational(1, 2));
}

TEST(Validate, AcceptsSimpleValidPacking) {
  const auto instance = sized({{"white", "1/2"}, {"black", "1/2"}});
  EXPECT_TRUE(validate_packing(instance, Layout{{1, 2}}).ok());
}

TEST(Validate, ReportsColorAdjacencyWithPosition) {
  const auto instance = zero_sized({"white", "white"});
  const auto result = validate_packing(instance, Layout{{1, 2}});
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(result.violation->kind, ViolationKind::color_adjacency);
  EXPECT_EQ(result.violation->bin, 0u);
  EXPECT_EQ(result.violation->position, 1u);
  EXPECT_NE(result.violation->message.find("bin 1 position 2"), std::string::npos);
  EXPECT_STREQ(to_string(ViolationKind::color_adjacency), "color-adjacency");
}

TEST(Validate, ReportsOrderViolation) {
  const auto instance = zero_sized({"white", "black"});
  const auto result = validate_packing(instance, Layout{{2, 1}});
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(result.violation->kind, ViolationKind::order);
}

TEST(Validate, ReportsCapacityMissingDuplicateUnknownAndEmpty) {
  const auto instance = sized({{"white", "2/3"}, {"black", "2/3"}, {"white", "0"}});
  EXPECT_EQ(validate_packing(instance, Layout{{1, 2}, {3}}).violation->kind, ViolationKind::capacity);
  EXPECT_EQ(validate_packing(instance, Layout{{1}, {2}}).violation->kind, ViolationKind::missing_item);
  EXPECT_EQ(validate_packing(instance, Layout{{1}, {2}, {2, 3}}).violation->kind, ViolationKind::duplicate_item);
  EXPECT_EQ(validate_packing(instance, Layout{{1}, {2}, {3}, {4}}).violation->kind, ViolationKind::unknown_item);
  EXPECT_EQ(validate_packing(instance, Layout{{1}, {}, {2, 3}}).violation->kind, ViolationKind::empty_bin);
}

TEST(Packing, TracksBinsByLastColor) {
  const auto instance = zero_sized({"red", "blue", "red", "blue"});
  Packing packing;
  EXPECT_EQ(packing.place(instance.at(1), std::nullopt), 0u);
  EXPECT_EQ(packing.place(instance.at(2), 0), 0u);
  EXPECT_EQ(packing.place(instance.at(3), std::nullopt), 1u);
  EXPECT_EQ(packing.bins_with_last_color(Color("blue")), 1u);
  EXPECT_EQ(packing.bins_with_last_color(Color("red")), 1u);
  packing.place(instance.at(4), 1);
  EXPECT_EQ(packing.bins_with_last_color(Color("blue")), 2u);
  EXPECT_EQ(packing.bins_with_last_color(Color("red")), 0u);
  EXPECT_EQ(packing.placement_of(3), (Placement{1, 0}));
  EXPECT_EQ(packing.layout(), (Layout{{1, 2}, {3, 4}}));
}

TEST(Packing, FromLayoutRoundTripsAndRejectsInvalid) {
  const auto instance = sized({{"a", "1/3"}, {"b", "1/3"}, {"a", "1/2"}, {"c", "1/2"}});
  const Layout layout{{1, 2}, {3, 4}};
  const Packing packing = Packing::from_layout(instance, layout);
  EXPECT_EQ(packing.layout(), layout);
  EXPECT_EQ(packing.bin(0).load(), Rational(2, 3));
  EXPECT_THROW(Packing::from_layout(instance, Layout{{1, 2, 3}, {4}}), std::invalid_argument);
}

TEST(Instance, ColorsAndZeroSizeFlag) {
  const auto instance = zero_sized({"red", "blue", "red"});
  EXPECT_TRUE(instance.all_zero_size());
  EXPECT_EQ(instance.colors(), (std::vector<Color>{Color("blue"), Color("red")}));
  EXPECT_EQ(instance.at(3).index, 3u);
  EXPECT_THROW(instance.at(4), std::out_of_range);
  EXPECT_THROW(instance.at(0), std::out_of_range);
}

}  // namespace
}  // namespace cbp
