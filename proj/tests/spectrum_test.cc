#include <gtest/gtest.h>

#include "mlplan/ingest.h"
#include "mlplan/spectrum.h"
#include "support/fixtures.h"
#include "support/spectrum_fuzz.h"

namespace mlplan {
namespace {

GridSpec Flex(int slots = 384) {
  GridSpec g;
  g.kind = GridKind::kFlex;
  g.total_slots = slots;
  return g;
}

GridSpec Fixed() {
  GridSpec g;
  g.kind = GridKind::kFixed;
  return g;
}

const std::vector<std::string> kRoute = {"AB", "BC"};

TEST(Assign, EmptyRoute) {
  SpectrumState s(fixtures::PathGraph(), Flex());
  const auto a = s.Assign(kRoute, 3);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->lo, 0);
  EXPECT_EQ(a->hi, 3);
  EXPECT_EQ(a->links, (std::vector<LinkInstance>{{"AB", 0}, {"BC", 0}}));
  EXPECT_EQ(s.UsedUnits("AB", 0), 3);
  EXPECT_EQ(s.UsedUnits("BC", 0), 3);
}

TEST(Assign, ContinuitySkipsBusyWindow) {
  SpectrumState s(fixtures::PathGraph(), Flex());
  s.Occupy({GridKind::kFlex, 0, 3, {{"AB", 0}}});
  const auto a = s.Assign(kRoute, 3);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->lo, 3);
  EXPECT_EQ(a->hi, 6);
}

TEST(Assign, FixedGridNextChannel) {
  SpectrumState s(fixtures::PathGraph(), Fixed());
  ASSERT_TRUE(s.Assign(kRoute, 1));
  ASSERT_TRUE(s.Assign(kRoute, 1));
  const auto a = s.Assign(kRoute, 1);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->lo, 2);
  EXPECT_EQ(a->grid, GridKind::kFixed);
}

TEST(Assign, ExactFitPrefersSmallestBlock) {
  SpectrumState s(fixtures::PathGraph(), Flex(16));
  // Free blocks on AB: [0,4) and [5,8) and [9,16).
  s.Occupy({GridKind::kFlex, 4, 5, {{"AB", 0}}});
  s.Occupy({GridKind::kFlex, 8, 9, {{"AB", 0}}});
  const auto a = s.Assign({"AB"}, 3, SpectrumPolicy::kExactFit);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->lo, 5);
  SpectrumState f(fixtures::PathGraph(), Flex(16));
  f.Occupy({GridKind::kFlex, 4, 5, {{"AB", 0}}});
  EXPECT_EQ(f.Assign({"AB"}, 3, SpectrumPolicy::kFirstFit)->lo, 0);
}

TEST(Assign, NothingFitsLeavesStateAlone) {
  SpectrumState s(fixtures::PathGraph(), Flex(6), false);
  ASSERT_TRUE(s.Assign({"AB"}, 4));
  const SpectrumState before = s;
  EXPECT_FALSE(s.Assign(kRoute, 3));
  EXPECT_FALSE(s.AssignWithOverbuild(kRoute, 3));
  EXPECT_EQ(s, before);
}

TEST(Assign, OverlapRejected) {
  SpectrumState s(fixtures::PathGraph(), Flex());
  s.Occupy({GridKind::kFlex, 0, 3, {{"AB", 0}}});
  EXPECT_THROW(s.Occupy({GridKind::kFlex, 2, 4, {{"AB", 0}}}), Error);
}

TEST(Fragmentation, Examples) {
  SpectrumState s(fixtures::PathGraph(), Flex(8));
  EXPECT_DOUBLE_EQ(s.Fragmentation("AB", 0), 0);
  // Free {0,1,4,5,6}.
  s.Occupy({GridKind::kFlex, 2, 4, {{"AB", 0}}});
  s.Occupy({GridKind::kFlex, 7, 8, {{"AB", 0}}});
  EXPECT_DOUBLE_EQ(s.Fragmentation("AB", 0), 0.4);
  s.Occupy({GridKind::kFlex, 0, 2, {{"AB", 0}}});
  s.Occupy({GridKind::kFlex, 4, 7, {{"AB", 0}}});
  EXPECT_DOUBLE_EQ(s.Fragmentation("AB", 0), 0);
}

TEST(Overbuild, FullInstanceSpillsToNewFiber) {
  SpectrumState s(fixtures::PathGraph(), Fixed());
  for (int i = 0; i < 96; ++i) ASSERT_TRUE(s.Assign({"AB"}, 1));
  EXPECT_FALSE(s.Assign({"AB"}, 1));
  const auto a = s.AssignWithOverbuild(kRoute, 1);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->lo, 0);
  EXPECT_EQ(a->links, (std::vector<LinkInstance>{{"AB", 1}, {"BC", 0}}));
  EXPECT_EQ(s.InstanceCount("AB"), 2);
  EXPECT_EQ(s.InstanceCount("BC"), 1);
  EXPECT_EQ(s.InstalledFiberCount("AB"), 1);
}

TEST(Overbuild, UntouchedLink) {
  SpectrumState s(fixtures::PathGraph(), Flex());
  EXPECT_EQ(s.Overbuild("BC"), 1);
  EXPECT_EQ(s.InstanceCount("BC"), 2);
  EXPECT_FALSE(s.InstanceUsed("BC", 0));
}

TEST(Overbuild, DisabledOrCapped) {
  SpectrumState off(fixtures::PathGraph(), Flex(), false);
  EXPECT_THROW(off.Overbuild("AB"), Error);
  SpectrumState capped(fixtures::PathGraph(), Flex(), true, 2);
  EXPECT_EQ(capped.Overbuild("AB"), 1);
  EXPECT_THROW(capped.Overbuild("AB"), Error);
}

TEST(Overbuild, InstalledFibersCountFromTopology) {
  std::vector<FiberLink> links = fixtures::PathGraph().links();
  links[0].fiber_count = 3;
  SpectrumState s(FiberGraph(fixtures::PathGraph().nodes(), links), Flex());
  EXPECT_EQ(s.InstanceCount("AB"), 3);
  EXPECT_EQ(s.InstalledFiberCount("AB"), 3);
}

TEST(Release, FreesUnits) {
  SpectrumState s(fixtures::PathGraph(), Flex());
  const auto a = s.Assign(kRoute, 3);
  s.Release(*a);
  EXPECT_EQ(s.UsedUnits("AB", 0), 0);
  EXPECT_EQ(s.Assign(kRoute, 3)->lo, 0);
}

TEST(SpectrumFuzz, FlexAgainstExhaustiveScan) {
  const auto r = oracle::FuzzSpectrum(11, 10000, GridKind::kFlex);
  EXPECT_EQ(r.violations, 0) << r.first_violation;
  EXPECT_GT(r.overbuilds, 0);
  EXPECT_GT(r.releases, 0);
}

TEST(SpectrumFuzz, FixedAgainstExhaustiveScan) {
  const auto r = oracle::FuzzSpectrum(12, 5000, GridKind::kFixed);
  EXPECT_EQ(r.violations, 0) << r.first_violation;
}

}  // namespace
}  // namespace mlplan
