#include <gtest/gtest.h>

#include <random>

#include "mlplan/bom.h"
#include "mlplan/ingest.h"
#include "mlplan/planner.h"
#include "mlplan/synthetic.h"
#include "support/fixtures.h"

namespace mlplan {
namespace {

double Qty(const BillOfMaterial& bom, const std::string& kind) {
  const BomItem* i = bom.Find(kind);
  return i == nullptr ? -1 : i->quantity;
}

FiberGraph FiveSpanLink() {
  return FiberGraph({{"A", "A", RoadmClass::kFixed}, {"B", "B", RoadmClass::kDirectionless}},
                    {{"AB", "A", "B", 400, DefaultSpans(400), 1}});
}

Lightpath OnLink(SpectrumState& s, const std::string& id, const std::vector<std::string>& route,
                 const std::string& a, const std::string& b) {
  Lightpath lp;
  lp.id = id;
  lp.a = a;
  lp.b = b;
  lp.mode_id = "100G";
  lp.line_rate_gbps = 100;
  lp.spectrum = *s.Assign(route, 3);
  return lp;
}

TEST(FitEquipment, OneLightpathOnFiveSpanLink) {
  const FiberGraph g = FiveSpanLink();
  const Catalog c = SimpleCatalog();
  SpectrumState s(g, c.grid);
  const std::vector<Lightpath> lps = {OnLink(s, "lp-1", {"AB"}, "A", "B")};
  const BillOfMaterial bom = FitEquipment(lps, s, g, c);
  EXPECT_EQ(Qty(bom, "transponder:100G"), 2);
  EXPECT_EQ(Qty(bom, "amplifier_inline"), 4);
  EXPECT_EQ(Qty(bom, "amplifier_terminal"), 2);
  EXPECT_EQ(Qty(bom, "roadm_degree_fixed"), 1);
  EXPECT_EQ(Qty(bom, "roadm_degree_directionless"), 1);
  EXPECT_EQ(Qty(bom, "roadm_degree_colorless_directionless"), 0);
  EXPECT_EQ(Qty(bom, "fiber_km"), 400);
  EXPECT_EQ(Qty(bom, "shelf"), 2);
  EXPECT_EQ(Qty(bom, "protection_module"), 0);
}

TEST(FitEquipment, EmptyPlanIsAllZero) {
  const FiberGraph g = fixtures::Triangle();
  const Catalog c = SimpleCatalog();
  const SpectrumState s(g, c.grid);
  const BillOfMaterial bom = FitEquipment({}, s, g, c);
  EXPECT_FALSE(bom.items.empty());
  for (const BomItem& i : bom.items) EXPECT_EQ(i.quantity, 0) << i.kind;
  EXPECT_EQ(bom.total_cost, 0);
  EXPECT_EQ(bom.total_power, 0);
}

TEST(FitEquipment, OnePlusOneAddsProtectionModule) {
  const FiberGraph g = fixtures::Triangle();
  const Catalog c = SimpleCatalog();
  SpectrumState s(g, c.grid);
  Lightpath lp = OnLink(s, "lp-1", {"AB", "BC"}, "A", "C");
  lp.protection_spectrum = *s.Assign({"AC"}, 3);
  const BillOfMaterial bom = FitEquipment({lp}, s, g, c);
  EXPECT_EQ(Qty(bom, "transponder:100G"), 2);
  EXPECT_EQ(Qty(bom, "protection_module"), 1);
  // Working and protection fibers are both lit.
  EXPECT_EQ(Qty(bom, "amplifier_terminal"), 6);
  EXPECT_EQ(Qty(bom, "roadm_degree_fixed"), 6);
}

TEST(FitEquipment, OverbuiltInstanceCountsAsExtraFiber) {
  const FiberGraph g = FiveSpanLink();
  const Catalog c = SimpleCatalog();
  SpectrumState s(g, c.grid);
  s.Overbuild("AB");
  s.Occupy({GridKind::kFlex, 0, 3, {{"AB", 0}}});
  s.Occupy({GridKind::kFlex, 0, 3, {{"AB", 1}}});
  const BillOfMaterial bom = FitEquipment({}, s, g, c);
  EXPECT_EQ(Qty(bom, "amplifier_inline"), 8);
  EXPECT_EQ(Qty(bom, "fiber_km"), 800);
  EXPECT_EQ(Qty(bom, "roadm_degree_fixed"), 2);
}

TEST(FitEquipment, ShelvesRoundUp) {
  const FiberGraph g = FiveSpanLink();
  Catalog c = SimpleCatalog();
  c.slots_per_shelf = 2;
  SpectrumState s(g, c.grid);
  std::vector<Lightpath> lps;
  for (int i = 0; i < 3; ++i) lps.push_back(OnLink(s, "lp-" + std::to_string(i), {"AB"}, "A", "B"));
  EXPECT_EQ(Qty(FitEquipment(lps, s, g, c), "shelf"), 4);
}

TEST(FitEquipment, TotalsRecomputeFromItems) {
  const FiberGraph g = fixtures::Triangle();
  const Catalog c = SimpleCatalog();
  SpectrumState s(g, c.grid);
  const std::vector<Lightpath> lps = {OnLink(s, "lp-1", {"AB"}, "A", "B"),
                                      OnLink(s, "lp-2", {"AB", "BC"}, "A", "C")};
  BillOfMaterial bom = FitEquipment(lps, s, g, c);
  double cost = 0;
  double power = 0;
  for (const BomItem& i : bom.items) {
    cost += i.quantity * i.unit_cost;
    power += i.quantity * i.unit_power;
  }
  EXPECT_EQ(bom.total_cost, cost);
  EXPECT_EQ(bom.total_power, power);
  const BillOfMaterial copy = bom;
  RecomputeTotals(bom);
  EXPECT_EQ(bom, copy);
}

TEST(FitEquipment, CostNeverDropsWhenALightpathIsAdded) {
  std::mt19937_64 rng(8);
  const FiberGraph g = RandomTopology({}, 4);
  const Catalog c = SimpleCatalog();
  SpectrumState s(g, c.grid);
  std::vector<Lightpath> lps;
  double prev = FitEquipment(lps, s, g, c).total_cost;
  for (int i = 0; i < 40; ++i) {
    const FiberLink& l = g.link(std::uniform_int_distribution<std::size_t>(0, g.links().size() - 1)(rng));
    lps.push_back(OnLink(s, "lp-" + std::to_string(i), {l.id}, l.a, l.b));
    const double cost = FitEquipment(lps, s, g, c).total_cost;
    EXPECT_GE(cost, prev);
    prev = cost;
  }
}

TEST(Summarize, CountsAndOccupancy) {
  const FiberGraph g = fixtures::Triangle();
  const Catalog c = SimpleCatalog();
  SpectrumState s(g, c.grid);
  Plan plan;
  plan.grid = c.grid;
  for (int i = 0; i < 3; ++i) plan.lightpaths.push_back(OnLink(s, "lp-" + std::to_string(i), {"AB"}, "A", "B"));
  s.Occupy({GridKind::kFlex, 9, 12, {{"AB", 0}}});
  plan.bom = FitEquipment(plan.lightpaths, s, g, c);
  const PlanMetrics m = Summarize(plan, s, g);
  EXPECT_EQ(m.lightpath_count, 3);
  EXPECT_EQ(m.transponder_count, 6);
  EXPECT_DOUBLE_EQ(m.avg_link_occupancy, (12.0 / 384) / 3);
  EXPECT_DOUBLE_EQ(m.max_link_occupancy, 12.0 / 384);
  EXPECT_TRUE(m.fragmentation_applicable);
  EXPECT_EQ(m.cost_units, plan.bom.total_cost);
}

TEST(Summarize, FixedGridFragmentationNotApplicable) {
  const FiberGraph g = fixtures::Triangle();
  Catalog c = SimpleCatalog();
  c.grid.kind = GridKind::kFixed;
  const SpectrumState s(g, c.grid);
  const PlanMetrics m = Summarize(Plan{}, s, g);
  EXPECT_FALSE(m.fragmentation_applicable);
  EXPECT_EQ(m.avg_fragmentation, 0);
}

TEST(Summarize, OverbuiltFibers) {
  const FiberGraph g = fixtures::Triangle();
  const Catalog c = SimpleCatalog();
  SpectrumState s(g, c.grid);
  s.Overbuild("AB");
  s.Overbuild("AB");
  EXPECT_EQ(Summarize(Plan{}, s, g).overbuilt_fiber_count, 2);
}

TEST(Bom, TransponderRuleOnPlannedNetworks) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const FiberGraph g = RandomTopology({}, seed);
    auto demands = RandomDemands(g, 20, 10, 100, seed);
    demands[1].protection = ProtectionClass::kOpticalProtection;
    const PlanRun run = PlanNetwork(g, demands, SimpleCatalog(3000), {});
    const Plan& p = run.plan;
    int protected_count = 0;
    for (const Lightpath& lp : p.lightpaths) protected_count += lp.protected_1p1() ? 1 : 0;
    EXPECT_EQ(p.metrics.transponder_count, 2 * p.metrics.lightpath_count);
    EXPECT_EQ(Qty(p.bom, "transponder:100G"), p.metrics.transponder_count);
    EXPECT_EQ(Qty(p.bom, "protection_module"), protected_count);
    BillOfMaterial again = p.bom;
    RecomputeTotals(again);
    EXPECT_EQ(again.total_cost, p.bom.total_cost);
  }
}

TEST(BomCsv, Layout) {
  BillOfMaterial bom{{{"shelf", 2, 3, 10}}, 6, 20};
  EXPECT_EQ(BomCsv(bom), "kind,quantity,unit_cost,total_cost,unit_power,total_power\n"
                         "shelf,2,3,6,10,20\ntotal,,,6,,20\n");
}

}  // namespace
}  // namespace mlplan
