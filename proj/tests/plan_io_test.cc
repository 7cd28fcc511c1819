#include <gtest/gtest.h>

#include <filesystem>

#include "mlplan/clp.h"
#include "mlplan/plan_io.h"
#include "mlplan/planner.h"
#include "mlplan/synthetic.h"
#include "support/fixtures.h"

namespace mlplan {
namespace {

using fixtures::Eth;

Plan TrianglePlan(GridKind grid) {
  PlanOptions o;
  o.grid = grid;
  return PlanNetwork(fixtures::Triangle(), {Eth("d1", "A", "C", 60), Eth("d2", "A", "B", 30),
                                            Eth("p", "B", "C", 20, ProtectionClass::kOpticalProtection),
                                            Eth("big", "A", "C", 500)},
                     fixtures::TriangleCatalog(), o)
      .plan;
}

TEST(PlanJson, RoundTripFlex) {
  const Plan p = TrianglePlan(GridKind::kFlex);
  ASSERT_FALSE(p.lightpaths.empty());
  ASSERT_FALSE(p.unserved.empty());
  EXPECT_EQ(ParsePlan(PlanToJson(p)), p);
}

TEST(PlanJson, RoundTripFixed) {
  const Plan p = TrianglePlan(GridKind::kFixed);
  const nlohmann::json j = PlanToJson(p);
  EXPECT_TRUE(j.at("lightpaths").at(0).at("spectrum").contains("channel_index"));
  EXPECT_EQ(ParsePlan(j), p);
}

TEST(PlanJson, FlexUsesSlotRange) {
  const nlohmann::json j = PlanToJson(TrianglePlan(GridKind::kFlex));
  const auto& s = j.at("lightpaths").at(0).at("spectrum");
  ASSERT_TRUE(s.contains("slot_range"));
  EXPECT_EQ(s.at("slot_range").size(), 2u);
}

TEST(PlanJson, DumpIsStable) {
  EXPECT_EQ(DumpJson(PlanToJson(TrianglePlan(GridKind::kFlex))),
            DumpJson(PlanToJson(TrianglePlan(GridKind::kFlex))));
  EXPECT_EQ(DumpJson(nlohmann::json{{"b", 1}, {"a", 2}}), "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
}

TEST(PlanJson, MalformedDocument) {
  nlohmann::json j = PlanToJson(TrianglePlan(GridKind::kFlex));
  j.at("lightpaths").at(0).erase("mode_id");
  EXPECT_THROW(ParsePlan(j), ParseError);
  EXPECT_THROW(ParsePlan(nlohmann::json::array()), ParseError);
}

TEST(PlanJson, FileRoundTrip) {
  const Plan p = TrianglePlan(GridKind::kFlex);
  const auto path = std::filesystem::temp_directory_path() / "mlplan_plan_io_test.json";
  WriteTextFile(path.string(), DumpJson(PlanToJson(p)));
  EXPECT_EQ(LoadPlan(path.string()), p);
  std::filesystem::remove(path);
  EXPECT_THROW(LoadPlan(path.string()), ParseError);
}

TEST(CandidateJson, RoundTrip) {
  Catalog c = fixtures::TriangleCatalog();
  c.planner_params.enable_restoration_precompute = true;
  const ClpGraph clp = BuildClpGraph(fixtures::Triangle(), c);
  for (const CandidateLightpath& e : clp.edges()) {
    const nlohmann::json j = e;
    EXPECT_EQ(j.get<CandidateLightpath>(), e) << j.dump();
  }
}

}  // namespace
}  // namespace mlplan
