#include <gtest/gtest.h>

#include "mlplan/ingest.h"
#include "support/fixtures.h"

namespace mlplan {
namespace {

using fixtures::FixturePath;
using nlohmann::json;

TEST(LoadTopology, Triangle) {
  const FiberGraph g = LoadTopology(FixturePath("triangle/topology.json"));
  EXPECT_EQ(g.nodes().size(), 3u);
  EXPECT_EQ(g.links().size(), 3u);
  EXPECT_EQ(g.links()[0].id, "AB");
  EXPECT_EQ(g.NodeById("B").roadm_class, RoadmClass::kDirectionless);
}

TEST(LoadTopology, MissingLengthNamesTheLink) {
  try {
    LoadTopology(FixturePath("invalid/missing_length.json"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("X"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("length_km"), std::string::npos) << e.what();
  }
}

TEST(LoadTopology, DuplicateNode) {
  try {
    LoadTopology(FixturePath("invalid/duplicate_node.json"));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("duplicate id"), std::string::npos) << e.what();
  }
}

TEST(LoadTopology, MissingFileIsParseError) {
  EXPECT_THROW(LoadTopology(FixturePath("does/not/exist.json")), ParseError);
}

TEST(DefaultSpans, EightyKmSpansAtQuarterDbPerKm) {
  const auto spans = DefaultSpans(400);
  ASSERT_EQ(spans.size(), 5u);
  for (const Span& s : spans) {
    EXPECT_DOUBLE_EQ(s.length_km, 80);
    EXPECT_DOUBLE_EQ(s.loss_db, 20);
  }
  const auto odd = DefaultSpans(900);
  ASSERT_EQ(odd.size(), 12u);
  EXPECT_DOUBLE_EQ(odd[0].length_km, 75);
}

TEST(LoadDemands, PacketAndOduRows) {
  const FiberGraph g = LoadTopology(FixturePath("triangle/topology.json"));
  const auto d = LoadDemands(FixturePath("triangle/demands_mixed.json"), g);
  ASSERT_EQ(d.size(), 5u);
  EXPECT_EQ(d[0].bitrate_gbps, 60);
  EXPECT_EQ(d[1].count, 3);
  EXPECT_DOUBLE_EQ(d[1].EffectiveGbps(), 30);
  EXPECT_EQ(d[2].protection, ProtectionClass::kOpticalRestoration);
  EXPECT_EQ(d[4].id, "d5");
}

TEST(LoadDemands, UnknownNode) {
  const FiberGraph g = LoadTopology(FixturePath("triangle/topology.json"));
  try {
    LoadDemands(FixturePath("invalid/unknown_node_demands.json"), g);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown node Z"), std::string::npos) << e.what();
  }
}

TEST(ParseDemands, BitrateAndCountAreExclusive) {
  const FiberGraph g = fixtures::Triangle();
  json both = {{"demands", {{{"id", "x"}, {"src", "A"}, {"dst", "B"}, {"service_type", "ethernet"},
                             {"bitrate_gbps", 10}, {"count", 2}}}}};
  EXPECT_THROW(ParseDemands(both, g), ParseError);
  json neither = {{"demands", {{{"id", "x"}, {"src", "A"}, {"dst", "B"}, {"service_type", "odu1"}}}}};
  EXPECT_THROW(ParseDemands(neither, g), ParseError);
  json wrong_kind = {{"demands", {{{"id", "x"}, {"src", "A"}, {"dst", "B"}, {"service_type", "odu1"},
                                   {"bitrate_gbps", 10}}}}};
  EXPECT_THROW(ParseDemands(wrong_kind, g), ParseError);
}

TEST(ParseDemands, ExplicitRouteMustSpanEndpoints) {
  const FiberGraph g = fixtures::Triangle();
  json doc = {{"demands", {{{"id", "x"}, {"src", "A"}, {"dst", "C"}, {"service_type", "ethernet"},
                            {"bitrate_gbps", 10}, {"explicit_route", {"A", "B"}}}}}};
  EXPECT_THROW(ParseDemands(doc, g), ValidationError);
  doc["demands"][0]["explicit_route"] = {"A", "B", "C"};
  EXPECT_EQ(ParseDemands(doc, g)[0].explicit_route->size(), 3u);
}

TEST(LoadCatalog, AsGiven) {
  const Catalog c = LoadCatalog(FixturePath("triangle/catalog.json"));
  ASSERT_EQ(c.transponder_modes.size(), 1u);
  EXPECT_EQ(c.transponder_modes[0].id, "100G");
  EXPECT_EQ(c.grid.kind, GridKind::kFlex);
  EXPECT_EQ(c.planner_params.k_grooming, 1);
  EXPECT_DOUBLE_EQ(c.margins.aging_margin_db, 1);
  EXPECT_DOUBLE_EQ(c.Cost("roadm_degree_directionless").cost_units, 4);
}

TEST(LoadCatalog, DefaultsForAbsentPlannerParams) {
  json doc = {{"modes", {{{"id", "m"}, {"line_rate_gbps", 100}, {"slot_width_ghz", 50},
                          {"required_osnr_db", 10}, {"max_reach_km", 1000}}}}};
  const Catalog c = ParseCatalog(doc);
  EXPECT_EQ(c.planner_params.k_paths, 3);
  EXPECT_EQ(c.planner_params.k_grooming, 2);
  EXPECT_DOUBLE_EQ(c.planner_params.grooming_threshold, 0.5);
  EXPECT_EQ(c.grid.total_slots, 384);
}

TEST(LoadCatalog, ThresholdOutOfRange) {
  try {
    LoadCatalog(FixturePath("invalid/threshold_catalog.json"));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    bool found = std::string(e.what()).find("threshold out of range") != std::string::npos;
    for (const auto& d : e.details()) found |= d.find("threshold out of range") != std::string::npos;
    EXPECT_TRUE(found) << e.what();
  }
}

TEST(LoadCatalog, NegativeMarginAndNoModes) {
  json doc = {{"modes", {{{"id", "m"}, {"line_rate_gbps", 100}, {"slot_width_ghz", 50},
                          {"required_osnr_db", 10}, {"max_reach_km", 1000}}}},
              {"margins", {{"aging_margin_db", -1}}}};
  EXPECT_THROW(ParseCatalog(doc), ValidationError);
  EXPECT_THROW(ParseCatalog(json{{"modes", json::array()}}), ValidationError);
}

TEST(Writers, RoundTripThroughParsers) {
  const FiberGraph g = LoadTopology(FixturePath("triangle/topology.json"));
  EXPECT_EQ(ParseTopology(TopologyToJson(g)), g);
  const auto d = LoadDemands(FixturePath("triangle/demands_mixed.json"), g);
  EXPECT_EQ(ParseDemands(DemandsToJson(d), g), d);
  const Catalog c = LoadCatalog(FixturePath("triangle/catalog.json"));
  EXPECT_EQ(ParseCatalog(CatalogToJson(c)), c);
}

}  // namespace
}  // namespace mlplan
