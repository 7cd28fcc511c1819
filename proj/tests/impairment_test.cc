#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mlplan/impairment.h"
#include "mlplan/paths.h"
#include "support/fixtures.h"
#include "support/oracles.h"

namespace mlplan {
namespace {

FiberGraph SingleLink(std::vector<Span> spans) {
  double len = 0;
  for (const Span& s : spans) len += s.length_km;
  return FiberGraph({{"A", "A", RoadmClass::kFixed}, {"B", "B", RoadmClass::kFixed}},
                    {{"AB", "A", "B", len, std::move(spans), 1}});
}

FiberPath Direct() { return {{"AB"}, {"A", "B"}, 0}; }

TEST(PathMetrics, FiveSixteenDbSpans) {
  const FiberGraph g = SingleLink(std::vector<Span>(5, {80, 16}));
  const PathMetrics m = ComputePathMetrics(Direct(), g, {});
  EXPECT_EQ(m.span_count, 5);
  EXPECT_DOUBLE_EQ(m.total_length_km, 400);
  EXPECT_EQ(m.roadm_passthrough_count, 0);
  EXPECT_NEAR(m.osnr_db, 29.01, 0.01);
  EXPECT_NEAR(m.osnr_db, oracle::ClosedFormOsnr(16, 5), 1e-9);
}

TEST(PathMetrics, SingleSpan) {
  const FiberGraph g = SingleLink({{80, 16}});
  EXPECT_NEAR(ComputePathMetrics(Direct(), g, {}).osnr_db, 36.0, 1e-12);
  EXPECT_DOUBLE_EQ(SpanOsnrDb({80, 16}, {}), 36.0);
}

TEST(PathMetrics, TwoIdenticalSpansLoseThreeDb) {
  const double one = ComputePathMetrics(Direct(), SingleLink({{80, 16}}), {}).osnr_db;
  const double two = ComputePathMetrics(Direct(), SingleLink({{80, 16}, {80, 16}}), {}).osnr_db;
  EXPECT_NEAR(one - two, 3.01, 0.01);
  EXPECT_NEAR(one - two, 10 * std::log10(2.0), 1e-12);
}

TEST(PathMetrics, CatalogOverridesConstants) {
  const FiberGraph g = SingleLink({{80, 16}});
  EXPECT_NEAR(ComputePathMetrics(Direct(), g, {60, 5}).osnr_db, 39.0, 1e-12);
}

TEST(PathMetrics, PassThroughCountsInteriorNodes) {
  const FiberGraph g = fixtures::Triangle();
  const PathMetrics m = ComputePathMetrics({{"AB", "BC"}, {"A", "B", "C"}, 0}, g, {});
  EXPECT_EQ(m.roadm_passthrough_count, 1);
  EXPECT_EQ(m.span_count, 10);
  EXPECT_DOUBLE_EQ(m.total_length_km, 800);
}

TransponderMode Mode(double reach, double req, double penalty) {
  TransponderMode m;
  m.id = "m";
  m.line_rate_gbps = 100;
  m.slot_width_ghz = 37.5;
  m.max_reach_km = reach;
  m.required_osnr_db = req;
  m.roadm_passthrough_penalty_db = penalty;
  return m;
}

TEST(EvaluateMode, FeasibleWithMargins) {
  PathMetrics pm{400, 5, 0, 29.01, 0};
  const auto v = EvaluateMode(pm, Mode(2000, 12, 0.5), {1, 1, 0});
  EXPECT_TRUE(v.feasible);
  EXPECT_EQ(v.binding_constraint, BindingConstraint::kNone);
  EXPECT_DOUBLE_EQ(v.metrics.effective_required_osnr_db, 14);
}

TEST(EvaluateMode, ReachBinds) {
  PathMetrics pm{2500, 30, 0, 10, 0};
  const auto v = EvaluateMode(pm, Mode(2000, 12, 0.5), {});
  EXPECT_FALSE(v.feasible);
  EXPECT_EQ(v.binding_constraint, BindingConstraint::kReach);
}

TEST(EvaluateMode, OsnrBinds) {
  PathMetrics pm{800, 10, 4, 13.0, 0};
  const auto v = EvaluateMode(pm, Mode(2000, 12, 0.5), {0, 0, 0});
  EXPECT_FALSE(v.feasible);
  EXPECT_EQ(v.binding_constraint, BindingConstraint::kOsnr);
}

TEST(EvaluateMode, MarginMonotonicityRandomized) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0, 1);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    PathMetrics pm{u(rng) * 3000, 1 + static_cast<int>(u(rng) * 30),
                   static_cast<int>(u(rng) * 6), 8 + u(rng) * 25, 0};
    const TransponderMode m = Mode(500 + u(rng) * 2500, 8 + u(rng) * 12, u(rng));
    MarginStack base{u(rng) * 3, u(rng) * 3, u(rng) * 3};
    MarginStack more = base;
    more.aging_margin_db += u(rng) * 2;
    more.span_repair_margin_db += u(rng) * 2;
    more.operator_margin_db += u(rng) * 2;
    const bool before = EvaluateMode(pm, m, base).feasible;
    const bool after = EvaluateMode(pm, m, more).feasible;
    if (!before && after) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(FilterModes, ReachSelectsModes) {
  const Catalog c = fixtures::TwoModeCatalog();
  auto names = [&](double km) {
    const FiberGraph g = SingleLink(std::vector<Span>(static_cast<int>(km / 100), {100, 20}));
    std::vector<std::string> out;
    for (const ModeOption& m : FilterModes(Direct(), g, c)) out.push_back(m.mode_id);
    return out;
  };
  EXPECT_EQ(names(400), (std::vector<std::string>{"100G-QPSK", "200G-16QAM"}));
  EXPECT_EQ(names(800), (std::vector<std::string>{"100G-QPSK"}));
  EXPECT_TRUE(names(3000).empty());
}

TEST(FilterModes, PrefixOfFeasibleRouteStaysFeasible) {
  // Appending spans never raises OSNR nor shortens the route.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> loss(10, 28);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Span> spans;
    double prev_osnr = 1e9;
    double prev_len = 0;
    for (int i = 0; i < 12; ++i) {
      spans.push_back({80, loss(rng)});
      const PathMetrics m = ComputePathMetrics(Direct(), SingleLink(spans), {});
      ASSERT_LE(m.osnr_db, prev_osnr + 1e-12);
      ASSERT_GE(m.total_length_km, prev_len);
      prev_osnr = m.osnr_db;
      prev_len = m.total_length_km;
    }
  }
}

}  // namespace
}  // namespace mlplan
