#include "support/fixtures.h"

#include "mlplan/ingest.h"
#include "mlplan/synthetic.h"

namespace mlplan::fixtures {

namespace {

FiberLink Link(const std::string& id, const std::string& a, const std::string& b, double km) {
  return {id, a, b, km, DefaultSpans(km), 1};
}

std::vector<NodeSite> Nodes(std::initializer_list<const char*> ids) {
  std::vector<NodeSite> out;
  for (const char* id : ids) out.push_back({id, id, RoadmClass::kFixed});
  return out;
}

}  // namespace

FiberGraph Triangle(double ac_km) {
  return FiberGraph(Nodes({"A", "B", "C"}),
                    {Link("AB", "A", "B", 400), Link("BC", "B", "C", 400),
                     Link("AC", "A", "C", ac_km)});
}

FiberGraph PathGraph() {
  return FiberGraph(Nodes({"A", "B", "C"}), {Link("AB", "A", "B", 400), Link("BC", "B", "C", 400)});
}

FiberGraph Ring4() {
  return FiberGraph(Nodes({"A", "B", "C", "D"}),
                    {Link("AB", "A", "B", 100), Link("BC", "B", "C", 100),
                     Link("CD", "C", "D", 100), Link("DA", "D", "A", 100)});
}

Catalog TriangleCatalog() {
  Catalog c = SimpleCatalog(2000);
  c.planner_params.k_grooming = 1;
  c.planner_params.grooming_threshold = 0.5;
  return c;
}

Catalog TwoModeCatalog() {
  Catalog c = SimpleCatalog(2000);
  c.transponder_modes[0].id = "100G-QPSK";
  TransponderMode m = c.transponder_modes[0];
  m.id = "200G-16QAM";
  m.line_rate_gbps = 200;
  m.modulation = "DP-16QAM";
  m.max_reach_km = 600;
  m.required_osnr_db = 18;
  m.cost_units = 16;
  c.transponder_modes.push_back(m);
  return c;
}

Demand Eth(const std::string& id, const std::string& src, const std::string& dst, double gbps,
           ProtectionClass protection) {
  Demand d;
  d.id = id;
  d.src = src;
  d.dst = dst;
  d.bitrate_gbps = gbps;
  d.protection = protection;
  return d;
}

std::string FixturePath(const std::string& relative) {
  return std::string(MLPLAN_FIXTURE_DIR) + "/" + relative;
}

}  // namespace mlplan::fixtures
