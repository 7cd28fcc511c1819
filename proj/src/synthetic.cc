#include "mlplan/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "mlplan/ingest.h"

namespace mlplan {

namespace {

FiberLink MakeLink(int index, const std::string& a, const std::string& b, double km) {
  FiberLink l;
  l.id = "L" + std::to_string(index);
  l.a = a;
  l.b = b;
  l.spans = DefaultSpans(km);
  l.length_km = 0;
  for (const Span& s : l.spans) l.length_km += s.length_km;
  return l;
}

std::vector<NodeSite> MakeNodes(int n) {
  std::vector<NodeSite> nodes;
  for (int i = 0; i < n; ++i) {
    nodes.push_back({"N" + std::to_string(i), "N" + std::to_string(i), RoadmClass::kFixed});
  }
  return nodes;
}

Demand Ethernet(int index, const std::string& src, const std::string& dst, double gbps) {
  Demand d;
  d.id = "D" + std::to_string(index);
  d.src = src;
  d.dst = dst;
  d.bitrate_gbps = gbps;
  return d;
}

}  // namespace

FiberGraph RandomTopology(const RandomTopologyOptions& options, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = std::max(2, options.nodes);
  std::uniform_real_distribution<double> length(options.min_length_km, options.max_length_km);
  std::vector<NodeSite> nodes = MakeNodes(n);
  std::vector<FiberLink> links;
  std::set<std::pair<int, int>> used;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 1; i < n; ++i) {
    const int parent = order[std::uniform_int_distribution<int>(0, i - 1)(rng)];
    const int child = order[i];
    used.insert({std::min(parent, child), std::max(parent, child)});
    links.push_back(MakeLink(static_cast<int>(links.size()), nodes[parent].id, nodes[child].id,
                             std::round(length(rng))));
  }
  std::bernoulli_distribution extra(std::clamp(options.extra_link_fraction, 0.0, 1.0));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (used.count({a, b}) || !extra(rng)) continue;
      links.push_back(MakeLink(static_cast<int>(links.size()), nodes[a].id, nodes[b].id,
                               std::round(length(rng))));
    }
  }
  return FiberGraph(std::move(nodes), std::move(links));
}

FiberGraph RingTopology(int n, double link_km) {
  std::vector<NodeSite> nodes = MakeNodes(n);
  std::vector<FiberLink> links;
  for (int i = 0; i < n; ++i) {
    links.push_back(MakeLink(i, nodes[i].id, nodes[(i + 1) % n].id, link_km));
  }
  return FiberGraph(std::move(nodes), std::move(links));
}

std::vector<Demand> UniformDemands(const FiberGraph& topology, double gbps) {
  std::vector<Demand> out;
  const auto& nodes = topology.nodes();
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      out.push_back(Ethernet(static_cast<int>(out.size()), nodes[a].id, nodes[b].id, gbps));
    }
  }
  return out;
}

std::vector<Demand> RandomDemands(const FiberGraph& topology, int count, double min_gbps,
                                  double max_gbps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = static_cast<int>(topology.nodes().size());
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> rate(min_gbps, max_gbps);
  std::vector<Demand> out;
  for (int i = 0; i < count; ++i) {
    const int a = pick(rng);
    int b = pick(rng);
    while (b == a) b = pick(rng);
    out.push_back(Ethernet(i, topology.node(a).id, topology.node(b).id,
                           std::max(1.0, std::round(rate(rng)))));
  }
  return out;
}

Catalog SimpleCatalog(double reach_km) {
  Catalog c;
  TransponderMode m;
  m.id = "100G";
  m.line_rate_gbps = 100;
  m.modulation = "DP-QPSK";
  m.slot_width_ghz = 37.5;
  m.required_osnr_db = 12;
  m.max_reach_km = reach_km;
  m.roadm_passthrough_penalty_db = 0.1;
  m.cost_units = 10;
  m.power_w = 40;
  c.transponder_modes.push_back(m);
  c.cost_table = {
      {std::string(kCostAmplifier), {1, 20}},
      {std::string(kCostFiberKm), {0.01, 0}},
      {std::string(kCostShelf), {2, 100}},
      {std::string(kCostProtectionModule), {0.5, 5}},
      {RoadmDegreeCostKey(RoadmClass::kFixed), {3, 30}},
      {RoadmDegreeCostKey(RoadmClass::kDirectionless), {4, 35}},
      {RoadmDegreeCostKey(RoadmClass::kColorlessDirectionless), {5, 40}},
  };
  return c;
}

}  // namespace mlplan
