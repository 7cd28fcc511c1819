#include "mlplan/bom.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace mlplan {

namespace {

BomItem Item(std::string kind, double quantity, const CostEntry& unit) {
  return {std::move(kind), quantity, unit.cost_units, unit.power_w};
}

}  // namespace

void RecomputeTotals(BillOfMaterial& bom) {
  bom.total_cost = 0;
  bom.total_power = 0;
  for (const BomItem& item : bom.items) {
    bom.total_cost += item.total_cost();
    bom.total_power += item.total_power();
  }
}

BillOfMaterial FitEquipment(const std::vector<Lightpath>& lightpaths, const SpectrumState& spectrum,
                            const FiberGraph& topology, const Catalog& catalog) {
  BillOfMaterial bom;

  std::map<std::string, int> per_mode;
  std::map<std::string, int> per_node_transponders;
  int protection_modules = 0;
  for (const Lightpath& lp : lightpaths) {
    per_mode[lp.mode_id] += 2;
    per_node_transponders[lp.a] += 1;
    per_node_transponders[lp.b] += 1;
    if (lp.protected_1p1()) ++protection_modules;
  }
  for (const TransponderMode& m : catalog.transponder_modes) {
    auto it = per_mode.find(m.id);
    bom.items.push_back(Item("transponder:" + m.id, it == per_mode.end() ? 0 : it->second,
                             {m.cost_units, m.power_w}));
  }
  bom.items.push_back(Item(std::string(kCostProtectionModule), protection_modules,
                           catalog.Cost(kCostProtectionModule)));

  std::vector<int> degrees(topology.nodes().size(), 0);
  int inline_amps = 0;
  int terminal_amps = 0;
  double fiber_km = 0;
  for (const FiberLink& link : topology.links()) {
    for (int inst = 0; inst < spectrum.InstanceCount(link.id); ++inst) {
      if (!spectrum.InstanceUsed(link.id, inst)) continue;
      degrees[*topology.NodeIndex(link.a)] += 1;
      degrees[*topology.NodeIndex(link.b)] += 1;
      inline_amps += std::max(0, static_cast<int>(link.spans.size()) - 1);
      terminal_amps += 2;
      fiber_km += link.length_km;
    }
  }
  for (RoadmClass cls : {RoadmClass::kFixed, RoadmClass::kDirectionless,
                         RoadmClass::kColorlessDirectionless}) {
    int count = 0;
    for (std::size_t n = 0; n < degrees.size(); ++n) {
      if (topology.node(n).roadm_class == cls) count += degrees[n];
    }
    const std::string key = RoadmDegreeCostKey(cls);
    bom.items.push_back(Item(key, count, catalog.Cost(key)));
  }
  const CostEntry amp = catalog.Cost(kCostAmplifier);
  bom.items.push_back(Item("amplifier_inline", inline_amps, amp));
  bom.items.push_back(Item("amplifier_terminal", terminal_amps, amp));
  bom.items.push_back(Item(std::string(kCostFiberKm), fiber_km, catalog.Cost(kCostFiberKm)));

  int shelves = 0;
  for (const auto& [node, count] : per_node_transponders) {
    shelves += (count + catalog.slots_per_shelf - 1) / catalog.slots_per_shelf;
  }
  bom.items.push_back(Item(std::string(kCostShelf), shelves, catalog.Cost(kCostShelf)));

  RecomputeTotals(bom);
  return bom;
}

PlanMetrics Summarize(const Plan& plan, const SpectrumState& spectrum,
                      const FiberGraph& topology, int restoration_gap_count) {
  PlanMetrics m;
  m.lightpath_count = static_cast<int>(plan.lightpaths.size());
  m.transponder_count = 2 * m.lightpath_count;
  for (const Lightpath& lp : plan.lightpaths) {
    if (lp.protected_1p1()) ++m.protected_lightpath_count;
  }
  m.served_count = static_cast<int>(plan.demand_routes.size());
  m.unserved_count = static_cast<int>(plan.unserved.size());
  m.virtual_link_count = static_cast<int>(plan.virtual_topology.size());
  for (const VirtualLink& vl : plan.virtual_topology) {
    if (vl.fiber_hops > 1) ++m.multi_hop_virtual_link_count;
    m.total_allocated_gbps += vl.allocated_gbps;
  }

  const int units = spectrum.units();
  double occupancy_sum = 0;
  double frag_sum = 0;
  int frag_count = 0;
  for (const FiberLink& link : topology.links()) {
    const int instances = spectrum.InstanceCount(link.id);
    int used = 0;
    for (int inst = 0; inst < instances; ++inst) {
      used += spectrum.UsedUnits(link.id, inst);
      if (spectrum.grid().kind == GridKind::kFlex) {
        frag_sum += spectrum.Fragmentation(link.id, inst);
        ++frag_count;
      }
    }
    m.overbuilt_fiber_count += std::max(0, instances - spectrum.InstalledFiberCount(link.id));
    const double occ = static_cast<double>(used) / (static_cast<double>(units) * instances);
    occupancy_sum += occ;
    m.max_link_occupancy = std::max(m.max_link_occupancy, occ);
  }
  if (!topology.links().empty()) m.avg_link_occupancy = occupancy_sum / topology.links().size();
  m.fragmentation_applicable = spectrum.grid().kind == GridKind::kFlex;
  if (frag_count > 0) m.avg_fragmentation = frag_sum / frag_count;
  m.restoration_gap_count = restoration_gap_count;
  m.cost_units = plan.bom.total_cost;
  m.power_w = plan.bom.total_power;
  return m;
}

std::string BomCsv(const BillOfMaterial& bom) {
  std::ostringstream out;
  out.precision(12);
  out << "kind,quantity,unit_cost,total_cost,unit_power,total_power\n";
  for (const BomItem& i : bom.items) {
    out << i.kind << ',' << i.quantity << ',' << i.unit_cost << ',' << i.total_cost() << ','
        << i.unit_power << ',' << i.total_power() << '\n';
  }
  out << "total,,," << bom.total_cost << ",," << bom.total_power << '\n';
  return out.str();
}

}  // namespace mlplan
