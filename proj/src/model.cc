#include "mlplan/model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace mlplan {

FiberGraph::FiberGraph(std::vector<NodeSite> nodes, std::vector<FiberLink> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    node_index_.emplace(nodes_[i].id, i);
  }
  for (std::size_t i = 0; i < links_.size(); ++i) {
    link_index_.emplace(links_[i].id, i);
  }
  incident_.assign(nodes_.size(), {});
  for (std::size_t i = 0; i < links_.size(); ++i) {
    auto a = NodeIndex(links_[i].a);
    auto b = NodeIndex(links_[i].b);
    if (a) incident_[*a].push_back(i);
    if (b && b != a) incident_[*b].push_back(i);
  }
  std::vector<std::size_t> order(nodes_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [this](std::size_t x, std::size_t y) {
    return nodes_[x].id < nodes_[y].id;
  });
  ranks_.assign(nodes_.size(), 0);
  for (std::size_t r = 0; r < order.size(); ++r) ranks_[order[r]] = static_cast<int>(r);
}

std::optional<std::size_t> FiberGraph::NodeIndex(std::string_view id) const {
  auto it = node_index_.find(std::string(id));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FiberGraph::LinkIndex(std::string_view id) const {
  auto it = link_index_.find(std::string(id));
  if (it == link_index_.end()) return std::nullopt;
  return it->second;
}

const FiberLink& FiberGraph::LinkById(std::string_view id) const {
  auto i = LinkIndex(id);
  if (!i) throw Error("unknown fiber link " + std::string(id));
  return links_[*i];
}

const NodeSite& FiberGraph::NodeById(std::string_view id) const {
  auto i = NodeIndex(id);
  if (!i) throw Error("unknown node " + std::string(id));
  return nodes_[*i];
}

std::vector<Diagnostic> ValidateTopology(const FiberGraph& topology) {
  std::vector<Diagnostic> out;
  std::set<std::string> seen;
  for (const NodeSite& n : topology.nodes()) {
    if (n.id.empty()) out.push_back({"node", "empty id", "node ids must be non-empty"});
    if (!seen.insert(n.id).second) {
      out.push_back({"node " + n.id, "duplicate id", "node id appears more than once"});
    }
  }
  seen.clear();
  for (const FiberLink& l : topology.links()) {
    const std::string entity = "link " + l.id;
    if (!seen.insert(l.id).second) {
      out.push_back({entity, "duplicate id", "link id appears more than once"});
    }
    for (const std::string* end : {&l.a, &l.b}) {
      if (!topology.NodeIndex(*end)) {
        out.push_back({entity, "unknown endpoint", "endpoint " + *end + " is not a node"});
      }
    }
    if (l.a == l.b) out.push_back({entity, "self loop", "both endpoints are " + l.a});
    if (!(l.length_km >= 0)) {
      out.push_back({entity, "negative length", "length_km must be >= 0"});
    }
    if (l.fiber_count < 1) {
      out.push_back({entity, "fiber count", "fiber_count must be >= 1"});
    }
    if (l.spans.empty()) {
      out.push_back({entity, "no spans", "a link needs at least one span"});
      continue;
    }
    double sum = 0;
    for (std::size_t i = 0; i < l.spans.size(); ++i) {
      const Span& s = l.spans[i];
      if (!(s.length_km > 0) || !(s.loss_db > 0)) {
        out.push_back({entity, "span values",
                       "span " + std::to_string(i) + " needs positive length and loss"});
      }
      sum += s.length_km;
    }
    if (std::fabs(sum - l.length_km) > 1e-6) {
      std::ostringstream msg;
      msg << "spans sum to " << sum << " km but length_km is " << l.length_km;
      out.push_back({entity, "span sum mismatch", msg.str()});
    }
  }

  // Connectivity over links whose endpoints resolve.
  const std::size_t n = topology.nodes().size();
  if (n > 1) {
    std::vector<bool> reached(n, false);
    std::vector<std::size_t> stack = {0};
    reached[0] = true;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t li : topology.Incident(u)) {
        auto v = topology.NodeIndex(topology.link(li).Other(topology.node(u).id));
        if (v && !reached[*v]) {
          reached[*v] = true;
          stack.push_back(*v);
        }
      }
    }
    if (std::find(reached.begin(), reached.end(), false) != reached.end()) {
      out.push_back({"topology", "graph not connected",
                     "some sites cannot be reached over fiber"});
    }
  }
  return out;
}

bool IsOduService(ServiceType type) {
  return type == ServiceType::kOdu0 || type == ServiceType::kOdu1 ||
         type == ServiceType::kOdu2;
}

double OduRateGbps(ServiceType type) {
  switch (type) {
    case ServiceType::kOdu0: return 1.25;
    case ServiceType::kOdu1: return 2.5;
    case ServiceType::kOdu2: return 10.0;
    default: return 0.0;
  }
}

double Demand::EffectiveGbps() const {
  if (IsOduService(service_type)) return count.value_or(0) * OduRateGbps(service_type);
  return bitrate_gbps.value_or(0.0);
}

std::optional<int> GridSpec::WidthFor(const TransponderMode& mode) const {
  if (kind == GridKind::kFixed) {
    if (mode.fixed_channel || mode.slot_width_ghz <= channel_spacing_ghz + 1e-9) return 1;
    return std::nullopt;
  }
  if (mode.slot_width_ghz <= 0) return std::nullopt;
  return static_cast<int>(std::lround(std::ceil(mode.slot_width_ghz / slot_granularity_ghz - 1e-9)));
}

const BomItem* BillOfMaterial::Find(std::string_view kind) const {
  for (const BomItem& item : items) {
    if (item.kind == kind) return &item;
  }
  return nullptr;
}

std::string_view ToString(RoadmClass v) {
  switch (v) {
    case RoadmClass::kFixed: return "fixed";
    case RoadmClass::kDirectionless: return "directionless";
    case RoadmClass::kColorlessDirectionless: return "colorless_directionless";
  }
  return "fixed";
}

std::string_view ToString(ServiceType v) {
  switch (v) {
    case ServiceType::kEthernet: return "ethernet";
    case ServiceType::kIpMpls: return "ip_mpls";
    case ServiceType::kOdu0: return "odu0";
    case ServiceType::kOdu1: return "odu1";
    case ServiceType::kOdu2: return "odu2";
  }
  return "ethernet";
}

std::string_view ToString(ProtectionClass v) {
  switch (v) {
    case ProtectionClass::kUnprotected: return "unprotected";
    case ProtectionClass::kOpticalProtection: return "optical_protection";
    case ProtectionClass::kOpticalRestoration: return "optical_restoration";
    case ProtectionClass::kProtectionAndRestoration: return "protection_and_restoration";
  }
  return "unprotected";
}

std::string_view ToString(GridKind v) { return v == GridKind::kFixed ? "fixed" : "flex"; }

std::optional<RoadmClass> ParseRoadmClass(std::string_view s) {
  for (RoadmClass v : {RoadmClass::kFixed, RoadmClass::kDirectionless,
                       RoadmClass::kColorlessDirectionless}) {
    if (ToString(v) == s) return v;
  }
  return std::nullopt;
}

std::optional<ServiceType> ParseServiceType(std::string_view s) {
  for (ServiceType v : {ServiceType::kEthernet, ServiceType::kIpMpls, ServiceType::kOdu0,
                        ServiceType::kOdu1, ServiceType::kOdu2}) {
    if (ToString(v) == s) return v;
  }
  return std::nullopt;
}

std::optional<ProtectionClass> ParseProtectionClass(std::string_view s) {
  for (ProtectionClass v :
       {ProtectionClass::kUnprotected, ProtectionClass::kOpticalProtection,
        ProtectionClass::kOpticalRestoration, ProtectionClass::kProtectionAndRestoration}) {
    if (ToString(v) == s) return v;
  }
  return std::nullopt;
}

std::optional<GridKind> ParseGridKind(std::string_view s) {
  if (s == "fixed") return GridKind::kFixed;
  if (s == "flex") return GridKind::kFlex;
  return std::nullopt;
}

}  // namespace mlplan
