#include "mlplan/allocate.h"

#include <algorithm>
#include <limits>
#include <numeric>

namespace mlplan {

namespace {

constexpr double kGbpsTol = 1e-9;

search::SearchGraph BuildRoutingGraph(const FiberGraph& topology,
                                      const std::vector<VirtualLink>& links) {
  // Hop count dominates; fiber length only breaks ties because the scaled
  // length of any simple path stays below one hop.
  double total_length = 0;
  for (const VirtualLink& vl : links) total_length += vl.length_km;
  search::SearchGraph g(topology.NodeRanks());
  for (const VirtualLink& vl : links) {
    g.AddEdge(static_cast<int>(*topology.NodeIndex(vl.a)), static_cast<int>(*topology.NodeIndex(vl.b)),
              1.0 + vl.length_km / (1.0 + total_length));
  }
  return g;
}

}  // namespace

std::string_view ToString(DemandOrder o) {
  switch (o) {
    case DemandOrder::kDescending: return "desc";
    case DemandOrder::kAscending: return "asc";
    case DemandOrder::kInput: return "input";
  }
  return "desc";
}

std::optional<DemandOrder> ParseDemandOrder(std::string_view s) {
  if (s == "desc") return DemandOrder::kDescending;
  if (s == "asc") return DemandOrder::kAscending;
  if (s == "input") return DemandOrder::kInput;
  return std::nullopt;
}

std::vector<Demand> OrderDemands(const std::vector<Demand>& demands, DemandOrder order) {
  std::vector<Demand> out = demands;
  if (order == DemandOrder::kInput) return out;
  std::stable_sort(out.begin(), out.end(), [order](const Demand& x, const Demand& y) {
    const double gx = x.EffectiveGbps();
    const double gy = y.EffectiveGbps();
    if (gx != gy) return order == DemandOrder::kDescending ? gx > gy : gx < gy;
    return x.id < y.id;
  });
  return out;
}

struct Allocator::Snapshot {
  std::vector<VirtualLink> links;
  std::vector<Lightpath> lightpaths;
  SpectrumState spectrum;
  int next_lightpath;
};

Allocator::Allocator(const FiberGraph& topology, const ClpGraph& clp,
                     std::vector<VirtualLink> links, const Catalog& catalog,
                     SpectrumState spectrum, SpectrumPolicy policy)
    : topology_(topology),
      clp_(clp),
      catalog_(catalog),
      policy_(policy),
      links_(std::move(links)),
      spectrum_(std::move(spectrum)),
      routing_graph_(BuildRoutingGraph(topology, links_)) {
  RebuildIndex();
}

void Allocator::RebuildIndex() {
  link_index_.clear();
  lightpath_index_.clear();
  for (std::size_t i = 0; i < links_.size(); ++i) link_index_.emplace(links_[i].id, i);
  for (std::size_t i = 0; i < lightpaths_.size(); ++i) {
    lightpath_index_.emplace(lightpaths_[i].id, i);
  }
}

void Allocator::Restore(std::vector<VirtualLink> links, std::vector<Lightpath> lightpaths,
                        SpectrumState spectrum, int next_lightpath) {
  links_ = std::move(links);
  lightpaths_ = std::move(lightpaths);
  spectrum_ = std::move(spectrum);
  next_lightpath_ = next_lightpath;
  routing_graph_ = BuildRoutingGraph(topology_, links_);
  RebuildIndex();
}

const Lightpath* Allocator::FindLightpath(std::string_view id) const {
  auto it = lightpath_index_.find(std::string(id));
  return it == lightpath_index_.end() ? nullptr : &lightpaths_[it->second];
}

const VirtualLink* Allocator::FindVirtualLink(std::string_view id) const {
  auto it = link_index_.find(std::string(id));
  return it == link_index_.end() ? nullptr : &links_[it->second];
}

bool Allocator::CanProtect(const VirtualLink& link) const {
  const CandidateLightpath& c = clp_.Get(link.clp_id);
  return c.partner_id && clp_.Find(*c.partner_id).has_value();
}

bool Allocator::Usable(std::size_t vl, bool need_protection, double min_rate) const {
  if (need_protection && !CanProtect(links_[vl])) return false;
  return links_[vl].line_rate_gbps + kGbpsTol >= min_rate;
}

std::vector<std::size_t> Allocator::ShortestRoute(const Demand& demand, bool need_protection,
                                                  double min_rate) const {
  std::vector<char> banned(links_.size(), 0);
  for (std::size_t i = 0; i < links_.size(); ++i) banned[i] = Usable(i, need_protection, min_rate) ? 0 : 1;
  auto path = search::LexShortestPath(routing_graph_, static_cast<int>(*topology_.NodeIndex(demand.src)),
                                      static_cast<int>(*topology_.NodeIndex(demand.dst)), {}, banned);
  if (!path) return {};
  return {path->edges.begin(), path->edges.end()};
}

std::vector<std::size_t> Allocator::ExplicitRoute(const Demand& demand, bool need_protection,
                                                  double min_rate) const {
  const std::vector<std::string>& want = *demand.explicit_route;
  const std::size_t m = want.size();
  // best[i]: fewest virtual links covering want[0..i], ties by link index
  // sequence.
  std::vector<std::optional<std::vector<std::size_t>>> best(m);
  best[0] = std::vector<std::size_t>{};
  auto better = [](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  };
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (!best[i]) continue;
    for (std::size_t v = 0; v < links_.size(); ++v) {
      if (!Usable(v, need_protection, min_rate)) continue;
      const std::vector<std::string>& nodes = clp_.Get(links_[v].clp_id).nodes;
      for (int dir = 0; dir < 2; ++dir) {
        const std::size_t len = nodes.size();
        if (i + len > m) continue;
        bool match = true;
        for (std::size_t k = 0; k < len && match; ++k) {
          const std::string& n = dir == 0 ? nodes[k] : nodes[len - 1 - k];
          match = n == want[i + k];
        }
        if (!match) continue;
        std::vector<std::size_t> cand = *best[i];
        cand.push_back(v);
        auto& slot = best[i + len - 1];
        if (!slot || better(cand, *slot)) slot = std::move(cand);
      }
    }
  }
  return best[m - 1].value_or(std::vector<std::size_t>{});
}

std::vector<std::size_t> Allocator::Route(const Demand& demand, std::string* reason) const {
  const bool prot = demand.NeedsProtection();
  const double rate = demand.EffectiveGbps();
  if (demand.explicit_route) {
    auto r = ExplicitRoute(demand, prot, rate);
    if (r.empty()) *reason = kExplicitRouteUnmappable;
    return r;
  }
  auto r = ShortestRoute(demand, prot, rate);
  if (!r.empty()) return r;
  if (ShortestRoute(demand, false, 0).empty()) {
    *reason = kNoVirtualPath;
  } else if (prot && ShortestRoute(demand, true, 0).empty()) {
    *reason = kNoProtectedPath;
  } else {
    *reason = kBitrateExceedsLightpath;
  }
  return {};
}

std::optional<std::string> Allocator::InstallLightpath(std::string_view virtual_link_id,
                                                       bool protected_1p1) {
  auto it = link_index_.find(std::string(virtual_link_id));
  if (it == link_index_.end()) throw Error("unknown virtual link " + std::string(virtual_link_id));
  VirtualLink& vl = links_[it->second];
  const CandidateLightpath& clp = clp_.Get(vl.clp_id);
  const TransponderMode& mode = catalog_.Mode(vl.selected_mode);
  const std::optional<int> width = spectrum_.grid().WidthFor(mode);
  if (!width) return std::nullopt;

  auto working = spectrum_.AssignWithOverbuild(clp.route, *width, policy_);
  if (!working) return std::nullopt;
  std::optional<SpectrumAssignment> protection;
  if (protected_1p1) {
    if (!clp.partner_id) {
      spectrum_.Release(*working);
      return std::nullopt;
    }
    protection = spectrum_.AssignWithOverbuild(clp_.Get(*clp.partner_id).route, *width, policy_);
    if (!protection) {
      spectrum_.Release(*working);
      return std::nullopt;
    }
  }

  Lightpath lp;
  lp.id = "lp-" + std::to_string(next_lightpath_++);
  lp.virtual_link_id = vl.id;
  lp.a = vl.a;
  lp.b = vl.b;
  lp.mode_id = mode.id;
  lp.line_rate_gbps = mode.line_rate_gbps;
  lp.spectrum = std::move(*working);
  lp.protection_spectrum = std::move(protection);
  vl.lightpaths.push_back(lp.id);
  lightpath_index_.emplace(lp.id, lightpaths_.size());
  lightpaths_.push_back(std::move(lp));
  return lightpaths_.back().id;
}

PlaceResult Allocator::Place(const Demand& demand) {
  PlaceResult result;
  const std::vector<std::size_t> route = Route(demand, &result.reason);
  if (route.empty()) return result;

  Snapshot saved{links_, lightpaths_, spectrum_, next_lightpath_};
  const double gbps = demand.EffectiveGbps();
  const bool prot = demand.NeedsProtection();
  Placement placement{demand.id, gbps, prot, {}};
  for (std::size_t v : route) {
    Hop hop{links_[v].id, {}, false};
    for (const std::string& lp_id : links_[v].lightpaths) {
      Lightpath& lp = lightpaths_[lightpath_index_.at(lp_id)];
      if (lp.protected_1p1() == prot && lp.allocated_gbps + gbps <= lp.line_rate_gbps + kGbpsTol) {
        hop.lightpath_id = lp_id;
        break;
      }
    }
    if (hop.lightpath_id.empty()) {
      auto installed = InstallLightpath(links_[v].id, prot);
      if (!installed) {
        Restore(std::move(saved.links), std::move(saved.lightpaths), std::move(saved.spectrum),
                saved.next_lightpath);
        result.reason = kSpectrumExhausted;
        return result;
      }
      hop.lightpath_id = *installed;
      hop.new_lightpath = true;
    }
    lightpaths_[lightpath_index_.at(hop.lightpath_id)].allocated_gbps += gbps;
    links_[v].allocated_gbps += gbps;
    placement.hops.push_back(std::move(hop));
  }
  result.placement = std::move(placement);
  return result;
}

void Allocator::Unplace(const Placement& placement) {
  std::vector<std::string> emptied;
  for (const Hop& hop : placement.hops) {
    auto lit = lightpath_index_.find(hop.lightpath_id);
    auto vit = link_index_.find(hop.virtual_link_id);
    if (lit == lightpath_index_.end() || vit == link_index_.end()) continue;
    Lightpath& lp = lightpaths_[lit->second];
    lp.allocated_gbps = std::max(0.0, lp.allocated_gbps - placement.gbps);
    VirtualLink& vl = links_[vit->second];
    vl.allocated_gbps = std::max(0.0, vl.allocated_gbps - placement.gbps);
    if (lp.allocated_gbps <= kGbpsTol) {
      lp.allocated_gbps = 0;
      emptied.push_back(lp.id);
    }
  }
  if (emptied.empty()) return;
  for (const std::string& id : emptied) {
    Lightpath& lp = lightpaths_[lightpath_index_.at(id)];
    spectrum_.Release(lp.spectrum);
    if (lp.protection_spectrum) spectrum_.Release(*lp.protection_spectrum);
    VirtualLink& vl = links_[link_index_.at(lp.virtual_link_id)];
    std::erase(vl.lightpaths, id);
  }
  std::erase_if(lightpaths_, [&](const Lightpath& lp) {
    return std::find(emptied.begin(), emptied.end(), lp.id) != emptied.end();
  });
  RebuildIndex();
}

AllocationResult RouteDemands(const FiberGraph& topology, const ClpGraph& clp,
                              std::vector<VirtualLink> virtual_topology,
                              const std::vector<Demand>& demands, const Catalog& catalog,
                              SpectrumState spectrum, const AllocationOptions& options) {
  Allocator alloc(topology, clp, std::move(virtual_topology), catalog, std::move(spectrum),
                  options.policy);
  AllocationResult out{{}, {}, alloc.spectrum(), {}, {}, {}, 0};
  for (const Demand& d : OrderDemands(demands, options.order)) {
    PlaceResult r = alloc.Place(d);
    if (!r.placement) {
      out.unserved.push_back({d.id, r.reason});
      continue;
    }
    std::vector<std::string> route;
    for (const Hop& h : r.placement->hops) route.push_back(h.virtual_link_id);
    out.demand_routes[d.id] = std::move(route);
    out.placements.push_back(std::move(*r.placement));
  }
  out.virtual_links = alloc.virtual_links();
  out.lightpaths = alloc.lightpaths();
  out.spectrum = alloc.spectrum();
  out.restoration_gap_count =
      CountRestorationGaps(clp, demands, out.demand_routes, out.virtual_links);
  return out;
}

int CountRestorationGaps(const ClpGraph& clp, const std::vector<Demand>& demands,
                         const std::map<std::string, std::vector<std::string>>& demand_routes,
                         const std::vector<VirtualLink>& virtual_links) {
  std::unordered_map<std::string, const VirtualLink*> by_id;
  for (const VirtualLink& vl : virtual_links) by_id.emplace(vl.id, &vl);
  int gaps = 0;
  for (const Demand& d : demands) {
    if (!d.NeedsRestoration()) continue;
    auto it = demand_routes.find(d.id);
    if (it == demand_routes.end()) continue;
    for (const std::string& vl_id : it->second) {
      const VirtualLink& vl = *by_id.at(vl_id);
      const CandidateLightpath& working = clp.Get(vl.clp_id);
      for (const std::string& failed : working.route) {
        bool covered = false;
        for (const CandidateLightpath& c : clp.edges()) {
          if (c.a != vl.a || c.b != vl.b) continue;
          if (std::find(c.route.begin(), c.route.end(), failed) == c.route.end()) {
            covered = true;
            break;
          }
        }
        if (!covered) ++gaps;
      }
    }
  }
  return gaps;
}

}  // namespace mlplan
