#include "mlplan/grooming.h"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace mlplan {

namespace {

struct Contribution {
  std::vector<std::pair<int, double>> edge_loads;
  bool routed = false;
};

class LoadKernel {
 public:
  LoadKernel(const ClpGraph& clp, int k_grooming, bool load_split, const std::vector<char>& alive)
      : clp_(clp), graph_(BuildClpSearchGraph(clp)), k_(k_grooming), split_(load_split) {
    for (std::size_t i = 0; i < clp.nodes().size(); ++i) {
      node_index_.emplace(clp.nodes()[i], static_cast<int>(i));
    }
    if (!alive.empty()) {
      banned_.resize(alive.size());
      for (std::size_t i = 0; i < alive.size(); ++i) banned_[i] = alive[i] ? 0 : 1;
    }
  }

  Contribution ForDemand(const Demand& d) const {
    Contribution out;
    auto s = node_index_.find(d.src);
    auto t = node_index_.find(d.dst);
    if (s == node_index_.end() || t == node_index_.end() || s->second == t->second) return out;
    const auto paths = search::KShortestSimplePaths(graph_, s->second, t->second, k_, banned_);
    if (paths.empty()) return out;
    out.routed = true;
    const double share = split_ ? d.EffectiveGbps() / static_cast<double>(paths.size())
                                : d.EffectiveGbps();
    for (const search::Path& p : paths) {
      for (int e : p.edges) out.edge_loads.push_back({e, share});
    }
    return out;
  }

  LoadVector Reduce(const std::vector<Demand>& demands,
                    const std::vector<Contribution>& parts) const {
    LoadVector lv;
    lv.loads.assign(clp_.edges().size(), 0.0);
    lv.protected_touch.assign(clp_.edges().size(), 0);
    for (std::size_t i = 0; i < demands.size(); ++i) {
      if (!parts[i].routed) {
        lv.unrouted_demands.push_back(demands[i].id);
        continue;
      }
      for (const auto& [e, load] : parts[i].edge_loads) {
        lv.loads[e] += load;
        if (demands[i].NeedsProtection()) lv.protected_touch[e] = 1;
      }
    }
    return lv;
  }

 private:
  const ClpGraph& clp_;
  search::SearchGraph graph_;
  std::unordered_map<std::string, int> node_index_;
  std::vector<char> banned_;
  int k_;
  bool split_;
};

}  // namespace

search::SearchGraph BuildClpSearchGraph(const ClpGraph& clp) {
  const auto& nodes = clp.nodes();
  std::vector<int> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return nodes[x] < nodes[y]; });
  std::vector<int> ranks(nodes.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = static_cast<int>(r);
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], static_cast<int>(i));

  search::SearchGraph g(std::move(ranks));
  for (const CandidateLightpath& c : clp.edges()) g.AddEdge(index.at(c.a), index.at(c.b), 1.0);
  return g;
}

LoadVector ComputeLoads(const ClpGraph& clp, const std::vector<Demand>& demands, int k_grooming,
                        bool load_split, const std::vector<char>& alive) {
  const LoadKernel kernel(clp, k_grooming, load_split, alive);
  std::vector<Contribution> parts(demands.size());
  const long n = static_cast<long>(demands.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) parts[i] = kernel.ForDemand(demands[i]);
  return kernel.Reduce(demands, parts);
}

LoadVector ComputeLoadsSerial(const ClpGraph& clp, const std::vector<Demand>& demands,
                              int k_grooming, bool load_split, const std::vector<char>& alive) {
  const LoadKernel kernel(clp, k_grooming, load_split, alive);
  std::vector<Contribution> parts;
  for (const Demand& d : demands) parts.push_back(kernel.ForDemand(d));
  return kernel.Reduce(demands, parts);
}

GroomingLoadTable PotentialLoads(const ClpGraph& clp, const std::vector<Demand>& demands,
                                 int k_grooming, bool load_split) {
  const LoadVector lv = ComputeLoads(clp, demands, k_grooming, load_split);
  GroomingLoadTable table;
  for (std::size_t i = 0; i < clp.edges().size(); ++i) table[clp.edges()[i].id] = lv.loads[i];
  return table;
}

VirtualLink MakeVirtualLink(const CandidateLightpath& clp, const Catalog& catalog) {
  const TransponderMode& mode = BestMode(clp, catalog);
  VirtualLink vl;
  vl.id = "vl:" + clp.id;
  vl.clp_id = clp.id;
  vl.a = clp.a;
  vl.b = clp.b;
  vl.selected_mode = mode.id;
  vl.line_rate_gbps = mode.line_rate_gbps;
  vl.length_km = clp.length_km;
  vl.fiber_hops = static_cast<int>(clp.route.size());
  return vl;
}

VirtualTopologyDesign DesignVirtualTopology(const ClpGraph& clp, const std::vector<Demand>& demands,
                                            const Catalog& catalog,
                                            const GroomingOptions& options) {
  const auto& edges = clp.edges();
  const double threshold = catalog.planner_params.grooming_threshold;
  std::vector<double> capacity(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    capacity[i] = BestMode(edges[i], catalog).line_rate_gbps;
  }

  VirtualTopologyDesign design;
  std::vector<char> alive(edges.size(), 1);
  while (true) {
    ++design.rounds;
    const LoadVector lv = ComputeLoads(clp, demands, catalog.planner_params.k_grooming,
                                       options.load_split, alive);
    auto clears = [&](std::size_t e) {
      if (edges[e].IsOneHop()) return true;
      const double need = threshold * capacity[e];
      return lv.loads[e] >= need - 1e-9 * std::max(1.0, need);
    };

    std::vector<std::size_t> doomed;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!alive[e]) continue;
      GroomingTraceRow row{design.rounds, edges[e].id, lv.loads[e], capacity[e], "keep"};
      if (edges[e].IsOneHop()) {
        row.decision = "exempt";
      } else if (!clears(e)) {
        // Protection pairs are kept or dropped together when a protected
        // demand grooms over either member.
        std::optional<std::size_t> partner;
        if (edges[e].partner_id) partner = clp.Find(*edges[e].partner_id);
        if (partner && alive[*partner] && (lv.protected_touch[e] || lv.protected_touch[*partner]) &&
            clears(*partner)) {
          row.decision = "keep-pair";
        } else {
          row.decision = "delete";
          doomed.push_back(e);
        }
      }
      design.trace.push_back(std::move(row));
    }
    for (std::size_t e : doomed) alive[e] = 0;
    if (doomed.empty() || options.single_pass) break;
  }

  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (alive[e]) design.links.push_back(MakeVirtualLink(edges[e], catalog));
  }
  return design;
}

std::string GroomingTraceCsv(const std::vector<GroomingTraceRow>& rows) {
  std::ostringstream out;
  out << "round,clp_id,load_gbps,capacity_gbps,decision\n";
  for (const auto& r : rows) {
    out << r.round << ',' << r.clp_id << ',' << r.load_gbps << ',' << r.capacity_gbps << ','
        << r.decision << '\n';
  }
  return out.str();
}

}  // namespace mlplan
