#include "mlplan/clp.h"

#include <omp.h>

#include <algorithm>

#include "mlplan/impairment.h"
#include "mlplan/paths.h"

namespace mlplan {

namespace {

struct NodePair {
  int a;
  int b;
};

std::vector<NodePair> AllPairs(const FiberGraph& graph) {
  std::vector<NodePair> pairs;
  const int n = static_cast<int>(graph.nodes().size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  }
  return pairs;
}

class PairBuilder {
 public:
  PairBuilder(const FiberGraph& graph, const search::SearchGraph& sg, const Catalog& catalog)
      : graph_(graph), sg_(sg), catalog_(catalog) {}

  std::vector<CandidateLightpath> Build(NodePair pair) const {
    const PlannerParams& params = catalog_.planner_params;
    std::vector<CandidateLightpath> out;
    auto add = [&](const search::Path& path, RouteKind kind) -> std::size_t {
      FiberPath fp = ToFiberPath(graph_, path);
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].route == fp.links) {
          if (std::find(out[i].kinds.begin(), out[i].kinds.end(), kind) == out[i].kinds.end()) {
            out[i].kinds.push_back(std::move(kind));
          }
          return i;
        }
      }
      CandidateLightpath c;
      c.a = graph_.node(pair.a).id;
      c.b = graph_.node(pair.b).id;
      c.id = c.a + "~" + c.b + "#" + std::to_string(out.size() + 1);
      c.route = fp.links;
      c.nodes = fp.nodes;
      for (const std::string& l : c.route) c.length_km += graph_.LinkById(l).length_km;
      c.kinds.push_back(std::move(kind));
      c.feasible_modes = FilterModes(fp, graph_, catalog_);
      out.push_back(std::move(c));
      return out.size() - 1;
    };

    const auto kth = search::KShortestSimplePaths(sg_, pair.a, pair.b, params.k_paths);
    for (std::size_t i = 0; i < kth.size(); ++i) {
      add(kth[i], RouteKind::KthShortest(static_cast<int>(i) + 1));
    }

    auto disjoint = search::ShortestDisjointPair(sg_, pair.a, pair.b,
                                                 params.disjointness == Disjointness::kNode);
    if (disjoint) {
      const std::size_t p = add(disjoint->first, RouteKind::DisjointMember());
      const std::size_t q = add(disjoint->second, RouteKind::DisjointMember());
      out[p].partner_id = out[q].id;
      out[q].partner_id = out[p].id;
    }

    for (const auto& inc : sg_.Adjacent(pair.a)) {
      if (inc.other != pair.b) continue;
      search::Path direct;
      direct.nodes = {pair.a, pair.b};
      direct.edges = {inc.edge};
      direct.weight = sg_.edge(inc.edge).weight;
      add(direct, RouteKind::DirectLink());
    }

    if (params.enable_restoration_precompute) {
      std::vector<char> banned(sg_.num_edges(), 0);
      for (const search::Path& primary : kth) {
        for (int e : primary.edges) {
          banned[e] = 1;
          auto restore = search::KShortestSimplePaths(sg_, pair.a, pair.b, 1, banned);
          banned[e] = 0;
          if (!restore.empty()) add(restore.front(), RouteKind::Restoration(graph_.link(e).id));
        }
      }
    }
    return out;
  }

 private:
  const FiberGraph& graph_;
  const search::SearchGraph& sg_;
  const Catalog& catalog_;
};

ClpGraph Assemble(const FiberGraph& graph,
                  std::vector<std::vector<CandidateLightpath>> per_pair) {
  std::vector<std::string> nodes;
  for (const NodeSite& n : graph.nodes()) nodes.push_back(n.id);
  std::vector<CandidateLightpath> edges;
  for (auto& list : per_pair) {
    for (auto& c : list) edges.push_back(std::move(c));
  }
  return ClpGraph(std::move(nodes), std::move(edges), {});
}

std::vector<std::string> MissingPairDiagnostics(const FiberGraph& graph, const ClpGraph& clp) {
  const std::size_t n = graph.nodes().size();
  std::vector<std::vector<char>> covered(n, std::vector<char>(n, 0));
  for (const CandidateLightpath& c : clp.edges()) {
    covered[*graph.NodeIndex(c.a)][*graph.NodeIndex(c.b)] = 1;
  }
  std::vector<std::string> out;
  for (const NodePair& p : AllPairs(graph)) {
    if (!covered[p.a][p.b]) {
      out.push_back("pair " + graph.node(p.a).id + "–" + graph.node(p.b).id +
                    ": no feasible candidate lightpath");
    }
  }
  return out;
}

ClpGraph WithDiagnostics(const FiberGraph& graph, ClpGraph clp) {
  auto diags = MissingPairDiagnostics(graph, clp);
  return ClpGraph(clp.nodes(), clp.edges(), std::move(diags));
}

}  // namespace

ClpGraph::ClpGraph(std::vector<std::string> nodes, std::vector<CandidateLightpath> edges,
                   std::vector<std::string> diagnostics)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), diagnostics_(std::move(diagnostics)) {
  for (std::size_t i = 0; i < edges_.size(); ++i) index_.emplace(edges_[i].id, i);
}

std::optional<std::size_t> ClpGraph::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const CandidateLightpath& ClpGraph::Get(std::string_view id) const {
  auto i = Find(id);
  if (!i) throw Error("unknown candidate lightpath " + std::string(id));
  return edges_[*i];
}

ClpGraph EnumerateCandidates(const FiberGraph& graph, const Catalog& catalog) {
  const auto sg = BuildFiberSearchGraph(graph, catalog.planner_params.admin_weight);
  const PairBuilder builder(graph, sg, catalog);
  const std::vector<NodePair> pairs = AllPairs(graph);
  std::vector<std::vector<CandidateLightpath>> per_pair(pairs.size());
  const long count = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    per_pair[i] = builder.Build(pairs[i]);
  }
  return Assemble(graph, std::move(per_pair));
}

ClpGraph EnumerateCandidatesSerial(const FiberGraph& graph, const Catalog& catalog) {
  const auto sg = BuildFiberSearchGraph(graph, catalog.planner_params.admin_weight);
  const PairBuilder builder(graph, sg, catalog);
  const std::vector<NodePair> pairs = AllPairs(graph);
  std::vector<std::vector<CandidateLightpath>> per_pair;
  for (const NodePair& p : pairs) per_pair.push_back(builder.Build(p));
  return Assemble(graph, std::move(per_pair));
}

ClpGraph RemoveInfeasible(const ClpGraph& clp) {
  std::vector<CandidateLightpath> kept;
  for (const CandidateLightpath& c : clp.edges()) {
    if (!c.feasible_modes.empty()) kept.push_back(c);
  }
  auto alive = [&](const std::string& id) {
    auto i = clp.Find(id);
    return i && !clp.edges()[*i].feasible_modes.empty();
  };
  for (CandidateLightpath& c : kept) {
    if (c.partner_id && !alive(*c.partner_id)) c.partner_id.reset();
  }
  return ClpGraph(clp.nodes(), std::move(kept), clp.diagnostics());
}

ClpGraph BuildClpGraph(const FiberGraph& graph, const Catalog& catalog) {
  return WithDiagnostics(graph, RemoveInfeasible(EnumerateCandidates(graph, catalog)));
}

ClpGraph BuildClpGraphSerial(const FiberGraph& graph, const Catalog& catalog) {
  return WithDiagnostics(graph, RemoveInfeasible(EnumerateCandidatesSerial(graph, catalog)));
}

const TransponderMode& BestMode(const CandidateLightpath& clp, const Catalog& catalog) {
  const TransponderMode* best = nullptr;
  for (const ModeOption& opt : clp.feasible_modes) {
    const TransponderMode& m = catalog.Mode(opt.mode_id);
    if (best == nullptr || m.line_rate_gbps > best->line_rate_gbps ||
        (m.line_rate_gbps == best->line_rate_gbps &&
         (m.cost_units < best->cost_units ||
          (m.cost_units == best->cost_units && m.id < best->id)))) {
      best = &m;
    }
  }
  if (best == nullptr) throw Error("candidate " + clp.id + " has no feasible mode");
  return *best;
}

}  // namespace mlplan
