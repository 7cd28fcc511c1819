#include "mlplan/paths.h"

namespace mlplan {

namespace {

std::pair<int, int> Endpoints(const FiberGraph& graph, std::string_view src,
                              std::string_view dst) {
  auto s = graph.NodeIndex(src);
  auto d = graph.NodeIndex(dst);
  if (!s) throw Error("paths: unknown node " + std::string(src));
  if (!d) throw Error("paths: unknown node " + std::string(dst));
  if (*s == *d) throw Error("paths: src and dst must differ");
  return {static_cast<int>(*s), static_cast<int>(*d)};
}

}  // namespace

search::SearchGraph BuildFiberSearchGraph(const FiberGraph& graph, AdminWeight weight) {
  search::SearchGraph g(graph.NodeRanks());
  for (const FiberLink& l : graph.links()) {
    const int a = static_cast<int>(*graph.NodeIndex(l.a));
    const int b = static_cast<int>(*graph.NodeIndex(l.b));
    g.AddEdge(a, b, weight == AdminWeight::kHops ? 1.0 : l.length_km);
  }
  return g;
}

FiberPath ToFiberPath(const FiberGraph& graph, const search::Path& path) {
  FiberPath out;
  out.weight = path.weight;
  for (int n : path.nodes) out.nodes.push_back(graph.node(n).id);
  for (int e : path.edges) out.links.push_back(graph.link(e).id);
  return out;
}

std::vector<FiberPath> KShortestPaths(const FiberGraph& graph, std::string_view src,
                                      std::string_view dst, int k, AdminWeight weight) {
  auto [s, d] = Endpoints(graph, src, dst);
  if (k < 1) throw Error("paths: k must be positive");
  const auto g = BuildFiberSearchGraph(graph, weight);
  std::vector<FiberPath> out;
  for (const auto& p : search::KShortestSimplePaths(g, s, d, k)) out.push_back(ToFiberPath(graph, p));
  return out;
}

std::optional<std::pair<FiberPath, FiberPath>> ShortestDisjointPair(
    const FiberGraph& graph, std::string_view src, std::string_view dst,
    Disjointness disjointness, AdminWeight weight) {
  auto [s, d] = Endpoints(graph, src, dst);
  const auto g = BuildFiberSearchGraph(graph, weight);
  auto pair = search::ShortestDisjointPair(g, s, d, disjointness == Disjointness::kNode);
  if (!pair) return std::nullopt;
  return std::make_pair(ToFiberPath(graph, pair->first), ToFiberPath(graph, pair->second));
}

std::vector<FiberPath> RestorationPaths(const FiberGraph& graph, std::string_view src,
                                        std::string_view dst, std::string_view failed_link,
                                        int k, AdminWeight weight) {
  auto failed = graph.LinkIndex(failed_link);
  if (!failed) throw Error("paths: unknown link " + std::string(failed_link));
  auto [s, d] = Endpoints(graph, src, dst);
  const auto g = BuildFiberSearchGraph(graph, weight);
  std::vector<char> banned(g.num_edges(), 0);
  banned[*failed] = 1;
  std::vector<FiberPath> out;
  for (const auto& p : search::KShortestSimplePaths(g, s, d, k, banned)) {
    out.push_back(ToFiberPath(graph, p));
  }
  return out;
}

}  // namespace mlplan
