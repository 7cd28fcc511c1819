#include "mlplan/graph_search.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <set>

namespace mlplan::search {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-9;

bool Banned(const std::vector<char>& mask, int i) {
  return !mask.empty() && mask[i] != 0;
}

// Distances to dst over the allowed subgraph.
std::vector<double> DistancesTo(const SearchGraph& g, int dst,
                                const std::vector<char>& banned_nodes,
                                const std::vector<char>& banned_edges, int src) {
  std::vector<double> dist(g.num_nodes(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[dst] = 0;
  pq.push({0.0, dst});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (const auto& inc : g.Adjacent(u)) {
      if (Banned(banned_edges, inc.edge)) continue;
      if (inc.other != src && Banned(banned_nodes, inc.other)) continue;
      const double nd = d + g.edge(inc.edge).weight;
      if (nd < dist[inc.other]) {
        dist[inc.other] = nd;
        pq.push({nd, inc.other});
      }
    }
  }
  return dist;
}

bool LexLess(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

SearchGraph::SearchGraph(std::vector<int> node_ranks)
    : ranks_(std::move(node_ranks)), adjacency_(ranks_.size()) {}

int SearchGraph::AddEdge(int u, int v, double weight) {
  const int e = static_cast<int>(edges_.size());
  edges_.push_back({u, v, weight});
  auto insert = [this](int at, Incidence inc) {
    auto& list = adjacency_[at];
    auto pos = std::upper_bound(list.begin(), list.end(), inc,
                                [this](const Incidence& x, const Incidence& y) {
                                  if (ranks_[x.other] != ranks_[y.other]) {
                                    return ranks_[x.other] < ranks_[y.other];
                                  }
                                  return x.edge < y.edge;
                                });
    list.insert(pos, inc);
  };
  insert(u, {e, v});
  if (u != v) insert(v, {e, u});
  return e;
}

bool WeightEqual(double a, double b) {
  if (a == b) return true;
  if (std::isinf(a) || std::isinf(b)) return false;
  return std::fabs(a - b) <= kRelTol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

bool WeightLess(double a, double b) { return a < b && !WeightEqual(a, b); }

bool PathLess(const SearchGraph& g, const Path& a, const Path& b) {
  if (!WeightEqual(a.weight, b.weight)) return a.weight < b.weight;
  std::vector<int> ra(a.nodes.size()), rb(b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) ra[i] = g.rank(a.nodes[i]);
  for (std::size_t i = 0; i < b.nodes.size(); ++i) rb[i] = g.rank(b.nodes[i]);
  if (ra != rb) return LexLess(ra, rb);
  return LexLess(a.edges, b.edges);
}

double PathWeight(const SearchGraph& g, const std::vector<int>& edges) {
  double w = 0;
  for (int e : edges) w += g.edge(e).weight;
  return w;
}

std::optional<Path> LexShortestPath(const SearchGraph& g, int src, int dst,
                                    const std::vector<char>& banned_nodes,
                                    const std::vector<char>& banned_edges) {
  if (src == dst) return std::nullopt;
  if (Banned(banned_nodes, dst)) return std::nullopt;
  const std::vector<double> dist = DistancesTo(g, dst, banned_nodes, banned_edges, src);
  if (dist[src] == kInf) return std::nullopt;

  // Walk tight edges greedily; adjacency order makes the first tight
  // incidence the lexicographically smallest continuation.
  Path path;
  path.nodes.push_back(src);
  int cur = src;
  while (cur != dst) {
    int next_edge = -1;
    int next_node = -1;
    for (const auto& inc : g.Adjacent(cur)) {
      if (Banned(banned_edges, inc.edge)) continue;
      if (Banned(banned_nodes, inc.other) || inc.other == src) continue;
      if (!(dist[inc.other] < dist[cur])) continue;
      if (WeightEqual(g.edge(inc.edge).weight + dist[inc.other], dist[cur])) {
        next_edge = inc.edge;
        next_node = inc.other;
        break;
      }
    }
    if (next_edge < 0) return std::nullopt;  // unreachable with positive weights
    path.edges.push_back(next_edge);
    path.nodes.push_back(next_node);
    cur = next_node;
  }
  path.weight = PathWeight(g, path.edges);
  return path;
}

std::vector<Path> KShortestSimplePaths(const SearchGraph& g, int src, int dst, int k,
                                       const std::vector<char>& banned_edges) {
  std::vector<Path> accepted;
  if (k <= 0 || src == dst) return accepted;
  auto first = LexShortestPath(g, src, dst, {}, banned_edges);
  if (!first) return accepted;
  accepted.push_back(std::move(*first));

  auto less = [&g](const Path& a, const Path& b) { return PathLess(g, a, b); };
  std::set<Path, decltype(less)> candidates(less);

  std::vector<char> node_mask(g.num_nodes(), 0);
  std::vector<char> edge_mask(g.num_edges(), 0);
  while (static_cast<int>(accepted.size()) < k) {
    const Path& last = accepted.back();
    for (std::size_t i = 0; i + 1 < last.nodes.size(); ++i) {
      std::fill(node_mask.begin(), node_mask.end(), 0);
      if (banned_edges.empty()) {
        std::fill(edge_mask.begin(), edge_mask.end(), 0);
      } else {
        edge_mask = banned_edges;
      }
      for (const Path& p : accepted) {
        if (p.edges.size() > i && std::equal(last.edges.begin(), last.edges.begin() + i,
                                             p.edges.begin())) {
          edge_mask[p.edges[i]] = 1;
        }
      }
      for (std::size_t j = 0; j < i; ++j) node_mask[last.nodes[j]] = 1;

      auto spur = LexShortestPath(g, last.nodes[i], dst, node_mask, edge_mask);
      if (!spur) continue;
      Path total;
      total.nodes.assign(last.nodes.begin(), last.nodes.begin() + i);
      total.nodes.insert(total.nodes.end(), spur->nodes.begin(), spur->nodes.end());
      total.edges.assign(last.edges.begin(), last.edges.begin() + i);
      total.edges.insert(total.edges.end(), spur->edges.begin(), spur->edges.end());
      total.weight = PathWeight(g, total.edges);
      candidates.insert(std::move(total));
    }
    if (candidates.empty()) break;
    accepted.push_back(*candidates.begin());
    candidates.erase(candidates.begin());
  }
  return accepted;
}

namespace {

struct Arc {
  int from;
  int to;
  double weight;
  int edge;  // -1 for node-split arcs
  bool reversed;
};

}  // namespace

std::optional<std::pair<Path, Path>> ShortestDisjointPair(const SearchGraph& g, int src,
                                                          int dst, bool node_disjoint) {
  if (src == dst) return std::nullopt;
  auto first = LexShortestPath(g, src, dst);
  if (!first) return std::nullopt;

  // Vertex numbering in the auxiliary digraph.
  auto in_v = [&](int v) { return node_disjoint ? 2 * v : v; };
  auto out_v = [&](int v) { return node_disjoint ? 2 * v + 1 : v; };
  const int num_vertices = node_disjoint ? 2 * g.num_nodes() : g.num_nodes();

  // Orientation of each edge along the first path (+1 u->v, -1 v->u, 0 unused)
  // and interior nodes of the first path.
  std::vector<int> on_first(g.num_edges(), 0);
  for (std::size_t i = 0; i < first->edges.size(); ++i) {
    const auto& e = g.edge(first->edges[i]);
    on_first[first->edges[i]] = (e.u == first->nodes[i]) ? 1 : -1;
  }
  std::vector<char> interior(g.num_nodes(), 0);
  for (std::size_t i = 1; i + 1 < first->nodes.size(); ++i) interior[first->nodes[i]] = 1;

  std::vector<Arc> arcs;
  if (node_disjoint) {
    for (int v = 0; v < g.num_nodes(); ++v) {
      if (interior[v]) {
        arcs.push_back({out_v(v), in_v(v), 0.0, -1, true});
      } else {
        arcs.push_back({in_v(v), out_v(v), 0.0, -1, false});
      }
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edge(e);
    if (edge.u == edge.v) continue;
    if (on_first[e] == 0) {
      arcs.push_back({out_v(edge.u), in_v(edge.v), edge.weight, e, false});
      arcs.push_back({out_v(edge.v), in_v(edge.u), edge.weight, e, false});
    } else {
      const int from = on_first[e] > 0 ? edge.u : edge.v;
      const int to = on_first[e] > 0 ? edge.v : edge.u;
      arcs.push_back({in_v(to), out_v(from), -edge.weight, e, true});
    }
  }

  // Bellman-Ford; the residual graph has no negative cycles because the
  // first path is a shortest path.
  const int start = out_v(src);
  const int target = in_v(dst);
  std::vector<double> dist(num_vertices, kInf);
  std::vector<int> parent(num_vertices, -1);
  dist[start] = 0;
  for (int round = 0; round < num_vertices; ++round) {
    bool changed = false;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      const Arc& arc = arcs[a];
      if (dist[arc.from] == kInf) continue;
      const double nd = dist[arc.from] + arc.weight;
      if (nd < dist[arc.to] && !WeightEqual(nd, dist[arc.to])) {
        dist[arc.to] = nd;
        parent[arc.to] = static_cast<int>(a);
        changed = true;
      }
    }
    if (!changed) break;
  }
  if (dist[target] == kInf) return std::nullopt;

  // Union of both edge sets minus interlacing edges, oriented src -> dst.
  std::vector<int> direction = on_first;  // +1/-1 orientation, 0 absent
  std::vector<char> seen(num_vertices, 0);
  for (int v = target; v != start;) {
    if (seen[v]) return std::nullopt;  // defensive: malformed parent chain
    seen[v] = 1;
    const Arc& arc = arcs[parent[v]];
    if (arc.edge >= 0) {
      if (arc.reversed) {
        direction[arc.edge] = 0;
      } else {
        direction[arc.edge] = (g.edge(arc.edge).u == (node_disjoint ? arc.from / 2 : arc.from))
                                  ? 1
                                  : -1;
      }
    }
    v = arc.from;
  }

  std::vector<std::vector<std::pair<int, int>>> out(g.num_nodes());
  for (int e = 0; e < g.num_edges(); ++e) {
    if (direction[e] == 0) continue;
    const auto& edge = g.edge(e);
    if (direction[e] > 0) {
      out[edge.u].push_back({e, edge.v});
    } else {
      out[edge.v].push_back({e, edge.u});
    }
  }
  for (auto& list : out) std::sort(list.begin(), list.end());
  std::vector<std::size_t> cursor(g.num_nodes(), 0);

  auto trace = [&]() -> std::optional<Path> {
    Path p;
    p.nodes.push_back(src);
    int cur = src;
    while (cur != dst) {
      if (cursor[cur] >= out[cur].size()) return std::nullopt;
      auto [e, next] = out[cur][cursor[cur]++];
      p.edges.push_back(e);
      p.nodes.push_back(next);
      cur = next;
      if (p.edges.size() > static_cast<std::size_t>(g.num_edges())) return std::nullopt;
    }
    p.weight = PathWeight(g, p.edges);
    return p;
  };
  auto a = trace();
  auto b = trace();
  if (!a || !b) return std::nullopt;
  if (PathLess(g, *b, *a)) std::swap(*a, *b);
  return std::make_pair(std::move(*a), std::move(*b));
}

}  // namespace mlplan::search
