#ifndef MLPLAN_GRAPH_SEARCH_H_
#define MLPLAN_GRAPH_SEARCH_H_

#include <optional>
#include <utility>
#include <vector>

namespace mlplan::search {

// Undirected multigraph with positive edge weights over dense node indices.
// Each node carries a rank used for tie-breaking: among equal-weight paths the
// one with the lexicographically smaller rank sequence wins, then the one with
// the lexicographically smaller edge-index sequence.
class SearchGraph {
 public:
  struct Edge {
    int u;
    int v;
    double weight;
  };
  struct Incidence {
    int edge;
    int other;
  };

  explicit SearchGraph(std::vector<int> node_ranks);

  int AddEdge(int u, int v, double weight);

  int num_nodes() const { return static_cast<int>(ranks_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_[e]; }
  int rank(int node) const { return ranks_[node]; }
  // Incidences sorted by (rank of other endpoint, edge index).
  const std::vector<Incidence>& Adjacent(int node) const { return adjacency_[node]; }

 private:
  std::vector<int> ranks_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

struct Path {
  std::vector<int> nodes;
  std::vector<int> edges;
  double weight = 0;

  bool operator==(const Path& o) const { return edges == o.edges && nodes == o.nodes; }
};

// Weight comparisons tolerate summation-order rounding.
bool WeightEqual(double a, double b);
bool WeightLess(double a, double b);

// Total order: weight, then node rank sequence, then edge index sequence.
bool PathLess(const SearchGraph& g, const Path& a, const Path& b);

// Sum of edge weights in path order.
double PathWeight(const SearchGraph& g, const std::vector<int>& edges);

// Minimum path under PathLess, avoiding banned nodes and edges (either mask
// may be empty, meaning nothing is banned). The source itself is never
// treated as banned.
std::optional<Path> LexShortestPath(const SearchGraph& g, int src, int dst,
                                    const std::vector<char>& banned_nodes = {},
                                    const std::vector<char>& banned_edges = {});

// Yen's algorithm: the first k simple paths under PathLess.
std::vector<Path> KShortestSimplePaths(const SearchGraph& g, int src, int dst, int k,
                                       const std::vector<char>& banned_edges = {});

// Minimum total-weight pair of edge-disjoint (or, with node_disjoint, also
// interior-node-disjoint) src-dst paths via Bhandari's edge-reversal
// construction. The lighter path comes first.
std::optional<std::pair<Path, Path>> ShortestDisjointPair(const SearchGraph& g, int src,
                                                          int dst, bool node_disjoint);

}  // namespace mlplan::search

#endif  // MLPLAN_GRAPH_SEARCH_H_
