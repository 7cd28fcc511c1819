#ifndef MLPLAN_PATHS_H_
#define MLPLAN_PATHS_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mlplan/catalog.h"
#include "mlplan/graph_search.h"
#include "mlplan/model.h"

namespace mlplan {

struct FiberPath {
  std::vector<std::string> links;
  std::vector<std::string> nodes;
  double weight = 0;

  bool operator==(const FiberPath&) const = default;
};

// Search graph over the fiber topology; edge i is fiber link i, node i is
// site i. An empty exclusion leaves every link in place.
search::SearchGraph BuildFiberSearchGraph(const FiberGraph& graph, AdminWeight weight);

FiberPath ToFiberPath(const FiberGraph& graph, const search::Path& path);

// The k lightest simple paths, ascending by (weight, node-id sequence).
// Throws Error for unknown endpoints or src == dst.
std::vector<FiberPath> KShortestPaths(const FiberGraph& graph, std::string_view src,
                                      std::string_view dst, int k, AdminWeight weight);

// Minimum total-weight disjoint pair, lighter path first; nullopt when no
// disjoint pair exists.
std::optional<std::pair<FiberPath, FiberPath>> ShortestDisjointPair(
    const FiberGraph& graph, std::string_view src, std::string_view dst,
    Disjointness disjointness, AdminWeight weight);

// k-shortest paths with one link failed. Throws Error for an unknown link.
std::vector<FiberPath> RestorationPaths(const FiberGraph& graph, std::string_view src,
                                        std::string_view dst, std::string_view failed_link,
                                        int k, AdminWeight weight);

}  // namespace mlplan

#endif  // MLPLAN_PATHS_H_
