#ifndef MLPLAN_CLP_H_
#define MLPLAN_CLP_H_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mlplan/catalog.h"
#include "mlplan/model.h"

namespace mlplan {

// Candidate lightpath (auxiliary) graph. Parallel edges per node pair are
// expected; edge order is pair order (topology node order) and then route
// discovery order within a pair.
class ClpGraph {
 public:
  ClpGraph() = default;
  ClpGraph(std::vector<std::string> nodes, std::vector<CandidateLightpath> edges,
           std::vector<std::string> diagnostics);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<CandidateLightpath>& edges() const { return edges_; }
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

  std::optional<std::size_t> Find(std::string_view id) const;
  const CandidateLightpath& Get(std::string_view id) const;

  bool operator==(const ClpGraph& o) const {
    return nodes_ == o.nodes_ && edges_ == o.edges_ && diagnostics_ == o.diagnostics_;
  }

 private:
  std::vector<std::string> nodes_;
  std::vector<CandidateLightpath> edges_;
  std::vector<std::string> diagnostics_;
  std::unordered_map<std::string, std::size_t> index_;
};

// All candidates for every node pair with their feasible modes attached,
// before infeasible ones are dropped. Parallel over node pairs.
ClpGraph EnumerateCandidates(const FiberGraph& graph, const Catalog& catalog);
// Same result computed with a plain sequential loop.
ClpGraph EnumerateCandidatesSerial(const FiberGraph& graph, const Catalog& catalog);

// Drops candidates without a feasible mode and clears partner references to
// them. Idempotent.
ClpGraph RemoveInfeasible(const ClpGraph& clp);

// EnumerateCandidates followed by RemoveInfeasible, plus one diagnostic line
// per node pair left without any candidate.
ClpGraph BuildClpGraph(const FiberGraph& graph, const Catalog& catalog);
ClpGraph BuildClpGraphSerial(const FiberGraph& graph, const Catalog& catalog);

// Highest-rate feasible mode (tie: lower cost, then lower id).
const TransponderMode& BestMode(const CandidateLightpath& clp, const Catalog& catalog);

}  // namespace mlplan

#endif  // MLPLAN_CLP_H_
