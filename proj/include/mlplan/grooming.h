#ifndef MLPLAN_GROOMING_H_
#define MLPLAN_GROOMING_H_

#include <map>
#include <string>
#include <vector>

#include "mlplan/catalog.h"
#include "mlplan/clp.h"
#include "mlplan/graph_search.h"
#include "mlplan/model.h"

namespace mlplan {

struct GroomingOptions {
  bool single_pass = false;
  // Divide a demand's bitrate equally over its grooming paths; when false
  // every path carries the full bitrate.
  bool load_split = true;
};

// CLP id -> potential grooming load in Gbps.
using GroomingLoadTable = std::map<std::string, double>;

// Per-edge loads over a subset of candidates, indexed like ClpGraph::edges().
struct LoadVector {
  std::vector<double> loads;
  // Edges traversed by at least one grooming path of a protected demand.
  std::vector<char> protected_touch;
  std::vector<std::string> unrouted_demands;

  bool operator==(const LoadVector&) const = default;
};

// Search graph of the candidate layer: one unit-weight edge per CLP, edge
// index == CLP index.
search::SearchGraph BuildClpSearchGraph(const ClpGraph& clp);

// Parallel over demands; the reduction runs in demand order so results do
// not depend on the thread count. `alive` masks the candidate set (empty
// means all).
LoadVector ComputeLoads(const ClpGraph& clp, const std::vector<Demand>& demands, int k_grooming,
                        bool load_split, const std::vector<char>& alive = {});
LoadVector ComputeLoadsSerial(const ClpGraph& clp, const std::vector<Demand>& demands,
                              int k_grooming, bool load_split,
                              const std::vector<char>& alive = {});

GroomingLoadTable PotentialLoads(const ClpGraph& clp, const std::vector<Demand>& demands,
                                 int k_grooming, bool load_split = true);

struct GroomingTraceRow {
  int round = 0;
  std::string clp_id;
  double load_gbps = 0;
  double capacity_gbps = 0;
  std::string decision;  // keep, delete, exempt, keep-pair
};

struct VirtualTopologyDesign {
  std::vector<VirtualLink> links;
  std::vector<GroomingTraceRow> trace;
  int rounds = 0;
};

VirtualLink MakeVirtualLink(const CandidateLightpath& clp, const Catalog& catalog);

// Threshold heuristic: repeatedly deletes multi-hop candidates whose
// potential load is below threshold x capacity of their best mode until a
// round deletes nothing. Single-link candidates are never deleted.
VirtualTopologyDesign DesignVirtualTopology(const ClpGraph& clp, const std::vector<Demand>& demands,
                                            const Catalog& catalog,
                                            const GroomingOptions& options = {});

std::string GroomingTraceCsv(const std::vector<GroomingTraceRow>& rows);

}  // namespace mlplan

#endif  // MLPLAN_GROOMING_H_
