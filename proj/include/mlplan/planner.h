#ifndef MLPLAN_PLANNER_H_
#define MLPLAN_PLANNER_H_

#include <optional>
#include <string>
#include <vector>

#include "mlplan/allocate.h"
#include "mlplan/catalog.h"
#include "mlplan/clp.h"
#include "mlplan/grooming.h"
#include "mlplan/model.h"
#include "mlplan/spectrum.h"

namespace mlplan {

// Command-line overrides layered on top of the catalog.
struct PlanOptions {
  std::optional<double> grooming_threshold;
  std::optional<int> k_paths;
  std::optional<int> k_grooming;
  std::optional<GridKind> grid;
  SpectrumPolicy policy = SpectrumPolicy::kFirstFit;
  DemandOrder order = DemandOrder::kDescending;
  bool single_pass = false;
  bool load_split = true;
  bool overbuild = true;
};

// Catalog with the overrides applied; ValidationError for out-of-range
// values.
Catalog ApplyOptions(Catalog catalog, const PlanOptions& options);

struct PlanRun {
  Plan plan;
  VirtualTopologyDesign design;
};

// Everything after the candidate graph: grooming, allocation, spectrum and
// BOM. `catalog` must already carry the overrides.
PlanRun PlanOnCandidates(const FiberGraph& topology, const ClpGraph& clp,
                         const std::vector<Demand>& demands, const Catalog& catalog,
                         const PlanOptions& options);

// Full pipeline.
PlanRun PlanNetwork(const FiberGraph& topology, const std::vector<Demand>& demands,
                    const Catalog& catalog, const PlanOptions& options);

struct SweepRow {
  double grooming_threshold = 0;
  int transponder_count = 0;
  int lightpath_count = 0;
  double cost_units = 0;
  double avg_fragmentation = 0;
  int unserved_count = 0;
  int virtual_link_count = 0;
  int multi_hop_link_count = 0;

  bool operator==(const SweepRow&) const = default;
};

SweepRow ToSweepRow(double threshold, const PlanMetrics& metrics);

// One plan per threshold over a shared candidate graph. Thresholds are run
// in parallel; rows come back sorted by threshold. ValidationError unless the
// thresholds are strictly increasing and within (0, 1].
std::vector<SweepRow> Sweep(const FiberGraph& topology, const std::vector<Demand>& demands,
                            const Catalog& catalog, const PlanOptions& options,
                            const std::vector<double>& thresholds);

// lo, lo + step, ... up to hi inclusive (with a small tolerance).
std::vector<double> ThresholdRange(double lo, double hi, double step);

std::string SweepCsv(const std::vector<SweepRow>& rows);

// Human-readable plan digest.
std::string PlanSummary(const Plan& plan);

}  // namespace mlplan

#endif  // MLPLAN_PLANNER_H_
