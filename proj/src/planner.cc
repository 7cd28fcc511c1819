#include "mlplan/planner.h"

#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>

#include "mlplan/bom.h"

namespace mlplan {

Catalog ApplyOptions(Catalog catalog, const PlanOptions& options) {
  std::vector<std::string> problems;
  PlannerParams& p = catalog.planner_params;
  if (options.grooming_threshold) p.grooming_threshold = *options.grooming_threshold;
  if (options.k_paths) p.k_paths = *options.k_paths;
  if (options.k_grooming) p.k_grooming = *options.k_grooming;
  if (options.grid) catalog.grid.kind = *options.grid;
  if (!(p.grooming_threshold > 0 && p.grooming_threshold <= 1)) {
    problems.push_back("grooming threshold out of range (0, 1]");
  }
  if (p.k_paths < 1) problems.push_back("k_paths must be at least 1");
  if (p.k_grooming < 1) problems.push_back("k_grooming must be at least 1");
  if (!problems.empty()) throw ValidationError("invalid planner options", problems);
  return catalog;
}

PlanRun PlanOnCandidates(const FiberGraph& topology, const ClpGraph& clp,
                         const std::vector<Demand>& demands, const Catalog& catalog,
                         const PlanOptions& options) {
  PlanRun run;
  run.design = DesignVirtualTopology(clp, demands, catalog,
                                     {options.single_pass, options.load_split});

  SpectrumState spectrum(topology, catalog.grid, options.overbuild, catalog.max_fibers_per_link);
  AllocationResult alloc = RouteDemands(topology, clp, run.design.links, demands, catalog,
                                        std::move(spectrum), {options.order, options.policy});

  Plan& plan = run.plan;
  plan.grid = catalog.grid;
  plan.virtual_topology = std::move(alloc.virtual_links);
  plan.demand_routes = std::move(alloc.demand_routes);
  plan.lightpaths = std::move(alloc.lightpaths);
  plan.unserved = std::move(alloc.unserved);
  for (const FiberLink& l : topology.links()) {
    plan.fiber_instances[l.id] = alloc.spectrum.InstanceCount(l.id);
  }
  plan.bom = FitEquipment(plan.lightpaths, alloc.spectrum, topology, catalog);
  plan.metrics = Summarize(plan, alloc.spectrum, topology, alloc.restoration_gap_count);
  return run;
}

PlanRun PlanNetwork(const FiberGraph& topology, const std::vector<Demand>& demands,
                    const Catalog& catalog, const PlanOptions& options) {
  const Catalog effective = ApplyOptions(catalog, options);
  const ClpGraph clp = BuildClpGraph(topology, effective);
  return PlanOnCandidates(topology, clp, demands, effective, options);
}

SweepRow ToSweepRow(double threshold, const PlanMetrics& m) {
  return {threshold,      m.transponder_count,  m.lightpath_count,
          m.cost_units,   m.avg_fragmentation,  m.unserved_count,
          m.virtual_link_count, m.multi_hop_virtual_link_count};
}

std::vector<SweepRow> Sweep(const FiberGraph& topology, const std::vector<Demand>& demands,
                            const Catalog& catalog, const PlanOptions& options,
                            const std::vector<double>& thresholds) {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0 && thresholds[i] <= 1)) {
      problems.push_back("threshold " + std::to_string(thresholds[i]) + " out of range (0, 1]");
    }
    if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
      problems.push_back("thresholds must be strictly increasing");
    }
  }
  if (thresholds.empty()) problems.push_back("no thresholds given");
  if (!problems.empty()) throw ValidationError("invalid sweep", problems);

  const Catalog base = ApplyOptions(catalog, options);
  const ClpGraph clp = BuildClpGraph(topology, base);

  const int n = static_cast<int>(thresholds.size());
  std::vector<SweepRow> rows(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      Catalog c = base;
      c.planner_params.grooming_threshold = thresholds[i];
      const PlanRun run = PlanOnCandidates(topology, clp, demands, c, options);
      rows[i] = ToSweepRow(thresholds[i], run.plan.metrics);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::vector<double> ThresholdRange(double lo, double hi, double step) {
  if (!(step > 0)) throw ValidationError("invalid sweep", {"step must be positive"});
  std::vector<double> out;
  const long count = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (long i = 0; i < count; ++i) {
    // Rounded to 1e-12 so 0.1 * 3 prints as 0.3.
    out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return out;
}

std::string SweepCsv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "grooming_threshold,transponder_count,lightpath_count,cost_units,avg_fragmentation,"
         "unserved_count,virtual_link_count,multi_hop_link_count\n";
  for (const SweepRow& r : rows) {
    out << r.grooming_threshold << ',' << r.transponder_count << ',' << r.lightpath_count << ','
        << r.cost_units << ',' << r.avg_fragmentation << ',' << r.unserved_count << ','
        << r.virtual_link_count << ',' << r.multi_hop_link_count << '\n';
  }
  return out.str();
}

std::string PlanSummary(const Plan& plan) {
  const PlanMetrics& m = plan.metrics;
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  out << "grid: " << ToString(plan.grid.kind) << " (" << plan.grid.Units() << " units)\n";
  out << "virtual links: " << m.virtual_link_count << " (" << m.multi_hop_virtual_link_count
      << " multi-hop)\n";
  out << "lightpaths: " << m.lightpath_count << " (" << m.protected_lightpath_count
      << " protected 1+1)\n";
  out << "transponders: " << m.transponder_count << "\n";
  out << "demands served: " << m.served_count << ", unserved: " << m.unserved_count << "\n";
  out << "allocated: " << m.total_allocated_gbps << " Gbps\n";
  out << "link occupancy: avg " << m.avg_link_occupancy << ", max " << m.max_link_occupancy
      << "\n";
  out << "fragmentation: ";
  if (m.fragmentation_applicable) {
    out << m.avg_fragmentation << "\n";
  } else {
    out << "n/a\n";
  }
  out << "overbuilt fibers: " << m.overbuilt_fiber_count << "\n";
  out << "restoration gaps: " << m.restoration_gap_count << "\n";
  out << "cost: " << m.cost_units << " units, power: " << m.power_w << " W\n";
  for (const UnservedDemand& u : plan.unserved) {
    out << "unserved " << u.demand_id << ": " << u.reason << "\n";
  }
  return out.str();
}

}  // namespace mlplan
