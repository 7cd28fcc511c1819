#ifndef MLPLAN_ALLOCATE_H_
#define MLPLAN_ALLOCATE_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mlplan/catalog.h"
#include "mlplan/clp.h"
#include "mlplan/graph_search.h"
#include "mlplan/model.h"
#include "mlplan/spectrum.h"

namespace mlplan {

// Reasons a demand ends up unserved (or a path query is refused).
inline constexpr std::string_view kNoVirtualPath = "no virtual path";
inline constexpr std::string_view kSpectrumExhausted = "spectrum exhausted";
inline constexpr std::string_view kExplicitRouteUnmappable = "explicit route unmappable";
inline constexpr std::string_view kNoProtectedPath = "no protected path";
inline constexpr std::string_view kBitrateExceedsLightpath =
    "bitrate exceeds single lightpath capacity";

enum class DemandOrder { kDescending, kAscending, kInput };

std::string_view ToString(DemandOrder o);
std::optional<DemandOrder> ParseDemandOrder(std::string_view s);

// Descending/ascending by effective bitrate with ties broken by id, or file
// order.
std::vector<Demand> OrderDemands(const std::vector<Demand>& demands, DemandOrder order);

struct Hop {
  std::string virtual_link_id;
  std::string lightpath_id;
  bool new_lightpath = false;

  bool operator==(const Hop&) const = default;
};

// Where one demand was carried: one lightpath on every virtual link of its
// route.
struct Placement {
  std::string demand_id;
  double gbps = 0;
  bool protected_1p1 = false;
  std::vector<Hop> hops;

  bool operator==(const Placement&) const = default;
};

struct PlaceResult {
  std::optional<Placement> placement;
  std::string reason;  // set when placement is empty
};

// Capacity and spectrum ledger over a fixed virtual topology. A demand rides
// one lightpath per virtual link (no splitting); when no lightpath of the
// right protection kind has room, a new one is installed on the link's fiber
// route, overbuilding fibers rather than rerouting.
class Allocator {
 public:
  Allocator(const FiberGraph& topology, const ClpGraph& clp, std::vector<VirtualLink> links,
            const Catalog& catalog, SpectrumState spectrum,
            SpectrumPolicy policy = SpectrumPolicy::kFirstFit);

  // Transactional: on failure the ledger is unchanged.
  PlaceResult Place(const Demand& demand);
  // Returns capacity; lightpaths left empty are torn down and their spectrum
  // freed.
  void Unplace(const Placement& placement);

  // Installs one more lightpath on the virtual link; nullopt when spectrum
  // cannot be found even after overbuild.
  std::optional<std::string> InstallLightpath(std::string_view virtual_link_id,
                                              bool protected_1p1);

  // Shortest usable virtual path (hops, then fiber length, then node ids) or
  // the explicit-route mapping. Empty with `reason` set when none exists.
  std::vector<std::size_t> Route(const Demand& demand, std::string* reason) const;

  const std::vector<VirtualLink>& virtual_links() const { return links_; }
  const std::vector<Lightpath>& lightpaths() const { return lightpaths_; }
  const SpectrumState& spectrum() const { return spectrum_; }
  const Lightpath* FindLightpath(std::string_view id) const;
  const VirtualLink* FindVirtualLink(std::string_view id) const;
  bool CanProtect(const VirtualLink& link) const;

  // Restores a ledger previously captured through the accessors above.
  void Restore(std::vector<VirtualLink> links, std::vector<Lightpath> lightpaths,
               SpectrumState spectrum, int next_lightpath);
  int next_lightpath() const { return next_lightpath_; }

 private:
  struct Snapshot;
  std::vector<std::size_t> ShortestRoute(const Demand& demand, bool need_protection,
                                         double min_rate) const;
  std::vector<std::size_t> ExplicitRoute(const Demand& demand, bool need_protection,
                                         double min_rate) const;
  bool Usable(std::size_t vl, bool need_protection, double min_rate) const;
  void RebuildIndex();

  const FiberGraph& topology_;
  const ClpGraph& clp_;
  const Catalog& catalog_;
  SpectrumPolicy policy_;
  std::vector<VirtualLink> links_;
  std::vector<Lightpath> lightpaths_;
  SpectrumState spectrum_;
  int next_lightpath_ = 1;
  search::SearchGraph routing_graph_;
  std::unordered_map<std::string, std::size_t> link_index_;
  std::unordered_map<std::string, std::size_t> lightpath_index_;
};

struct AllocationOptions {
  DemandOrder order = DemandOrder::kDescending;
  SpectrumPolicy policy = SpectrumPolicy::kFirstFit;
};

struct AllocationResult {
  std::vector<VirtualLink> virtual_links;
  std::vector<Lightpath> lightpaths;
  SpectrumState spectrum;
  std::map<std::string, std::vector<std::string>> demand_routes;
  std::vector<Placement> placements;  // processing order
  std::vector<UnservedDemand> unserved;
  int restoration_gap_count = 0;
};

AllocationResult RouteDemands(const FiberGraph& topology, const ClpGraph& clp,
                              std::vector<VirtualLink> virtual_topology,
                              const std::vector<Demand>& demands, const Catalog& catalog,
                              SpectrumState spectrum, const AllocationOptions& options = {});

// Count of (restoration demand, virtual link, failed fiber link) triples for
// which no candidate between the link's endpoints avoids the failed fiber.
int CountRestorationGaps(const ClpGraph& clp, const std::vector<Demand>& demands,
                         const std::map<std::string, std::vector<std::string>>& demand_routes,
                         const std::vector<VirtualLink>& virtual_links);

}  // namespace mlplan

#endif  // MLPLAN_ALLOCATE_H_
