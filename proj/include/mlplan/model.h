#ifndef MLPLAN_MODEL_H_
#define MLPLAN_MODEL_H_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mlplan {

// Base class for every error the library reports. The CLI maps subclasses
// onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> details)
      : Error(what), details_(std::move(details)) {}
  const std::vector<std::string>& details() const { return details_; }

 private:
  std::vector<std::string> details_;
};

// ----- Physical layer -----

enum class RoadmClass { kFixed, kDirectionless, kColorlessDirectionless };

struct NodeSite {
  std::string id;
  std::string name;
  RoadmClass roadm_class = RoadmClass::kFixed;

  bool operator==(const NodeSite&) const = default;
};

struct Span {
  double length_km = 0;
  double loss_db = 0;

  bool operator==(const Span&) const = default;
};

struct FiberLink {
  std::string id;
  std::string a;
  std::string b;
  double length_km = 0;
  std::vector<Span> spans;
  int fiber_count = 1;

  const std::string& Other(std::string_view node) const {
    return node == a ? b : a;
  }
  bool operator==(const FiberLink&) const = default;
};

// The fiber graph: sites plus undirected fiber links. Parallel links between
// the same two sites are allowed. Lookup indexes are rebuilt on construction.
class FiberGraph {
 public:
  FiberGraph() = default;
  FiberGraph(std::vector<NodeSite> nodes, std::vector<FiberLink> links);

  const std::vector<NodeSite>& nodes() const { return nodes_; }
  const std::vector<FiberLink>& links() const { return links_; }

  // Index lookups return std::nullopt for unknown ids. With duplicate ids the
  // first occurrence wins (ValidateTopology reports the duplicate).
  std::optional<std::size_t> NodeIndex(std::string_view id) const;
  std::optional<std::size_t> LinkIndex(std::string_view id) const;
  const NodeSite& node(std::size_t i) const { return nodes_[i]; }
  const FiberLink& link(std::size_t i) const { return links_[i]; }
  const FiberLink& LinkById(std::string_view id) const;
  const NodeSite& NodeById(std::string_view id) const;

  // Link indices incident to node i, in file order.
  const std::vector<std::size_t>& Incident(std::size_t node) const {
    return incident_[node];
  }

  // Rank of each node in lexicographic id order; used for deterministic
  // tie-breaking in path searches.
  const std::vector<int>& NodeRanks() const { return ranks_; }

  bool operator==(const FiberGraph& o) const {
    return nodes_ == o.nodes_ && links_ == o.links_;
  }

 private:
  std::vector<NodeSite> nodes_;
  std::vector<FiberLink> links_;
  std::unordered_map<std::string, std::size_t> node_index_;
  std::unordered_map<std::string, std::size_t> link_index_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<int> ranks_;
};

struct Diagnostic {
  std::string entity;  // e.g. "link AB" or "topology"
  std::string rule;    // e.g. "span sum mismatch"
  std::string message;

  std::string ToString() const { return entity + ": " + rule + " (" + message + ")"; }
};

// Checks every topology invariant; an empty result means the graph is usable.
std::vector<Diagnostic> ValidateTopology(const FiberGraph& topology);

// ----- Demands -----

enum class ServiceType { kEthernet, kIpMpls, kOdu0, kOdu1, kOdu2 };

enum class ProtectionClass {
  kUnprotected,
  kOpticalProtection,
  kOpticalRestoration,
  kProtectionAndRestoration,
};

bool IsOduService(ServiceType type);
// Nominal payload rate of one ODU container in Gbps.
double OduRateGbps(ServiceType type);

struct Demand {
  std::string id;
  std::string src;
  std::string dst;
  ServiceType service_type = ServiceType::kEthernet;
  std::optional<double> bitrate_gbps;
  std::optional<int> count;
  ProtectionClass protection = ProtectionClass::kUnprotected;
  std::optional<std::vector<std::string>> explicit_route;

  double EffectiveGbps() const;
  bool NeedsProtection() const {
    return protection == ProtectionClass::kOpticalProtection ||
           protection == ProtectionClass::kProtectionAndRestoration;
  }
  bool NeedsRestoration() const {
    return protection == ProtectionClass::kOpticalRestoration ||
           protection == ProtectionClass::kProtectionAndRestoration;
  }
  bool operator==(const Demand&) const = default;
};

// ----- Optical equipment -----

struct TransponderMode {
  std::string id;
  double line_rate_gbps = 0;
  std::string modulation;
  double slot_width_ghz = 0;
  bool fixed_channel = false;
  double required_osnr_db = 0;
  double max_reach_km = 0;
  double roadm_passthrough_penalty_db = 0;
  double cost_units = 0;
  double power_w = 0;

  bool operator==(const TransponderMode&) const = default;
};

struct MarginStack {
  double aging_margin_db = 0;
  double span_repair_margin_db = 0;
  double operator_margin_db = 0;

  double Total() const {
    return aging_margin_db + span_repair_margin_db + operator_margin_db;
  }
  bool operator==(const MarginStack&) const = default;
};

enum class GridKind { kFixed, kFlex };

struct GridSpec {
  GridKind kind = GridKind::kFlex;
  int channel_count = 96;
  double channel_spacing_ghz = 50.0;
  double slot_granularity_ghz = 12.5;
  int total_slots = 384;

  // Number of spectrum units (channels or slots) per fiber.
  int Units() const { return kind == GridKind::kFixed ? channel_count : total_slots; }
  // Units a mode occupies, or nullopt if the mode cannot be carried on this
  // grid (wider than a fixed channel).
  std::optional<int> WidthFor(const TransponderMode& mode) const;

  bool operator==(const GridSpec&) const = default;
};

// ----- Auxiliary (candidate lightpath) layer -----

struct RouteKind {
  // kDirectLink marks the single-link route of an adjacent pair, added even
  // when it is not among the k shortest so that opaque routing stays possible.
  enum class Tag { kKthShortest, kDisjointMember, kRestoration, kDirectLink };
  Tag tag = Tag::kKthShortest;
  int k = 0;                // kKthShortest only, 1-based
  std::string failed_link;  // kRestoration only

  static RouteKind KthShortest(int k) { return {Tag::kKthShortest, k, {}}; }
  static RouteKind DisjointMember() { return {Tag::kDisjointMember, 0, {}}; }
  static RouteKind DirectLink() { return {Tag::kDirectLink, 0, {}}; }
  static RouteKind Restoration(std::string link) {
    return {Tag::kRestoration, 0, std::move(link)};
  }
  bool operator==(const RouteKind&) const = default;
};

struct PathMetrics {
  double total_length_km = 0;
  int span_count = 0;
  int roadm_passthrough_count = 0;
  double osnr_db = 0;
  double effective_required_osnr_db = 0;

  bool operator==(const PathMetrics&) const = default;
};

struct ModeOption {
  std::string mode_id;
  PathMetrics metrics;

  bool operator==(const ModeOption&) const = default;
};

struct CandidateLightpath {
  std::string id;
  std::string a;  // endpoints, a precedes b in topology node order
  std::string b;
  std::vector<std::string> route;  // fiber link ids from a to b
  std::vector<std::string> nodes;  // site ids from a to b
  double length_km = 0;
  std::vector<RouteKind> kinds;
  std::vector<ModeOption> feasible_modes;
  std::optional<std::string> partner_id;

  bool IsOneHop() const { return route.size() == 1; }
  bool operator==(const CandidateLightpath&) const = default;
};

// ----- Spectrum and lightpaths -----

struct LinkInstance {
  std::string link_id;
  int instance = 0;

  bool operator==(const LinkInstance&) const = default;
};

// Half-open unit range [lo, hi) occupied on one fiber instance of every link
// of a route. On a fixed grid hi == lo + 1 and lo is the channel index.
struct SpectrumAssignment {
  GridKind grid = GridKind::kFlex;
  int lo = 0;
  int hi = 0;
  std::vector<LinkInstance> links;

  int width() const { return hi - lo; }
  bool operator==(const SpectrumAssignment&) const = default;
};

struct Lightpath {
  std::string id;
  std::string virtual_link_id;
  std::string a;  // terminating sites
  std::string b;
  std::string mode_id;
  double line_rate_gbps = 0;
  double allocated_gbps = 0;
  SpectrumAssignment spectrum;
  std::optional<SpectrumAssignment> protection_spectrum;

  bool protected_1p1() const { return protection_spectrum.has_value(); }
  bool operator==(const Lightpath&) const = default;
};

struct VirtualLink {
  std::string id;
  std::string clp_id;
  std::string a;
  std::string b;
  std::string selected_mode;
  double line_rate_gbps = 0;
  double length_km = 0;
  int fiber_hops = 0;
  std::vector<std::string> lightpaths;  // ids into Plan::lightpaths
  double allocated_gbps = 0;

  bool operator==(const VirtualLink&) const = default;
};

// ----- Plan output -----

struct BomItem {
  std::string kind;
  double quantity = 0;
  double unit_cost = 0;
  double unit_power = 0;

  double total_cost() const { return quantity * unit_cost; }
  double total_power() const { return quantity * unit_power; }
  bool operator==(const BomItem&) const = default;
};

struct BillOfMaterial {
  std::vector<BomItem> items;
  double total_cost = 0;
  double total_power = 0;

  const BomItem* Find(std::string_view kind) const;
  bool operator==(const BillOfMaterial&) const = default;
};

struct PlanMetrics {
  int transponder_count = 0;
  int lightpath_count = 0;
  int protected_lightpath_count = 0;
  int served_count = 0;
  int unserved_count = 0;
  int virtual_link_count = 0;
  int multi_hop_virtual_link_count = 0;
  double total_allocated_gbps = 0;
  double avg_link_occupancy = 0;
  double max_link_occupancy = 0;
  double avg_fragmentation = 0;
  bool fragmentation_applicable = false;
  int restoration_gap_count = 0;
  int overbuilt_fiber_count = 0;
  double cost_units = 0;
  double power_w = 0;

  bool operator==(const PlanMetrics&) const = default;
};

struct UnservedDemand {
  std::string demand_id;
  std::string reason;

  bool operator==(const UnservedDemand&) const = default;
};

struct Plan {
  GridSpec grid;
  std::vector<VirtualLink> virtual_topology;
  std::map<std::string, std::vector<std::string>> demand_routes;
  std::vector<Lightpath> lightpaths;
  // Fiber instances in use per link (existing plus overbuilt), keyed by id.
  std::map<std::string, int> fiber_instances;
  BillOfMaterial bom;
  PlanMetrics metrics;
  std::vector<UnservedDemand> unserved;

  bool operator==(const Plan&) const = default;
};

// Enum <-> string helpers shared by the document readers and writers.
std::string_view ToString(RoadmClass v);
std::string_view ToString(ServiceType v);
std::string_view ToString(ProtectionClass v);
std::string_view ToString(GridKind v);
std::optional<RoadmClass> ParseRoadmClass(std::string_view s);
std::optional<ServiceType> ParseServiceType(std::string_view s);
std::optional<ProtectionClass> ParseProtectionClass(std::string_view s);
std::optional<GridKind> ParseGridKind(std::string_view s);

}  // namespace mlplan

#endif  // MLPLAN_MODEL_H_
