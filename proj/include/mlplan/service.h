#ifndef MLPLAN_SERVICE_H_
#define MLPLAN_SERVICE_H_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlplan/allocate.h"
#include "mlplan/catalog.h"
#include "mlplan/clp.h"
#include "mlplan/model.h"
#include "mlplan/spectrum.h"

namespace mlplan {

// Service failures carry a machine-readable code next to the message.
class ServiceError : public Error {
 public:
  ServiceError(std::string code, const std::string& what) : Error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline constexpr const char* kOfferExpired = "offer expired";
inline constexpr const char* kUnknownOffer = "unknown offer";
inline constexpr const char* kUnknownRecord = "unknown record";
inline constexpr const char* kBadRequest = "bad request";

struct ModeSummary {
  std::string mode_id;
  double line_rate_gbps = 0;
  double slot_width_ghz = 0;
};

struct AbstractLink {
  std::string clp_id;
  std::string a;
  std::string b;
  std::vector<ModeSummary> modes;
  // Idle capacity on installed lightpaths plus what further lightpaths of the
  // link's mode could add on currently free spectrum (no overbuild counted).
  double residual_gbps = 0;
  double length_km = 0;
  std::optional<std::vector<std::string>> route;  // only when exposed
};

struct PathRequest {
  std::string src;
  std::string dst;
  double bitrate_gbps = 0;
  ProtectionClass protection = ProtectionClass::kUnprotected;
  std::optional<std::vector<std::string>> explicit_route;
};

struct OfferHop {
  std::string virtual_link_id;
  std::string clp_id;
  std::string mode_id;
  std::string lightpath_id;
  bool new_lightpath = false;
  SpectrumAssignment spectrum;
  std::optional<SpectrumAssignment> protection_spectrum;
};

struct PathOffer {
  std::string offer_id;
  PathRequest request;
  std::vector<OfferHop> hops;
  std::chrono::steady_clock::time_point expires_at;
};

struct QueryResult {
  std::optional<PathOffer> offer;
  std::string reason;  // set on refusal
};

enum class RecordStatus { kActive, kReleased };

struct ProvisionRecord {
  std::string record_id;
  std::string offer_id;
  PathRequest request;
  std::vector<OfferHop> hops;
  RecordStatus status = RecordStatus::kActive;
};

struct ServiceOptions {
  std::chrono::steady_clock::duration offer_ttl = std::chrono::seconds(60);
  bool expose_routes = false;
  SpectrumPolicy policy = SpectrumPolicy::kFirstFit;
  bool overbuild = true;
};

using ServiceClock = std::function<std::chrono::steady_clock::time_point()>;

// Stateful provisioning endpoint over a live allocation ledger. A query
// places the request tentatively, so the offered spectrum is held until the
// offer is provisioned or expires; expired offers are rolled back on the
// next mutating call. Mutations take an exclusive lock, lookups a shared one.
class ProvisioningService {
 public:
  // Fresh network: every candidate lightpath is a usable virtual link and
  // nothing is lit.
  static std::unique_ptr<ProvisioningService> Fresh(FiberGraph topology, Catalog catalog,
                                                    ServiceOptions options = {},
                                                    ServiceClock clock = {});
  // Network state taken over from a plan: its virtual topology and lit
  // lightpaths. Demands of the plan are not records of the service.
  static std::unique_ptr<ProvisioningService> FromPlan(FiberGraph topology, Catalog catalog,
                                                       const Plan& plan,
                                                       ServiceOptions options = {},
                                                       ServiceClock clock = {});
  // Designed but unlit virtual topology.
  static std::unique_ptr<ProvisioningService> FromVirtualTopology(
      FiberGraph topology, Catalog catalog, ClpGraph clp, std::vector<VirtualLink> links,
      ServiceOptions options = {}, ServiceClock clock = {});

  std::vector<AbstractLink> AbstractTopology() const;
  QueryResult QueryPath(const PathRequest& request);
  // Repeating the call for the same offer returns the same record.
  ProvisionRecord Provision(const std::string& offer_id);
  // True when this call released the record, false when it was already
  // released.
  bool Release(const std::string& record_id);

  std::optional<ProvisionRecord> GetRecord(const std::string& record_id) const;
  std::vector<ProvisionRecord> Records() const;

  // Ledger views (tentative offers included).
  std::vector<Lightpath> Lightpaths() const;
  SpectrumState Spectrum() const;
  std::vector<VirtualLink> VirtualLinks() const;
  std::size_t PendingOfferCount() const;

  // Records and the committed ledger; pending offers are not saved.
  nlohmann::json Snapshot() const;
  static std::unique_ptr<ProvisioningService> Restore(FiberGraph topology, Catalog catalog,
                                                      const nlohmann::json& snapshot,
                                                      ServiceOptions options = {},
                                                      ServiceClock clock = {});

  const ClpGraph& candidates() const { return *clp_; }
  const FiberGraph& topology() const { return *topology_; }

 private:
  ProvisioningService(FiberGraph topology, Catalog catalog, ClpGraph clp,
                      std::vector<VirtualLink> links, SpectrumState spectrum,
                      ServiceOptions options, ServiceClock clock);

  struct PendingOffer {
    PathOffer offer;
    Placement placement;
  };
  struct StoredRecord {
    ProvisionRecord record;
    Placement placement;
  };

  void ExpireOffers();
  std::vector<OfferHop> DescribeHops(const Placement& placement) const;
  Allocator CommittedLedger() const;

  std::unique_ptr<const FiberGraph> topology_;
  std::unique_ptr<const Catalog> catalog_;
  std::unique_ptr<const ClpGraph> clp_;
  ServiceOptions options_;
  ServiceClock clock_;
  std::unique_ptr<Allocator> ledger_;

  mutable std::shared_mutex mu_;
  std::map<std::string, PendingOffer> offers_;
  std::set<std::string> expired_offers_;
  std::map<std::string, std::string> offer_to_record_;
  std::map<std::string, StoredRecord> records_;
  int next_offer_ = 1;
  int next_record_ = 1;
};

nlohmann::json ToJson(const AbstractLink& link);
nlohmann::json ToJson(const PathOffer& offer,
                      std::chrono::steady_clock::time_point now);
nlohmann::json ToJson(const ProvisionRecord& record);
// ServiceError(kBadRequest) for malformed input.
PathRequest ParsePathRequest(const nlohmann::json& j);

std::string_view ToString(RecordStatus s);

}  // namespace mlplan

#endif  // MLPLAN_SERVICE_H_
