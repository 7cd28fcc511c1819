#include "mlplan/service.h"

#include <algorithm>
#include <mutex>

#include "mlplan/grooming.h"
#include "mlplan/plan_io.h"

namespace mlplan {

using nlohmann::json;

namespace {

SpectrumState RebuildSpectrum(const FiberGraph& topology, const GridSpec& grid,
                              const ServiceOptions& options, int max_fibers,
                              const std::map<std::string, int>& fiber_instances,
                              const std::vector<Lightpath>& lightpaths) {
  SpectrumState s(topology, grid, options.overbuild, max_fibers);
  if (options.overbuild) {
    for (const auto& [link, count] : fiber_instances) {
      if (!topology.LinkIndex(link)) throw ParseError("unknown link " + link);
      while (s.InstanceCount(link) < count) s.Overbuild(link);
    }
  }
  for (const Lightpath& lp : lightpaths) {
    s.Occupy(lp.spectrum);
    if (lp.protection_spectrum) s.Occupy(*lp.protection_spectrum);
  }
  return s;
}

int NextLightpathNumber(const std::vector<Lightpath>& lightpaths) {
  int next = 1;
  for (const Lightpath& lp : lightpaths) {
    if (lp.id.rfind("lp-", 0) != 0) continue;
    try {
      next = std::max(next, std::stoi(lp.id.substr(3)) + 1);
    } catch (const std::exception&) {
    }
  }
  return next;
}

bool IdLess(const std::string& x, const std::string& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

json HopToJson(const OfferHop& h) {
  json j = {{"virtual_link_id", h.virtual_link_id},
            {"clp_id", h.clp_id},
            {"mode_id", h.mode_id},
            {"lightpath_id", h.lightpath_id},
            {"new_lightpath", h.new_lightpath},
            {"spectrum", h.spectrum}};
  if (h.protection_spectrum) j["protection_spectrum"] = *h.protection_spectrum;
  return j;
}

OfferHop HopFromJson(const json& j) {
  OfferHop h;
  j.at("virtual_link_id").get_to(h.virtual_link_id);
  j.at("clp_id").get_to(h.clp_id);
  j.at("mode_id").get_to(h.mode_id);
  j.at("lightpath_id").get_to(h.lightpath_id);
  j.at("new_lightpath").get_to(h.new_lightpath);
  j.at("spectrum").get_to(h.spectrum);
  if (j.contains("protection_spectrum")) {
    h.protection_spectrum = j.at("protection_spectrum").get<SpectrumAssignment>();
  }
  return h;
}

json RequestToJson(const PathRequest& r) {
  json j = {{"src", r.src},
            {"dst", r.dst},
            {"bitrate_gbps", r.bitrate_gbps},
            {"protection", ToString(r.protection)}};
  if (r.explicit_route) j["explicit_route"] = *r.explicit_route;
  return j;
}

Placement ToPlacement(const ProvisionRecord& r) {
  Placement p{r.offer_id, r.request.bitrate_gbps,
              r.request.protection == ProtectionClass::kOpticalProtection ||
                  r.request.protection == ProtectionClass::kProtectionAndRestoration,
              {}};
  for (const OfferHop& h : r.hops) p.hops.push_back({h.virtual_link_id, h.lightpath_id, h.new_lightpath});
  return p;
}

}  // namespace

std::string_view ToString(RecordStatus s) {
  return s == RecordStatus::kActive ? "active" : "released";
}

ProvisioningService::ProvisioningService(FiberGraph topology, Catalog catalog, ClpGraph clp,
                                         std::vector<VirtualLink> links, SpectrumState spectrum,
                                         ServiceOptions options, ServiceClock clock)
    : topology_(std::make_unique<const FiberGraph>(std::move(topology))),
      catalog_(std::make_unique<const Catalog>(std::move(catalog))),
      clp_(std::make_unique<const ClpGraph>(std::move(clp))),
      options_(options),
      clock_(clock ? std::move(clock) : ServiceClock([] { return std::chrono::steady_clock::now(); })) {
  ledger_ = std::make_unique<Allocator>(*topology_, *clp_, std::move(links), *catalog_,
                                        std::move(spectrum), options_.policy);
}

std::unique_ptr<ProvisioningService> ProvisioningService::Fresh(FiberGraph topology,
                                                                Catalog catalog,
                                                                ServiceOptions options,
                                                                ServiceClock clock) {
  ClpGraph clp = BuildClpGraph(topology, catalog);
  std::vector<VirtualLink> links;
  for (const CandidateLightpath& c : clp.edges()) links.push_back(MakeVirtualLink(c, catalog));
  SpectrumState spectrum(topology, catalog.grid, options.overbuild, catalog.max_fibers_per_link);
  return std::unique_ptr<ProvisioningService>(
      new ProvisioningService(std::move(topology), std::move(catalog), std::move(clp),
                              std::move(links), std::move(spectrum), options, std::move(clock)));
}

std::unique_ptr<ProvisioningService> ProvisioningService::FromVirtualTopology(
    FiberGraph topology, Catalog catalog, ClpGraph clp, std::vector<VirtualLink> links,
    ServiceOptions options, ServiceClock clock) {
  for (VirtualLink& vl : links) {
    vl.lightpaths.clear();
    vl.allocated_gbps = 0;
  }
  SpectrumState spectrum(topology, catalog.grid, options.overbuild, catalog.max_fibers_per_link);
  return std::unique_ptr<ProvisioningService>(
      new ProvisioningService(std::move(topology), std::move(catalog), std::move(clp),
                              std::move(links), std::move(spectrum), options, std::move(clock)));
}

std::unique_ptr<ProvisioningService> ProvisioningService::FromPlan(FiberGraph topology,
                                                                   Catalog catalog,
                                                                   const Plan& plan,
                                                                   ServiceOptions options,
                                                                   ServiceClock clock) {
  catalog.grid = plan.grid;
  ClpGraph clp = BuildClpGraph(topology, catalog);
  for (const VirtualLink& vl : plan.virtual_topology) {
    if (!clp.Find(vl.clp_id)) {
      throw ValidationError("plan does not match the topology and catalog",
                            {"virtual link " + vl.id + ": unknown candidate " + vl.clp_id});
    }
  }
  SpectrumState spectrum = RebuildSpectrum(topology, plan.grid, options,
                                           catalog.max_fibers_per_link, plan.fiber_instances,
                                           plan.lightpaths);
  auto svc = std::unique_ptr<ProvisioningService>(new ProvisioningService(
      std::move(topology), std::move(catalog), std::move(clp), plan.virtual_topology, spectrum,
      options, std::move(clock)));
  svc->ledger_->Restore(plan.virtual_topology, plan.lightpaths, std::move(spectrum),
                        NextLightpathNumber(plan.lightpaths));
  return svc;
}

void ProvisioningService::ExpireOffers() {
  const auto now = clock_();
  for (auto it = offers_.begin(); it != offers_.end();) {
    if (now >= it->second.offer.expires_at) {
      ledger_->Unplace(it->second.placement);
      expired_offers_.insert(it->first);
      it = offers_.erase(it);
    } else {
      ++it;
    }
  }
}

std::vector<OfferHop> ProvisioningService::DescribeHops(const Placement& placement) const {
  std::vector<OfferHop> hops;
  for (const Hop& h : placement.hops) {
    const VirtualLink* vl = ledger_->FindVirtualLink(h.virtual_link_id);
    const Lightpath* lp = ledger_->FindLightpath(h.lightpath_id);
    OfferHop o;
    o.virtual_link_id = h.virtual_link_id;
    o.clp_id = vl->clp_id;
    o.mode_id = lp->mode_id;
    o.lightpath_id = h.lightpath_id;
    o.new_lightpath = h.new_lightpath;
    o.spectrum = lp->spectrum;
    o.protection_spectrum = lp->protection_spectrum;
    hops.push_back(std::move(o));
  }
  return hops;
}

std::vector<AbstractLink> ProvisioningService::AbstractTopology() const {
  std::shared_lock lock(mu_);
  std::map<std::string, const VirtualLink*> by_clp;
  for (const VirtualLink& vl : ledger_->virtual_links()) by_clp.emplace(vl.clp_id, &vl);

  std::vector<AbstractLink> out;
  for (const CandidateLightpath& c : clp_->edges()) {
    AbstractLink al;
    al.clp_id = c.id;
    al.a = c.a;
    al.b = c.b;
    al.length_km = c.length_km;
    if (options_.expose_routes) al.route = c.route;
    for (const ModeOption& m : c.feasible_modes) {
      const TransponderMode& mode = catalog_->Mode(m.mode_id);
      al.modes.push_back({mode.id, mode.line_rate_gbps, mode.slot_width_ghz});
    }
    const TransponderMode* mode = &BestMode(c, *catalog_);
    auto vit = by_clp.find(c.id);
    if (vit != by_clp.end()) {
      mode = &catalog_->Mode(vit->second->selected_mode);
      for (const std::string& id : vit->second->lightpaths) {
        const Lightpath* lp = ledger_->FindLightpath(id);
        al.residual_gbps += std::max(0.0, lp->line_rate_gbps - lp->allocated_gbps);
      }
    }
    if (auto width = ledger_->spectrum().grid().WidthFor(*mode)) {
      SpectrumState probe = ledger_->spectrum();
      int more = 0;
      while (probe.Assign(c.route, *width, SpectrumPolicy::kFirstFit)) ++more;
      al.residual_gbps += more * mode->line_rate_gbps;
    }
    out.push_back(std::move(al));
  }
  return out;
}

QueryResult ProvisioningService::QueryPath(const PathRequest& request) {
  if (!topology_->NodeIndex(request.src) || !topology_->NodeIndex(request.dst)) {
    throw ServiceError(kBadRequest, "unknown node in request");
  }
  if (request.src == request.dst) throw ServiceError(kBadRequest, "src equals dst");
  if (!(request.bitrate_gbps > 0)) throw ServiceError(kBadRequest, "bitrate must be positive");
  if (request.explicit_route) {
    const auto& r = *request.explicit_route;
    if (r.size() < 2 || r.front() != request.src || r.back() != request.dst) {
      throw ServiceError(kBadRequest, "explicit route must run from src to dst");
    }
  }

  std::unique_lock lock(mu_);
  ExpireOffers();
  const std::string offer_id = "offer-" + std::to_string(next_offer_++);
  Demand d;
  d.id = offer_id;
  d.src = request.src;
  d.dst = request.dst;
  d.bitrate_gbps = request.bitrate_gbps;
  d.protection = request.protection;
  d.explicit_route = request.explicit_route;

  QueryResult result;
  PlaceResult placed = ledger_->Place(d);
  if (!placed.placement) {
    result.reason = placed.reason;
    return result;
  }
  PathOffer offer{offer_id, request, DescribeHops(*placed.placement), clock_() + options_.offer_ttl};
  offers_.emplace(offer_id, PendingOffer{offer, std::move(*placed.placement)});
  result.offer = std::move(offer);
  return result;
}

ProvisionRecord ProvisioningService::Provision(const std::string& offer_id) {
  std::unique_lock lock(mu_);
  if (auto it = offer_to_record_.find(offer_id); it != offer_to_record_.end()) {
    return records_.at(it->second).record;
  }
  ExpireOffers();
  if (expired_offers_.count(offer_id)) throw ServiceError(kOfferExpired, kOfferExpired);
  auto it = offers_.find(offer_id);
  if (it == offers_.end()) throw ServiceError(kUnknownOffer, kUnknownOffer + (": " + offer_id));

  ProvisionRecord rec;
  rec.record_id = "prov-" + std::to_string(next_record_++);
  rec.offer_id = offer_id;
  rec.request = it->second.offer.request;
  rec.hops = it->second.offer.hops;
  rec.status = RecordStatus::kActive;
  records_.emplace(rec.record_id, StoredRecord{rec, std::move(it->second.placement)});
  offer_to_record_.emplace(offer_id, rec.record_id);
  offers_.erase(it);
  return rec;
}

bool ProvisioningService::Release(const std::string& record_id) {
  std::unique_lock lock(mu_);
  ExpireOffers();
  auto it = records_.find(record_id);
  if (it == records_.end()) throw ServiceError(kUnknownRecord, kUnknownRecord + (": " + record_id));
  if (it->second.record.status == RecordStatus::kReleased) return false;
  ledger_->Unplace(it->second.placement);
  it->second.record.status = RecordStatus::kReleased;
  return true;
}

std::optional<ProvisionRecord> ProvisioningService::GetRecord(const std::string& record_id) const {
  std::shared_lock lock(mu_);
  auto it = records_.find(record_id);
  if (it == records_.end()) return std::nullopt;
  return it->second.record;
}

std::vector<ProvisionRecord> ProvisioningService::Records() const {
  std::shared_lock lock(mu_);
  std::vector<ProvisionRecord> out;
  for (const auto& [id, stored] : records_) out.push_back(stored.record);
  std::sort(out.begin(), out.end(), [](const ProvisionRecord& x, const ProvisionRecord& y) {
    return IdLess(x.record_id, y.record_id);
  });
  return out;
}

std::vector<Lightpath> ProvisioningService::Lightpaths() const {
  std::shared_lock lock(mu_);
  return ledger_->lightpaths();
}

SpectrumState ProvisioningService::Spectrum() const {
  std::shared_lock lock(mu_);
  return ledger_->spectrum();
}

std::vector<VirtualLink> ProvisioningService::VirtualLinks() const {
  std::shared_lock lock(mu_);
  return ledger_->virtual_links();
}

std::size_t ProvisioningService::PendingOfferCount() const {
  std::shared_lock lock(mu_);
  return offers_.size();
}

Allocator ProvisioningService::CommittedLedger() const {
  Allocator copy = *ledger_;
  for (const auto& [id, pending] : offers_) copy.Unplace(pending.placement);
  return copy;
}

json ProvisioningService::Snapshot() const {
  std::shared_lock lock(mu_);
  const Allocator committed = CommittedLedger();
  std::map<std::string, int> instances;
  for (const FiberLink& l : topology_->links()) {
    instances[l.id] = committed.spectrum().InstanceCount(l.id);
  }
  json records = json::array();
  for (const auto& [id, stored] : records_) {
    json r = ToJson(stored.record);
    records.push_back(std::move(r));
  }
  return {{"grid", committed.spectrum().grid()},
          {"virtual_topology", committed.virtual_links()},
          {"lightpaths", committed.lightpaths()},
          {"fiber_instances", instances},
          {"next_lightpath", committed.next_lightpath()},
          {"next_offer", next_offer_},
          {"next_record", next_record_},
          {"records", records}};
}

std::unique_ptr<ProvisioningService> ProvisioningService::Restore(FiberGraph topology,
                                                                  Catalog catalog,
                                                                  const json& snapshot,
                                                                  ServiceOptions options,
                                                                  ServiceClock clock) {
  try {
    catalog.grid = snapshot.at("grid").get<GridSpec>();
    ClpGraph clp = BuildClpGraph(topology, catalog);
    auto links = snapshot.at("virtual_topology").get<std::vector<VirtualLink>>();
    auto lightpaths = snapshot.at("lightpaths").get<std::vector<Lightpath>>();
    auto instances = snapshot.at("fiber_instances").get<std::map<std::string, int>>();
    for (const VirtualLink& vl : links) {
      if (!clp.Find(vl.clp_id)) throw ParseError("snapshot: unknown candidate " + vl.clp_id);
    }
    SpectrumState spectrum = RebuildSpectrum(topology, catalog.grid, options,
                                             catalog.max_fibers_per_link, instances, lightpaths);
    auto svc = std::unique_ptr<ProvisioningService>(new ProvisioningService(
        std::move(topology), std::move(catalog), std::move(clp), links, spectrum, options,
        std::move(clock)));
    svc->ledger_->Restore(std::move(links), std::move(lightpaths), std::move(spectrum),
                          snapshot.at("next_lightpath").get<int>());
    svc->next_offer_ = snapshot.at("next_offer").get<int>();
    svc->next_record_ = snapshot.at("next_record").get<int>();
    for (const json& r : snapshot.at("records")) {
      ProvisionRecord rec;
      r.at("record_id").get_to(rec.record_id);
      r.at("offer_id").get_to(rec.offer_id);
      rec.request = ParsePathRequest(r.at("request"));
      for (const json& h : r.at("hops")) rec.hops.push_back(HopFromJson(h));
      rec.status = r.at("status").get<std::string>() == "active" ? RecordStatus::kActive
                                                                 : RecordStatus::kReleased;
      // Restored placements reference existing lightpaths, none are new.
      Placement p = ToPlacement(rec);
      const std::string id = rec.record_id;
      svc->offer_to_record_.emplace(rec.offer_id, id);
      svc->records_.emplace(id, StoredRecord{std::move(rec), std::move(p)});
    }
    return svc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("snapshot: ") + e.what());
  } catch (const ServiceError& e) {
    throw ParseError(std::string("snapshot: ") + e.what());
  }
}

json ToJson(const AbstractLink& l) {
  json modes = json::array();
  for (const ModeSummary& m : l.modes) {
    modes.push_back({{"mode_id", m.mode_id},
                     {"line_rate_gbps", m.line_rate_gbps},
                     {"slot_width_ghz", m.slot_width_ghz}});
  }
  json j = {{"clp_id", l.clp_id},
            {"a", l.a},
            {"b", l.b},
            {"modes", modes},
            {"residual_gbps", l.residual_gbps},
            {"length_km", l.length_km}};
  if (l.route) j["route"] = *l.route;
  return j;
}

json ToJson(const PathOffer& o, std::chrono::steady_clock::time_point now) {
  json hops = json::array();
  for (const OfferHop& h : o.hops) hops.push_back(HopToJson(h));
  const double ttl = std::chrono::duration<double>(o.expires_at - now).count();
  return {{"offer_id", o.offer_id},
          {"request", RequestToJson(o.request)},
          {"hops", hops},
          {"expires_in_s", std::max(0.0, ttl)}};
}

json ToJson(const ProvisionRecord& r) {
  json hops = json::array();
  for (const OfferHop& h : r.hops) hops.push_back(HopToJson(h));
  return {{"record_id", r.record_id},
          {"offer_id", r.offer_id},
          {"request", RequestToJson(r.request)},
          {"hops", hops},
          {"status", ToString(r.status)}};
}

PathRequest ParsePathRequest(const json& j) {
  try {
    PathRequest r;
    j.at("src").get_to(r.src);
    j.at("dst").get_to(r.dst);
    j.at("bitrate_gbps").get_to(r.bitrate_gbps);
    if (j.contains("protection")) {
      const std::string p = j.at("protection").get<std::string>();
      auto pc = ParseProtectionClass(p);
      if (!pc) throw ServiceError(kBadRequest, "unknown protection class " + p);
      r.protection = *pc;
    }
    if (j.contains("explicit_route")) {
      r.explicit_route = j.at("explicit_route").get<std::vector<std::string>>();
    }
    return r;
  } catch (const json::exception& e) {
    throw ServiceError(kBadRequest, e.what());
  }
}

}  // namespace mlplan
