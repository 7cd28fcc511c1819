#include "mlplan/plan_io.h"

#include <fstream>

#include "mlplan/ingest.h"

namespace mlplan {

using nlohmann::json;

namespace {

template <typename T>
void Opt(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) j.at(key).get_to(out);
}

GridKind GridFromString(const std::string& s) {
  auto k = ParseGridKind(s);
  if (!k) throw ParseError("unknown grid kind " + s);
  return *k;
}

}  // namespace

void to_json(json& j, const GridSpec& v) {
  j = {{"kind", ToString(v.kind)},
       {"channel_count", v.channel_count},
       {"channel_spacing_ghz", v.channel_spacing_ghz},
       {"slot_granularity_ghz", v.slot_granularity_ghz},
       {"total_slots", v.total_slots}};
}

void from_json(const json& j, GridSpec& v) {
  v.kind = GridFromString(j.at("kind").get<std::string>());
  Opt(j, "channel_count", v.channel_count);
  Opt(j, "channel_spacing_ghz", v.channel_spacing_ghz);
  Opt(j, "slot_granularity_ghz", v.slot_granularity_ghz);
  Opt(j, "total_slots", v.total_slots);
}

void to_json(json& j, const SpectrumAssignment& v) {
  json links = json::array();
  for (const LinkInstance& li : v.links) {
    links.push_back({{"link", li.link_id}, {"fiber_instance", li.instance}});
  }
  j = {{"grid", ToString(v.grid)}, {"links", links}};
  if (v.grid == GridKind::kFixed) {
    j["channel_index"] = v.lo;
  } else {
    j["slot_range"] = {v.lo, v.hi};
  }
}

void from_json(const json& j, SpectrumAssignment& v) {
  v.grid = GridFromString(j.at("grid").get<std::string>());
  if (v.grid == GridKind::kFixed) {
    v.lo = j.at("channel_index").get<int>();
    v.hi = v.lo + 1;
  } else {
    const json& r = j.at("slot_range");
    if (!r.is_array() || r.size() != 2) throw ParseError("slot_range must be [lo, hi]");
    v.lo = r[0].get<int>();
    v.hi = r[1].get<int>();
  }
  v.links.clear();
  for (const json& li : j.at("links")) {
    v.links.push_back({li.at("link").get<std::string>(), li.at("fiber_instance").get<int>()});
  }
}

void to_json(json& j, const Lightpath& v) {
  j = {{"id", v.id},
       {"virtual_link_id", v.virtual_link_id},
       {"a", v.a},
       {"b", v.b},
       {"mode_id", v.mode_id},
       {"line_rate_gbps", v.line_rate_gbps},
       {"allocated_gbps", v.allocated_gbps},
       {"spectrum", v.spectrum}};
  if (v.protection_spectrum) j["protection_spectrum"] = *v.protection_spectrum;
}

void from_json(const json& j, Lightpath& v) {
  j.at("id").get_to(v.id);
  j.at("virtual_link_id").get_to(v.virtual_link_id);
  Opt(j, "a", v.a);
  Opt(j, "b", v.b);
  j.at("mode_id").get_to(v.mode_id);
  j.at("line_rate_gbps").get_to(v.line_rate_gbps);
  j.at("allocated_gbps").get_to(v.allocated_gbps);
  j.at("spectrum").get_to(v.spectrum);
  v.protection_spectrum.reset();
  if (j.contains("protection_spectrum")) {
    v.protection_spectrum = j.at("protection_spectrum").get<SpectrumAssignment>();
  }
}

void to_json(json& j, const VirtualLink& v) {
  j = {{"id", v.id},
       {"clp_id", v.clp_id},
       {"a", v.a},
       {"b", v.b},
       {"selected_mode", v.selected_mode},
       {"line_rate_gbps", v.line_rate_gbps},
       {"length_km", v.length_km},
       {"fiber_hops", v.fiber_hops},
       {"lightpaths", v.lightpaths},
       {"allocated_gbps", v.allocated_gbps}};
}

void from_json(const json& j, VirtualLink& v) {
  j.at("id").get_to(v.id);
  j.at("clp_id").get_to(v.clp_id);
  j.at("a").get_to(v.a);
  j.at("b").get_to(v.b);
  j.at("selected_mode").get_to(v.selected_mode);
  j.at("line_rate_gbps").get_to(v.line_rate_gbps);
  Opt(j, "length_km", v.length_km);
  Opt(j, "fiber_hops", v.fiber_hops);
  j.at("lightpaths").get_to(v.lightpaths);
  j.at("allocated_gbps").get_to(v.allocated_gbps);
}

void to_json(json& j, const BomItem& v) {
  j = {{"kind", v.kind},
       {"quantity", v.quantity},
       {"unit_cost", v.unit_cost},
       {"total_cost", v.total_cost()},
       {"unit_power", v.unit_power},
       {"total_power", v.total_power()}};
}

void from_json(const json& j, BomItem& v) {
  j.at("kind").get_to(v.kind);
  j.at("quantity").get_to(v.quantity);
  j.at("unit_cost").get_to(v.unit_cost);
  j.at("unit_power").get_to(v.unit_power);
}

void to_json(json& j, const BillOfMaterial& v) {
  j = {{"items", v.items}, {"total_cost", v.total_cost}, {"total_power", v.total_power}};
}

void from_json(const json& j, BillOfMaterial& v) {
  j.at("items").get_to(v.items);
  j.at("total_cost").get_to(v.total_cost);
  j.at("total_power").get_to(v.total_power);
}

void to_json(json& j, const PlanMetrics& v) {
  j = {{"transponder_count", v.transponder_count},
       {"lightpath_count", v.lightpath_count},
       {"protected_lightpath_count", v.protected_lightpath_count},
       {"served_count", v.served_count},
       {"unserved_count", v.unserved_count},
       {"virtual_link_count", v.virtual_link_count},
       {"multi_hop_virtual_link_count", v.multi_hop_virtual_link_count},
       {"total_allocated_gbps", v.total_allocated_gbps},
       {"avg_link_occupancy", v.avg_link_occupancy},
       {"max_link_occupancy", v.max_link_occupancy},
       {"avg_fragmentation", v.avg_fragmentation},
       {"fragmentation_applicable", v.fragmentation_applicable},
       {"restoration_gap_count", v.restoration_gap_count},
       {"overbuilt_fiber_count", v.overbuilt_fiber_count},
       {"cost_units", v.cost_units},
       {"power_w", v.power_w}};
}

void from_json(const json& j, PlanMetrics& v) {
  j.at("transponder_count").get_to(v.transponder_count);
  j.at("lightpath_count").get_to(v.lightpath_count);
  j.at("protected_lightpath_count").get_to(v.protected_lightpath_count);
  j.at("served_count").get_to(v.served_count);
  j.at("unserved_count").get_to(v.unserved_count);
  j.at("virtual_link_count").get_to(v.virtual_link_count);
  j.at("multi_hop_virtual_link_count").get_to(v.multi_hop_virtual_link_count);
  j.at("total_allocated_gbps").get_to(v.total_allocated_gbps);
  j.at("avg_link_occupancy").get_to(v.avg_link_occupancy);
  j.at("max_link_occupancy").get_to(v.max_link_occupancy);
  j.at("avg_fragmentation").get_to(v.avg_fragmentation);
  j.at("fragmentation_applicable").get_to(v.fragmentation_applicable);
  j.at("restoration_gap_count").get_to(v.restoration_gap_count);
  j.at("overbuilt_fiber_count").get_to(v.overbuilt_fiber_count);
  j.at("cost_units").get_to(v.cost_units);
  j.at("power_w").get_to(v.power_w);
}

void to_json(json& j, const UnservedDemand& v) {
  j = {{"demand_id", v.demand_id}, {"reason", v.reason}};
}

void from_json(const json& j, UnservedDemand& v) {
  j.at("demand_id").get_to(v.demand_id);
  j.at("reason").get_to(v.reason);
}

void to_json(json& j, const PathMetrics& v) {
  j = {{"total_length_km", v.total_length_km},
       {"span_count", v.span_count},
       {"roadm_passthrough_count", v.roadm_passthrough_count},
       {"osnr_db", v.osnr_db},
       {"effective_required_osnr_db", v.effective_required_osnr_db}};
}

void from_json(const json& j, PathMetrics& v) {
  j.at("total_length_km").get_to(v.total_length_km);
  j.at("span_count").get_to(v.span_count);
  j.at("roadm_passthrough_count").get_to(v.roadm_passthrough_count);
  j.at("osnr_db").get_to(v.osnr_db);
  j.at("effective_required_osnr_db").get_to(v.effective_required_osnr_db);
}

void to_json(json& j, const RouteKind& v) {
  switch (v.tag) {
    case RouteKind::Tag::kKthShortest:
      j = {{"kind", "kth_shortest"}, {"k", v.k}};
      break;
    case RouteKind::Tag::kDisjointMember:
      j = {{"kind", "disjoint_protection_pair_member"}};
      break;
    case RouteKind::Tag::kRestoration:
      j = {{"kind", "restoration"}, {"failed_link_id", v.failed_link}};
      break;
    case RouteKind::Tag::kDirectLink:
      j = {{"kind", "direct_link"}};
      break;
  }
}

void from_json(const json& j, RouteKind& v) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "kth_shortest") {
    v = RouteKind::KthShortest(j.at("k").get<int>());
  } else if (kind == "disjoint_protection_pair_member") {
    v = RouteKind::DisjointMember();
  } else if (kind == "restoration") {
    v = RouteKind::Restoration(j.at("failed_link_id").get<std::string>());
  } else if (kind == "direct_link") {
    v = RouteKind::DirectLink();
  } else {
    throw ParseError("unknown route kind " + kind);
  }
}

void to_json(json& j, const CandidateLightpath& v) {
  json modes = json::array();
  for (const ModeOption& m : v.feasible_modes) {
    modes.push_back({{"mode_id", m.mode_id}, {"metrics", m.metrics}});
  }
  j = {{"id", v.id},
       {"a", v.a},
       {"b", v.b},
       {"route", v.route},
       {"nodes", v.nodes},
       {"length_km", v.length_km},
       {"kinds", v.kinds},
       {"feasible_modes", modes}};
  if (v.partner_id) j["partner_id"] = *v.partner_id;
}

void from_json(const json& j, CandidateLightpath& v) {
  j.at("id").get_to(v.id);
  j.at("a").get_to(v.a);
  j.at("b").get_to(v.b);
  j.at("route").get_to(v.route);
  j.at("nodes").get_to(v.nodes);
  j.at("length_km").get_to(v.length_km);
  j.at("kinds").get_to(v.kinds);
  v.feasible_modes.clear();
  for (const json& m : j.at("feasible_modes")) {
    v.feasible_modes.push_back({m.at("mode_id").get<std::string>(), m.at("metrics").get<PathMetrics>()});
  }
  v.partner_id.reset();
  if (j.contains("partner_id")) v.partner_id = j.at("partner_id").get<std::string>();
}

json PlanToJson(const Plan& plan) {
  return {{"grid", plan.grid},
          {"virtual_topology", plan.virtual_topology},
          {"demand_routes", plan.demand_routes},
          {"lightpaths", plan.lightpaths},
          {"fiber_instances", plan.fiber_instances},
          {"bom", plan.bom},
          {"metrics", plan.metrics},
          {"unserved", plan.unserved}};
}

Plan ParsePlan(const json& doc) {
  try {
    Plan p;
    doc.at("grid").get_to(p.grid);
    doc.at("virtual_topology").get_to(p.virtual_topology);
    doc.at("demand_routes").get_to(p.demand_routes);
    doc.at("lightpaths").get_to(p.lightpaths);
    Opt(doc, "fiber_instances", p.fiber_instances);
    doc.at("bom").get_to(p.bom);
    doc.at("metrics").get_to(p.metrics);
    doc.at("unserved").get_to(p.unserved);
    return p;
  } catch (const json::exception& e) {
    throw ParseError(std::string("plan: ") + e.what());
  }
}

Plan LoadPlan(const std::string& path) { return ParsePlan(ReadJsonFile(path)); }

std::string DumpJson(const json& doc) { return doc.dump(2) + "\n"; }

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace mlplan
