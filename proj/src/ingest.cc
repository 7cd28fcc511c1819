#include "mlplan/ingest.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace mlplan {

using nlohmann::json;

namespace {

constexpr double kDefaultSpanKm = 80.0;
constexpr double kDefaultLossDbPerKm = 0.25;

[[noreturn]] void Fail(const std::string& locus, const std::string& what) {
  throw ParseError(locus + ": " + what);
}

const json& Require(const json& obj, const char* field, const std::string& locus) {
  if (!obj.is_object()) Fail(locus, "expected an object");
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) Fail(locus, std::string("missing field ") + field);
  return *it;
}

double GetNumber(const json& obj, const char* field, const std::string& locus) {
  const json& v = Require(obj, field, locus);
  if (!v.is_number()) Fail(locus, std::string("field ") + field + " must be a number");
  return v.get<double>();
}

double GetNumberOr(const json& obj, const char* field, double fallback,
                   const std::string& locus) {
  if (!obj.contains(field) || obj.at(field).is_null()) return fallback;
  return GetNumber(obj, field, locus);
}

int GetIntOr(const json& obj, const char* field, int fallback, const std::string& locus) {
  if (!obj.contains(field) || obj.at(field).is_null()) return fallback;
  const json& v = obj.at(field);
  if (!v.is_number_integer()) Fail(locus, std::string("field ") + field + " must be an integer");
  return v.get<int>();
}

bool GetBoolOr(const json& obj, const char* field, bool fallback, const std::string& locus) {
  if (!obj.contains(field) || obj.at(field).is_null()) return fallback;
  const json& v = obj.at(field);
  if (!v.is_boolean()) Fail(locus, std::string("field ") + field + " must be a boolean");
  return v.get<bool>();
}

std::string GetString(const json& obj, const char* field, const std::string& locus) {
  const json& v = Require(obj, field, locus);
  if (!v.is_string()) Fail(locus, std::string("field ") + field + " must be a string");
  return v.get<std::string>();
}

std::string GetStringOr(const json& obj, const char* field, const std::string& fallback,
                        const std::string& locus) {
  if (!obj.contains(field) || obj.at(field).is_null()) return fallback;
  return GetString(obj, field, locus);
}

const json& RequireArray(const json& doc, const char* field, const std::string& locus) {
  const json& v = Require(doc, field, locus);
  if (!v.is_array()) Fail(locus, std::string("field ") + field + " must be an array");
  return v;
}

std::string Locus(const char* collection, std::size_t i, const json& item) {
  std::string s = std::string(collection) + "[" + std::to_string(i) + "]";
  if (item.is_object() && item.contains("id") && item.at("id").is_string()) {
    s += " (id " + item.at("id").get<std::string>() + ")";
  }
  return s;
}

}  // namespace

std::string RoadmDegreeCostKey(RoadmClass c) {
  return "roadm_degree_" + std::string(ToString(c));
}

const TransponderMode* Catalog::FindMode(std::string_view id) const {
  for (const TransponderMode& m : transponder_modes) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

const TransponderMode& Catalog::Mode(std::string_view id) const {
  const TransponderMode* m = FindMode(id);
  if (m == nullptr) throw Error("unknown transponder mode " + std::string(id));
  return *m;
}

CostEntry Catalog::Cost(std::string_view kind) const {
  auto it = cost_table.find(std::string(kind));
  return it == cost_table.end() ? CostEntry{} : it->second;
}

std::string_view ToString(Disjointness v) { return v == Disjointness::kNode ? "node" : "link"; }
std::string_view ToString(AdminWeight v) {
  return v == AdminWeight::kHops ? "hops" : "length_km";
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<Span> DefaultSpans(double length_km) {
  std::vector<Span> spans;
  if (!(length_km > 0)) return spans;
  int n = static_cast<int>(std::ceil(length_km / kDefaultSpanKm - 1e-9));
  n = std::max(n, 1);
  const double each = length_km / n;
  spans.assign(n, Span{each, each * kDefaultLossDbPerKm});
  return spans;
}

FiberGraph ParseTopology(const json& doc) {
  std::vector<NodeSite> nodes;
  const json& jnodes = RequireArray(doc, "nodes", "topology");
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const json& jn = jnodes[i];
    const std::string locus = Locus("nodes", i, jn);
    NodeSite n;
    n.id = GetString(jn, "id", locus);
    n.name = GetStringOr(jn, "name", n.id, locus);
    const std::string cls = GetStringOr(jn, "roadm_class", "fixed", locus);
    auto parsed = ParseRoadmClass(cls);
    if (!parsed) Fail(locus, "unknown roadm_class " + cls);
    n.roadm_class = *parsed;
    nodes.push_back(std::move(n));
  }

  std::vector<FiberLink> links;
  const json& jlinks = RequireArray(doc, "links", "topology");
  for (std::size_t i = 0; i < jlinks.size(); ++i) {
    const json& jl = jlinks[i];
    const std::string locus = Locus("links", i, jl);
    FiberLink l;
    l.id = GetString(jl, "id", locus);
    l.a = GetString(jl, "a", locus);
    l.b = GetString(jl, "b", locus);
    l.length_km = GetNumber(jl, "length_km", locus);
    l.fiber_count = GetIntOr(jl, "fiber_count", 1, locus);
    if (jl.contains("spans") && !jl.at("spans").is_null()) {
      const json& js = jl.at("spans");
      if (!js.is_array()) Fail(locus, "field spans must be an array");
      for (std::size_t s = 0; s < js.size(); ++s) {
        const std::string slocus = locus + " spans[" + std::to_string(s) + "]";
        l.spans.push_back({GetNumber(js[s], "length_km", slocus),
                           GetNumber(js[s], "loss_db", slocus)});
      }
    } else {
      l.spans = DefaultSpans(l.length_km);
    }
    links.push_back(std::move(l));
  }

  FiberGraph graph(std::move(nodes), std::move(links));
  std::vector<Diagnostic> diags = ValidateTopology(graph);
  if (!diags.empty()) {
    std::vector<std::string> details;
    for (const Diagnostic& d : diags) details.push_back(d.ToString());
    throw ValidationError("topology: " + diags.front().rule + " (" + diags.front().entity + ")",
                          std::move(details));
  }
  return graph;
}

FiberGraph LoadTopology(const std::string& path) { return ParseTopology(ReadJsonFile(path)); }

std::vector<Demand> ParseDemands(const json& doc, const FiberGraph& topology) {
  std::vector<Demand> out;
  std::set<std::string> ids;
  std::vector<std::string> problems;
  const json& jd = RequireArray(doc, "demands", "demands");
  for (std::size_t i = 0; i < jd.size(); ++i) {
    const json& j = jd[i];
    const std::string locus = Locus("demands", i, j);
    Demand d;
    d.id = GetString(j, "id", locus);
    d.src = GetString(j, "src", locus);
    d.dst = GetString(j, "dst", locus);
    const std::string st = GetString(j, "service_type", locus);
    auto type = ParseServiceType(st);
    if (!type) Fail(locus, "unknown service_type " + st);
    d.service_type = *type;
    const bool has_rate = j.contains("bitrate_gbps") && !j.at("bitrate_gbps").is_null();
    const bool has_count = j.contains("count") && !j.at("count").is_null();
    if (has_rate == has_count) {
      Fail(locus, "exactly one of bitrate_gbps and count must be set");
    }
    if (IsOduService(d.service_type)) {
      if (!has_count) Fail(locus, "odu services carry count, not bitrate_gbps");
      d.count = GetIntOr(j, "count", 0, locus);
      if (*d.count <= 0) Fail(locus, "count must be positive");
    } else {
      if (!has_rate) Fail(locus, "packet services carry bitrate_gbps, not count");
      d.bitrate_gbps = GetNumber(j, "bitrate_gbps", locus);
      if (!(*d.bitrate_gbps > 0)) Fail(locus, "bitrate_gbps must be positive");
    }
    const std::string prot = GetStringOr(j, "protection", "unprotected", locus);
    auto pc = ParseProtectionClass(prot);
    if (!pc) Fail(locus, "unknown protection " + prot);
    d.protection = *pc;
    if (j.contains("explicit_route") && !j.at("explicit_route").is_null()) {
      const json& r = j.at("explicit_route");
      if (!r.is_array()) Fail(locus, "explicit_route must be an array of node ids");
      std::vector<std::string> route;
      for (const json& hop : r) {
        if (!hop.is_string()) Fail(locus, "explicit_route must be an array of node ids");
        route.push_back(hop.get<std::string>());
      }
      d.explicit_route = std::move(route);
    }

    for (const std::string* end : {&d.src, &d.dst}) {
      if (!topology.NodeIndex(*end)) problems.push_back(locus + ": unknown node " + *end);
    }
    if (d.src == d.dst) problems.push_back(locus + ": src equals dst");
    if (!ids.insert(d.id).second) problems.push_back(locus + ": duplicate id");
    if (d.explicit_route) {
      const auto& r = *d.explicit_route;
      if (r.size() < 2 || r.front() != d.src || r.back() != d.dst) {
        problems.push_back(locus + ": explicit_route must start at src and end at dst");
      }
      for (const std::string& hop : r) {
        if (!topology.NodeIndex(hop)) problems.push_back(locus + ": unknown node " + hop);
      }
    }
    out.push_back(std::move(d));
  }
  if (!problems.empty()) {
    const std::string first = problems.front();
    throw ValidationError("demands: " + first, std::move(problems));
  }
  return out;
}

std::vector<Demand> LoadDemands(const std::string& path, const FiberGraph& topology) {
  return ParseDemands(ReadJsonFile(path), topology);
}

Catalog ParseCatalog(const json& doc) {
  Catalog c;
  std::vector<std::string> problems;
  const json& jmodes = RequireArray(doc, "modes", "catalog");
  for (std::size_t i = 0; i < jmodes.size(); ++i) {
    const json& j = jmodes[i];
    const std::string locus = Locus("modes", i, j);
    TransponderMode m;
    m.id = GetString(j, "id", locus);
    m.line_rate_gbps = GetNumber(j, "line_rate_gbps", locus);
    m.modulation = GetStringOr(j, "modulation", "", locus);
    m.slot_width_ghz = GetNumberOr(j, "slot_width_ghz", 0.0, locus);
    m.fixed_channel = GetBoolOr(j, "fixed_channel", false, locus);
    m.required_osnr_db = GetNumber(j, "required_osnr_db", locus);
    m.max_reach_km = GetNumber(j, "max_reach_km", locus);
    m.roadm_passthrough_penalty_db = GetNumberOr(j, "roadm_passthrough_penalty_db", 0.0, locus);
    m.cost_units = GetNumberOr(j, "cost_units", 0.0, locus);
    m.power_w = GetNumberOr(j, "power_w", 0.0, locus);
    if (!(m.line_rate_gbps > 0)) problems.push_back(locus + ": line_rate_gbps must be positive");
    if (!(m.max_reach_km > 0)) problems.push_back(locus + ": max_reach_km must be positive");
    if (m.roadm_passthrough_penalty_db < 0 || m.cost_units < 0 || m.power_w < 0) {
      problems.push_back(locus + ": penalties, costs and power must be non-negative");
    }
    if (m.slot_width_ghz <= 0 && !m.fixed_channel) {
      problems.push_back(locus + ": needs slot_width_ghz or fixed_channel");
    }
    c.transponder_modes.push_back(std::move(m));
  }
  if (c.transponder_modes.empty()) problems.push_back("catalog: no transponder modes");

  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    const std::string kind = GetStringOr(g, "kind", "flex", "grid");
    auto k = ParseGridKind(kind);
    if (!k) Fail("grid", "unknown kind " + kind);
    c.grid.kind = *k;
    c.grid.channel_count = GetIntOr(g, "channel_count", c.grid.channel_count, "grid");
    c.grid.channel_spacing_ghz =
        GetNumberOr(g, "channel_spacing_ghz", c.grid.channel_spacing_ghz, "grid");
    c.grid.slot_granularity_ghz =
        GetNumberOr(g, "slot_granularity_ghz", c.grid.slot_granularity_ghz, "grid");
    c.grid.total_slots = GetIntOr(g, "total_slots", c.grid.total_slots, "grid");
  }
  if (c.grid.channel_count <= 0 || c.grid.total_slots <= 0 ||
      !(c.grid.slot_granularity_ghz > 0)) {
    problems.push_back("grid: channel_count, total_slots and slot_granularity_ghz must be positive");
  }
  for (const TransponderMode& m : c.transponder_modes) {
    if (m.slot_width_ghz > 0 && c.grid.slot_granularity_ghz > 0) {
      const double units = m.slot_width_ghz / c.grid.slot_granularity_ghz;
      if (std::fabs(units - std::round(units)) > 1e-9) {
        problems.push_back("mode " + m.id + ": slot_width_ghz is not a multiple of the slot granularity");
      }
    }
  }

  if (doc.contains("margins")) {
    const json& m = doc.at("margins");
    c.margins.aging_margin_db = GetNumberOr(m, "aging_margin_db", 0, "margins");
    c.margins.span_repair_margin_db = GetNumberOr(m, "span_repair_margin_db", 0, "margins");
    c.margins.operator_margin_db = GetNumberOr(m, "operator_margin_db", 0, "margins");
  }
  if (c.margins.aging_margin_db < 0 || c.margins.span_repair_margin_db < 0 ||
      c.margins.operator_margin_db < 0) {
    problems.push_back("margins: negative margin");
  }

  if (doc.contains("cost_table")) {
    const json& t = doc.at("cost_table");
    if (!t.is_object()) Fail("cost_table", "expected an object");
    for (auto it = t.begin(); it != t.end(); ++it) {
      const std::string locus = "cost_table." + it.key();
      CostEntry e{GetNumberOr(it.value(), "cost_units", 0, locus),
                  GetNumberOr(it.value(), "power_w", 0, locus)};
      if (e.cost_units < 0 || e.power_w < 0) problems.push_back(locus + ": negative cost");
      c.cost_table[it.key()] = e;
    }
  }

  if (doc.contains("planner_params")) {
    const json& p = doc.at("planner_params");
    const std::string locus = "planner_params";
    PlannerParams& pp = c.planner_params;
    pp.k_paths = GetIntOr(p, "k_paths", pp.k_paths, locus);
    pp.k_grooming = GetIntOr(p, "k_grooming", pp.k_grooming, locus);
    pp.grooming_threshold = GetNumberOr(p, "grooming_threshold", pp.grooming_threshold, locus);
    const std::string dj = GetStringOr(p, "disjointness", "link", locus);
    if (dj == "link") {
      pp.disjointness = Disjointness::kLink;
    } else if (dj == "node") {
      pp.disjointness = Disjointness::kNode;
    } else {
      Fail(locus, "unknown disjointness " + dj);
    }
    pp.enable_restoration_precompute = GetBoolOr(p, "enable_restoration_precompute",
                                                 pp.enable_restoration_precompute, locus);
    const std::string aw = GetStringOr(p, "admin_weight", "length_km", locus);
    if (aw == "hops") {
      pp.admin_weight = AdminWeight::kHops;
    } else if (aw == "length_km") {
      pp.admin_weight = AdminWeight::kLengthKm;
    } else {
      Fail(locus, "unknown admin_weight " + aw);
    }
  }
  const PlannerParams& pp = c.planner_params;
  if (!(pp.grooming_threshold > 0 && pp.grooming_threshold <= 1)) {
    problems.push_back("planner_params: grooming_threshold out of range (0,1]");
  }
  if (pp.k_paths < 1 || pp.k_grooming < 1) {
    problems.push_back("planner_params: k_paths and k_grooming must be positive");
  }

  if (doc.contains("impairment")) {
    const json& im = doc.at("impairment");
    c.osnr.reference_db = GetNumberOr(im, "osnr_reference_db", c.osnr.reference_db, "impairment");
    c.osnr.noise_figure_db = GetNumberOr(im, "noise_figure_db", c.osnr.noise_figure_db, "impairment");
  }
  if (doc.contains("equipment")) {
    const json& eq = doc.at("equipment");
    c.slots_per_shelf = GetIntOr(eq, "slots_per_shelf", c.slots_per_shelf, "equipment");
    c.max_fibers_per_link = GetIntOr(eq, "max_fibers_per_link", c.max_fibers_per_link, "equipment");
  }
  if (c.slots_per_shelf < 1) problems.push_back("equipment: slots_per_shelf must be >= 1");
  if (c.max_fibers_per_link < 1) problems.push_back("equipment: max_fibers_per_link must be >= 1");

  if (!problems.empty()) {
    const std::string first = problems.front();
    throw ValidationError(first, std::move(problems));
  }
  return c;
}

Catalog LoadCatalog(const std::string& path) { return ParseCatalog(ReadJsonFile(path)); }

json TopologyToJson(const FiberGraph& topology) {
  json nodes = json::array();
  for (const NodeSite& n : topology.nodes()) {
    nodes.push_back({{"id", n.id}, {"name", n.name}, {"roadm_class", ToString(n.roadm_class)}});
  }
  json links = json::array();
  for (const FiberLink& l : topology.links()) {
    json spans = json::array();
    for (const Span& s : l.spans) spans.push_back({{"length_km", s.length_km}, {"loss_db", s.loss_db}});
    links.push_back({{"id", l.id},
                     {"a", l.a},
                     {"b", l.b},
                     {"length_km", l.length_km},
                     {"spans", spans},
                     {"fiber_count", l.fiber_count}});
  }
  return {{"nodes", nodes}, {"links", links}};
}

json DemandsToJson(const std::vector<Demand>& demands) {
  json arr = json::array();
  for (const Demand& d : demands) {
    json j = {{"id", d.id},
              {"src", d.src},
              {"dst", d.dst},
              {"service_type", ToString(d.service_type)},
              {"protection", ToString(d.protection)}};
    if (d.bitrate_gbps) j["bitrate_gbps"] = *d.bitrate_gbps;
    if (d.count) j["count"] = *d.count;
    if (d.explicit_route) j["explicit_route"] = *d.explicit_route;
    arr.push_back(std::move(j));
  }
  return {{"demands", arr}};
}

json CatalogToJson(const Catalog& c) {
  json modes = json::array();
  for (const TransponderMode& m : c.transponder_modes) {
    modes.push_back({{"id", m.id},
                     {"line_rate_gbps", m.line_rate_gbps},
                     {"modulation", m.modulation},
                     {"slot_width_ghz", m.slot_width_ghz},
                     {"fixed_channel", m.fixed_channel},
                     {"required_osnr_db", m.required_osnr_db},
                     {"max_reach_km", m.max_reach_km},
                     {"roadm_passthrough_penalty_db", m.roadm_passthrough_penalty_db},
                     {"cost_units", m.cost_units},
                     {"power_w", m.power_w}});
  }
  json costs = json::object();
  for (const auto& [k, v] : c.cost_table) {
    costs[k] = {{"cost_units", v.cost_units}, {"power_w", v.power_w}};
  }
  const PlannerParams& p = c.planner_params;
  return {
      {"modes", modes},
      {"grid",
       {{"kind", ToString(c.grid.kind)},
        {"channel_count", c.grid.channel_count},
        {"channel_spacing_ghz", c.grid.channel_spacing_ghz},
        {"slot_granularity_ghz", c.grid.slot_granularity_ghz},
        {"total_slots", c.grid.total_slots}}},
      {"margins",
       {{"aging_margin_db", c.margins.aging_margin_db},
        {"span_repair_margin_db", c.margins.span_repair_margin_db},
        {"operator_margin_db", c.margins.operator_margin_db}}},
      {"cost_table", costs},
      {"planner_params",
       {{"k_paths", p.k_paths},
        {"k_grooming", p.k_grooming},
        {"grooming_threshold", p.grooming_threshold},
        {"disjointness", ToString(p.disjointness)},
        {"enable_restoration_precompute", p.enable_restoration_precompute},
        {"admin_weight", ToString(p.admin_weight)}}},
      {"impairment",
       {{"osnr_reference_db", c.osnr.reference_db}, {"noise_figure_db", c.osnr.noise_figure_db}}},
      {"equipment",
       {{"slots_per_shelf", c.slots_per_shelf}, {"max_fibers_per_link", c.max_fibers_per_link}}},
  };
}

}  // namespace mlplan
