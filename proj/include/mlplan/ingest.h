#ifndef MLPLAN_INGEST_H_
#define MLPLAN_INGEST_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "mlplan/catalog.h"
#include "mlplan/model.h"

namespace mlplan {

// Loaders for the three input documents. All of them throw ParseError for
// malformed content (the message names the offending entity and field) and
// ValidationError when the content parses but breaks an invariant.
//
// Links without spans get ceil(length / 80 km) equal spans at 0.25 dB/km.
FiberGraph LoadTopology(const std::string& path);
std::vector<Demand> LoadDemands(const std::string& path, const FiberGraph& topology);
Catalog LoadCatalog(const std::string& path);

FiberGraph ParseTopology(const nlohmann::json& doc);
std::vector<Demand> ParseDemands(const nlohmann::json& doc, const FiberGraph& topology);
Catalog ParseCatalog(const nlohmann::json& doc);

// Reads a JSON document from disk; ParseError on I/O or syntax failure.
nlohmann::json ReadJsonFile(const std::string& path);

std::vector<Span> DefaultSpans(double length_km);

// Writers producing documents accepted by the matching Parse* function.
nlohmann::json TopologyToJson(const FiberGraph& topology);
nlohmann::json DemandsToJson(const std::vector<Demand>& demands);
nlohmann::json CatalogToJson(const Catalog& catalog);

}  // namespace mlplan

#endif  // MLPLAN_INGEST_H_
