#ifndef MLPLAN_PLAN_IO_H_
#define MLPLAN_PLAN_IO_H_

#include <string>

#include <json.hpp>

#include "mlplan/model.h"

namespace mlplan {

// JSON forms of the plan-side model types. Keys come out sorted, so dumping
// the same value twice gives the same bytes. Fixed-grid assignments are
// written as a channel index, flex-grid ones as a half-open slot range.
void to_json(nlohmann::json& j, const GridSpec& v);
void from_json(const nlohmann::json& j, GridSpec& v);
void to_json(nlohmann::json& j, const SpectrumAssignment& v);
void from_json(const nlohmann::json& j, SpectrumAssignment& v);
void to_json(nlohmann::json& j, const Lightpath& v);
void from_json(const nlohmann::json& j, Lightpath& v);
void to_json(nlohmann::json& j, const VirtualLink& v);
void from_json(const nlohmann::json& j, VirtualLink& v);
void to_json(nlohmann::json& j, const BomItem& v);
void from_json(const nlohmann::json& j, BomItem& v);
void to_json(nlohmann::json& j, const BillOfMaterial& v);
void from_json(const nlohmann::json& j, BillOfMaterial& v);
void to_json(nlohmann::json& j, const PlanMetrics& v);
void from_json(const nlohmann::json& j, PlanMetrics& v);
void to_json(nlohmann::json& j, const UnservedDemand& v);
void from_json(const nlohmann::json& j, UnservedDemand& v);
void to_json(nlohmann::json& j, const PathMetrics& v);
void from_json(const nlohmann::json& j, PathMetrics& v);
void to_json(nlohmann::json& j, const RouteKind& v);
void from_json(const nlohmann::json& j, RouteKind& v);
void to_json(nlohmann::json& j, const CandidateLightpath& v);
void from_json(const nlohmann::json& j, CandidateLightpath& v);

nlohmann::json PlanToJson(const Plan& plan);
// ParseError on missing or mistyped fields.
Plan ParsePlan(const nlohmann::json& doc);
Plan LoadPlan(const std::string& path);

// Two-space indented dump with a trailing newline.
std::string DumpJson(const nlohmann::json& doc);
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace mlplan

#endif  // MLPLAN_PLAN_IO_H_
