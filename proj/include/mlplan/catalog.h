#ifndef MLPLAN_CATALOG_H_
#define MLPLAN_CATALOG_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlplan/model.h"

namespace mlplan {

enum class Disjointness { kLink, kNode };
enum class AdminWeight { kHops, kLengthKm };

struct PlannerParams {
  int k_paths = 3;
  int k_grooming = 2;
  double grooming_threshold = 0.5;
  Disjointness disjointness = Disjointness::kLink;
  bool enable_restoration_precompute = false;
  AdminWeight admin_weight = AdminWeight::kLengthKm;

  bool operator==(const PlannerParams&) const = default;
};

// Per-span OSNR = reference_db - span_loss_db - noise_figure_db.
struct OsnrModel {
  double reference_db = 58.0;
  double noise_figure_db = 6.0;

  bool operator==(const OsnrModel&) const = default;
};

struct CostEntry {
  double cost_units = 0;
  double power_w = 0;

  bool operator==(const CostEntry&) const = default;
};

// Cost table keys understood by the BOM.
inline constexpr std::string_view kCostAmplifier = "amplifier";
inline constexpr std::string_view kCostFiberKm = "fiber_km";
inline constexpr std::string_view kCostShelf = "shelf";
inline constexpr std::string_view kCostProtectionModule = "protection_module";
std::string RoadmDegreeCostKey(RoadmClass c);

struct Catalog {
  std::vector<TransponderMode> transponder_modes;
  GridSpec grid;
  MarginStack margins;
  std::map<std::string, CostEntry> cost_table;
  PlannerParams planner_params;
  OsnrModel osnr;
  int slots_per_shelf = 12;
  // Upper bound on fiber instances per link once overbuild kicks in.
  int max_fibers_per_link = 8;

  const TransponderMode* FindMode(std::string_view id) const;
  const TransponderMode& Mode(std::string_view id) const;
  CostEntry Cost(std::string_view kind) const;

  bool operator==(const Catalog&) const = default;
};

std::string_view ToString(Disjointness v);
std::string_view ToString(AdminWeight v);

}  // namespace mlplan

#endif  // MLPLAN_CATALOG_H_
