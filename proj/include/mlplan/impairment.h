#ifndef MLPLAN_IMPAIRMENT_H_
#define MLPLAN_IMPAIRMENT_H_

#include <string>
#include <vector>

#include "mlplan/catalog.h"
#include "mlplan/model.h"
#include "mlplan/paths.h"

namespace mlplan {

enum class BindingConstraint { kNone, kReach, kOsnr };

struct FeasibilityVerdict {
  std::string mode_id;
  bool feasible = false;
  PathMetrics metrics;
  BindingConstraint binding_constraint = BindingConstraint::kNone;
};

// OSNR of one amplified span in dB.
double SpanOsnrDb(const Span& span, const OsnrModel& model);

// Cascades per-span noise: OSNR = -10 log10(sum 10^(-OSNR_i / 10)).
double CascadeOsnrDb(const std::vector<double>& span_osnr_db);

// Length, span count, pass-through count and end-to-end OSNR of a route.
// effective_required_osnr_db is left at 0; it depends on the mode.
PathMetrics ComputePathMetrics(const FiberPath& route, const FiberGraph& graph,
                               const OsnrModel& model);

// Feasible iff the route is within reach and its OSNR covers the mode's
// requirement plus pass-through penalties and every margin. Reach is
// checked first.
FeasibilityVerdict EvaluateMode(const PathMetrics& metrics, const TransponderMode& mode,
                                const MarginStack& margins);

// Modes of the catalog that are feasible on the route (and can be carried on
// the catalog grid), in catalog order.
std::vector<ModeOption> FilterModes(const FiberPath& route, const FiberGraph& graph,
                                    const Catalog& catalog);

}  // namespace mlplan

#endif  // MLPLAN_IMPAIRMENT_H_
