#include "mlplan/impairment.h"

#include <cmath>

namespace mlplan {

double SpanOsnrDb(const Span& span, const OsnrModel& model) {
  return model.reference_db - span.loss_db - model.noise_figure_db;
}

double CascadeOsnrDb(const std::vector<double>& span_osnr_db) {
  double noise = 0;
  for (double osnr : span_osnr_db) noise += std::pow(10.0, -osnr / 10.0);
  return -10.0 * std::log10(noise);
}

PathMetrics ComputePathMetrics(const FiberPath& route, const FiberGraph& graph,
                               const OsnrModel& model) {
  PathMetrics m;
  std::vector<double> per_span;
  for (const std::string& id : route.links) {
    const FiberLink& link = graph.LinkById(id);
    m.total_length_km += link.length_km;
    for (const Span& s : link.spans) per_span.push_back(SpanOsnrDb(s, model));
  }
  m.span_count = static_cast<int>(per_span.size());
  m.roadm_passthrough_count = std::max(0, static_cast<int>(route.nodes.size()) - 2);
  m.osnr_db = CascadeOsnrDb(per_span);
  return m;
}

FeasibilityVerdict EvaluateMode(const PathMetrics& metrics, const TransponderMode& mode,
                                const MarginStack& margins) {
  FeasibilityVerdict v;
  v.mode_id = mode.id;
  v.metrics = metrics;
  v.metrics.effective_required_osnr_db =
      mode.required_osnr_db +
      metrics.roadm_passthrough_count * mode.roadm_passthrough_penalty_db + margins.Total();
  if (metrics.total_length_km > mode.max_reach_km) {
    v.binding_constraint = BindingConstraint::kReach;
  } else if (metrics.osnr_db < v.metrics.effective_required_osnr_db) {
    v.binding_constraint = BindingConstraint::kOsnr;
  }
  v.feasible = v.binding_constraint == BindingConstraint::kNone;
  return v;
}

std::vector<ModeOption> FilterModes(const FiberPath& route, const FiberGraph& graph,
                                    const Catalog& catalog) {
  const PathMetrics metrics = ComputePathMetrics(route, graph, catalog.osnr);
  std::vector<ModeOption> out;
  for (const TransponderMode& mode : catalog.transponder_modes) {
    if (!catalog.grid.WidthFor(mode)) continue;
    FeasibilityVerdict v = EvaluateMode(metrics, mode, catalog.margins);
    if (v.feasible) out.push_back({mode.id, v.metrics});
  }
  return out;
}

}  // namespace mlplan
