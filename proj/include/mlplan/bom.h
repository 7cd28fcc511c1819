#ifndef MLPLAN_BOM_H_
#define MLPLAN_BOM_H_

#include <string>
#include <vector>

#include "mlplan/catalog.h"
#include "mlplan/model.h"
#include "mlplan/spectrum.h"

namespace mlplan {

// Equipment fitting:
//  - two transponders per lightpath, priced per mode; a 1+1 lightpath adds
//    one protection module (splitter/selector) instead of a second pair
//  - one ROADM degree per used fiber instance at each end, priced by the
//    node's ROADM class
//  - per used fiber instance: span_count - 1 inline amplifiers plus two
//    terminal amplifiers, and the link length in fiber km
//  - shelves: ceil(transponders at node / slots_per_shelf), summed over nodes
// A fiber instance is "used" when any lightpath occupies spectrum on it.
BillOfMaterial FitEquipment(const std::vector<Lightpath>& lightpaths, const SpectrumState& spectrum,
                            const FiberGraph& topology, const Catalog& catalog);

// Plan-level statistics. Occupancy per link is used units over units of all
// its fiber instances; fragmentation averages over flex-grid fiber instances
// and is flagged not applicable on a fixed grid.
PlanMetrics Summarize(const Plan& plan, const SpectrumState& spectrum,
                      const FiberGraph& topology, int restoration_gap_count = 0);

// Recomputes totals from the line items.
void RecomputeTotals(BillOfMaterial& bom);

std::string BomCsv(const BillOfMaterial& bom);

}  // namespace mlplan

#endif  // MLPLAN_BOM_H_
