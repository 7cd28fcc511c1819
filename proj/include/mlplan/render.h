#ifndef MLPLAN_RENDER_H_
#define MLPLAN_RENDER_H_

#include <string>
#include <vector>

#include "mlplan/model.h"

namespace mlplan {

// Wavelength allocation table. One row per lit fiber instance ("link:n",
// links by id, instances ascending), one column per channel or slot. A cell
// holds the id of the lightpath occupying it, suffixed with "/p" for the
// protection copy of a 1+1 lightpath. Fiber instances carrying nothing are
// left out, so a plan without lightpaths gives just the header.
struct AllocationTable {
  int units = 0;
  std::vector<std::string> row_labels;
  std::vector<std::vector<std::string>> cells;  // [row][unit]
};

AllocationTable BuildAllocationTable(const Plan& plan);

std::string RenderCsv(const AllocationTable& table);
// Fixed-width text; blank cells print as '.'.
std::string RenderText(const AllocationTable& table);

}  // namespace mlplan

#endif  // MLPLAN_RENDER_H_
