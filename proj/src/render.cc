#include "mlplan/render.h"

#include <algorithm>
#include <map>
#include <sstream>

namespace mlplan {

namespace {

void Paint(std::map<std::pair<std::string, int>, std::vector<std::string>>& rows, int units,
           const SpectrumAssignment& a, const std::string& label) {
  for (const LinkInstance& li : a.links) {
    auto& row = rows[{li.link_id, li.instance}];
    if (row.empty()) row.resize(units);
    for (int u = std::max(0, a.lo); u < std::min(units, a.hi); ++u) row[u] = label;
  }
}

}  // namespace

AllocationTable BuildAllocationTable(const Plan& plan) {
  AllocationTable t;
  t.units = plan.grid.Units();
  std::map<std::pair<std::string, int>, std::vector<std::string>> rows;
  for (const Lightpath& lp : plan.lightpaths) {
    Paint(rows, t.units, lp.spectrum, lp.id);
    if (lp.protection_spectrum) Paint(rows, t.units, *lp.protection_spectrum, lp.id + "/p");
  }
  for (auto& [key, cells] : rows) {
    t.row_labels.push_back(key.first + ":" + std::to_string(key.second));
    t.cells.push_back(std::move(cells));
  }
  return t;
}

std::string RenderCsv(const AllocationTable& t) {
  std::ostringstream out;
  out << "link:instance";
  for (int u = 0; u < t.units; ++u) out << ',' << u;
  out << '\n';
  for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
    out << t.row_labels[r];
    for (const std::string& c : t.cells[r]) out << ',' << c;
    out << '\n';
  }
  return out.str();
}

std::string RenderText(const AllocationTable& t) {
  std::size_t label_w = std::string("link:instance").size();
  for (const auto& l : t.row_labels) label_w = std::max(label_w, l.size());
  std::size_t cell_w = std::to_string(std::max(0, t.units - 1)).size();
  for (const auto& row : t.cells) {
    for (const auto& c : row) cell_w = std::max(cell_w, c.size());
  }
  auto pad = [](std::ostringstream& out, const std::string& s, std::size_t w) {
    out << s << std::string(w - s.size(), ' ');
  };
  std::ostringstream out;
  pad(out, "link:instance", label_w);
  for (int u = 0; u < t.units; ++u) {
    out << ' ';
    pad(out, std::to_string(u), cell_w);
  }
  out << '\n';
  for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
    pad(out, t.row_labels[r], label_w);
    for (const std::string& c : t.cells[r]) {
      out << ' ';
      pad(out, c.empty() ? "." : c, cell_w);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mlplan
