#include "mlplan/spectrum.h"

#include <algorithm>
#include <limits>

namespace mlplan {

std::string_view ToString(SpectrumPolicy p) {
  return p == SpectrumPolicy::kExactFit ? "exact-fit" : "first-fit";
}

std::optional<SpectrumPolicy> ParseSpectrumPolicy(std::string_view s) {
  if (s == "first-fit") return SpectrumPolicy::kFirstFit;
  if (s == "exact-fit") return SpectrumPolicy::kExactFit;
  return std::nullopt;
}

SpectrumState::SpectrumState(const FiberGraph& graph, const GridSpec& grid,
                             bool overbuild_enabled, int max_fibers_per_link)
    : grid_(grid),
      overbuild_enabled_(overbuild_enabled),
      max_fibers_per_link_(max_fibers_per_link) {
  for (const FiberLink& l : graph.links()) {
    link_index_.emplace(l.id, link_ids_.size());
    link_ids_.push_back(l.id);
    installed_fibers_.push_back(l.fiber_count);
    occupancy_.emplace_back(std::max(1, l.fiber_count),
                            std::vector<std::uint8_t>(grid_.Units(), 0));
  }
}

std::size_t SpectrumState::Index(std::string_view link) const {
  auto it = link_index_.find(std::string(link));
  if (it != link_index_.end()) return it->second;
  throw Error("spectrum: unknown link " + std::string(link));
}

int SpectrumState::InstanceCount(std::string_view link) const {
  return static_cast<int>(occupancy_[Index(link)].size());
}

int SpectrumState::InstalledFiberCount(std::string_view link) const {
  return installed_fibers_[Index(link)];
}

bool SpectrumState::Occupied(std::string_view link, int instance, int unit) const {
  return occupancy_[Index(link)].at(instance).at(unit) != 0;
}

int SpectrumState::UsedUnits(std::string_view link, int instance) const {
  const auto& bits = occupancy_[Index(link)].at(instance);
  return static_cast<int>(std::count(bits.begin(), bits.end(), 1));
}

bool SpectrumState::WindowFree(std::size_t link, int instance, int lo, int hi) const {
  const auto& bits = occupancy_[link][instance];
  for (int u = lo; u < hi; ++u) {
    if (bits[u]) return false;
  }
  return true;
}

std::optional<int> SpectrumState::LowestFreeInstance(std::size_t link, int lo, int hi) const {
  for (std::size_t i = 0; i < occupancy_[link].size(); ++i) {
    if (WindowFree(link, static_cast<int>(i), lo, hi)) return static_cast<int>(i);
  }
  return std::nullopt;
}

int SpectrumState::EnclosingFreeBlock(std::size_t link, int instance, int lo, int hi) const {
  const auto& bits = occupancy_[link][instance];
  int left = lo;
  while (left > 0 && !bits[left - 1]) --left;
  int right = hi;
  while (right < static_cast<int>(bits.size()) && !bits[right]) ++right;
  return right - left;
}

std::optional<SpectrumAssignment> SpectrumState::Assign(const std::vector<std::string>& route,
                                                        int width, SpectrumPolicy policy) {
  if (route.empty() || width < 1 || width > units()) return std::nullopt;
  std::vector<std::size_t> links;
  for (const std::string& id : route) links.push_back(Index(id));

  std::optional<SpectrumAssignment> best;
  int best_block = std::numeric_limits<int>::max();
  for (int lo = 0; lo + width <= units(); ++lo) {
    SpectrumAssignment a{grid_.kind, lo, lo + width, {}};
    int block = std::numeric_limits<int>::max();
    bool ok = true;
    for (std::size_t k = 0; k < links.size(); ++k) {
      auto inst = LowestFreeInstance(links[k], lo, lo + width);
      if (!inst) {
        ok = false;
        break;
      }
      a.links.push_back({route[k], *inst});
      if (policy == SpectrumPolicy::kExactFit) {
        block = std::min(block, EnclosingFreeBlock(links[k], *inst, lo, lo + width));
      }
    }
    if (!ok) continue;
    if (policy == SpectrumPolicy::kFirstFit) {
      best = std::move(a);
      break;
    }
    if (block < best_block) {
      best_block = block;
      best = std::move(a);
    }
  }
  if (best) Occupy(*best);
  return best;
}

std::optional<SpectrumAssignment> SpectrumState::AssignWithOverbuild(
    const std::vector<std::string>& route, int width, SpectrumPolicy policy) {
  if (auto a = Assign(route, width, policy)) return a;
  if (!overbuild_enabled_ || route.empty() || width < 1 || width > units()) return std::nullopt;

  // Window needing the fewest new fibers; ties go to the lowest start.
  std::vector<std::size_t> links;
  for (const std::string& id : route) links.push_back(Index(id));
  std::vector<std::size_t> best_blocked;
  bool found = false;
  for (int lo = 0; lo + width <= units(); ++lo) {
    std::vector<std::size_t> blocked;
    for (std::size_t k = 0; k < links.size(); ++k) {
      if (!LowestFreeInstance(links[k], lo, lo + width)) blocked.push_back(k);
    }
    if (!found || blocked.size() < best_blocked.size()) {
      best_blocked = std::move(blocked);
      found = true;
    }
  }
  for (std::size_t k : best_blocked) {
    if (static_cast<int>(occupancy_[links[k]].size()) >= max_fibers_per_link_) return std::nullopt;
  }
  for (std::size_t k : best_blocked) Overbuild(route[k]);
  return Assign(route, width, policy);
}

int SpectrumState::Overbuild(std::string_view link) {
  if (!overbuild_enabled_) throw Error("spectrum: fiber overbuild is disabled");
  auto& instances = occupancy_[Index(link)];
  if (static_cast<int>(instances.size()) >= max_fibers_per_link_) {
    throw Error("spectrum: link " + std::string(link) + " is at its fiber limit");
  }
  instances.emplace_back(units(), 0);
  return static_cast<int>(instances.size()) - 1;
}

void SpectrumState::Occupy(const SpectrumAssignment& a) {
  for (const LinkInstance& li : a.links) {
    const std::size_t l = Index(li.link_id);
    if (li.instance < 0 || a.lo < 0 || a.hi > units()) {
      throw Error("spectrum: assignment out of range on " + li.link_id);
    }
    while (static_cast<int>(occupancy_[l].size()) <= li.instance) {
      occupancy_[l].emplace_back(units(), 0);
    }
    if (!WindowFree(l, li.instance, a.lo, a.hi)) {
      throw Error("spectrum: overlapping assignment on " + li.link_id);
    }
  }
  for (const LinkInstance& li : a.links) {
    auto& bits = occupancy_[Index(li.link_id)][li.instance];
    std::fill(bits.begin() + a.lo, bits.begin() + a.hi, 1);
  }
}

void SpectrumState::Release(const SpectrumAssignment& a) {
  for (const LinkInstance& li : a.links) {
    auto& bits = occupancy_[Index(li.link_id)].at(li.instance);
    std::fill(bits.begin() + a.lo, bits.begin() + a.hi, 0);
  }
}

double SpectrumState::Fragmentation(std::string_view link, int instance) const {
  const auto& bits = occupancy_[Index(link)].at(instance);
  int free_total = 0;
  int largest = 0;
  int run = 0;
  for (std::uint8_t b : bits) {
    if (b) {
      run = 0;
    } else {
      ++free_total;
      largest = std::max(largest, ++run);
    }
  }
  if (free_total == 0) return 0.0;
  return 1.0 - static_cast<double>(largest) / free_total;
}

}  // namespace mlplan
