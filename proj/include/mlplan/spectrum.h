#ifndef MLPLAN_SPECTRUM_H_
#define MLPLAN_SPECTRUM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mlplan/model.h"

namespace mlplan {

enum class SpectrumPolicy { kFirstFit, kExactFit };

std::string_view ToString(SpectrumPolicy p);
std::optional<SpectrumPolicy> ParseSpectrumPolicy(std::string_view s);

// Occupancy of every fiber instance of every link, in channels (fixed grid)
// or slots (flex grid). Single writer; copy to snapshot.
class SpectrumState {
 public:
  SpectrumState(const FiberGraph& graph, const GridSpec& grid, bool overbuild_enabled = true,
                int max_fibers_per_link = 8);

  const GridSpec& grid() const { return grid_; }
  int units() const { return grid_.Units(); }
  bool overbuild_enabled() const { return overbuild_enabled_; }
  const std::vector<std::string>& link_ids() const { return link_ids_; }

  int InstanceCount(std::string_view link) const;
  int InstalledFiberCount(std::string_view link) const;
  bool Occupied(std::string_view link, int instance, int unit) const;
  int UsedUnits(std::string_view link, int instance) const;
  bool InstanceUsed(std::string_view link, int instance) const {
    return UsedUnits(link, instance) > 0;
  }

  // Lowest start (first fit) or smallest enclosing free block (exact fit)
  // at which every route link has a fiber instance free over the whole
  // window; each link takes its lowest such instance. Marks the occupancy.
  // Returns nullopt without touching state when nothing fits.
  std::optional<SpectrumAssignment> Assign(const std::vector<std::string>& route, int width,
                                           SpectrumPolicy policy = SpectrumPolicy::kFirstFit);

  // Assign, and when that fails light extra fibers on the bottleneck links
  // (never a different route) and retry. nullopt when overbuild is disabled
  // or a link already has max_fibers_per_link instances.
  std::optional<SpectrumAssignment> AssignWithOverbuild(
      const std::vector<std::string>& route, int width,
      SpectrumPolicy policy = SpectrumPolicy::kFirstFit);

  // Adds one empty fiber instance to the link and returns its index. Throws
  // Error when overbuild is disabled or the link is at its fiber cap.
  int Overbuild(std::string_view link);

  // Marks an assignment occupied; throws Error on overlap.
  void Occupy(const SpectrumAssignment& a);
  void Release(const SpectrumAssignment& a);

  // 1 - largest free block / total free; 0 when nothing or everything is free
  // in one block.
  double Fragmentation(std::string_view link, int instance) const;

  bool operator==(const SpectrumState&) const = default;

 private:
  std::size_t Index(std::string_view link) const;
  bool WindowFree(std::size_t link, int instance, int lo, int hi) const;
  std::optional<int> LowestFreeInstance(std::size_t link, int lo, int hi) const;
  int EnclosingFreeBlock(std::size_t link, int instance, int lo, int hi) const;

  GridSpec grid_;
  bool overbuild_enabled_;
  int max_fibers_per_link_;
  std::vector<std::string> link_ids_;
  std::unordered_map<std::string, std::size_t> link_index_;
  std::vector<int> installed_fibers_;
  // occupancy_[link][instance][unit]
  std::vector<std::vector<std::vector<std::uint8_t>>> occupancy_;
};

}  // namespace mlplan

#endif  // MLPLAN_SPECTRUM_H_
