#ifndef MLPLAN_SYNTHETIC_H_
#define MLPLAN_SYNTHETIC_H_

#include <cstdint>
#include <vector>

#include "mlplan/catalog.h"
#include "mlplan/model.h"

namespace mlplan {

struct RandomTopologyOptions {
  int nodes = 8;
  // Links beyond the spanning tree, as a fraction of the missing pairs.
  double extra_link_fraction = 0.3;
  double min_length_km = 50;
  double max_length_km = 600;
};

// Connected random topology: a random spanning tree plus extra links. Node
// ids are N0, N1, ...; link ids L0, L1, ...; spans follow DefaultSpans.
FiberGraph RandomTopology(const RandomTopologyOptions& options, std::uint64_t seed);

// Ring N0-N1-...-N(n-1)-N0 with equal link lengths.
FiberGraph RingTopology(int nodes, double link_km);

// One demand per unordered node pair (topology order), all with the same
// bitrate.
std::vector<Demand> UniformDemands(const FiberGraph& topology, double gbps);

// `count` ethernet demands between random distinct pairs, bitrates uniform
// in [min_gbps, max_gbps] rounded to whole Gbps.
std::vector<Demand> RandomDemands(const FiberGraph& topology, int count, double min_gbps,
                                  double max_gbps, std::uint64_t seed);

// A single-mode flex-grid catalog (100 G, 37.5 GHz, given reach) with unit
// costs; handy for fixtures.
Catalog SimpleCatalog(double reach_km = 2000);

}  // namespace mlplan

#endif  // MLPLAN_SYNTHETIC_H_
