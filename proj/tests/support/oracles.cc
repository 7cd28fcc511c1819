#include "support/oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "mlplan/synthetic.h"

namespace mlplan::oracle {

namespace {

bool Before(const FiberGraph& g, const FiberPath& x, const FiberPath& y) {
  const double tol = 1e-9 * std::max({1.0, std::abs(x.weight), std::abs(y.weight)});
  if (std::abs(x.weight - y.weight) > tol) return x.weight < y.weight;
  if (x.nodes != y.nodes) return x.nodes < y.nodes;
  std::vector<std::size_t> lx, ly;
  for (const auto& l : x.links) lx.push_back(*g.LinkIndex(l));
  for (const auto& l : y.links) ly.push_back(*g.LinkIndex(l));
  return lx < ly;
}

}  // namespace

std::vector<FiberPath> AllSimplePaths(const FiberGraph& g, const std::string& src,
                                      const std::string& dst, AdminWeight weight,
                                      const std::string& banned_link) {
  std::vector<FiberPath> out;
  FiberPath cur;
  std::set<std::string> on_path;
  std::function<void(const std::string&)> dfs = [&](const std::string& node) {
    if (node == dst) {
      out.push_back(cur);
      return;
    }
    for (const FiberLink& l : g.links()) {
      if (l.id == banned_link) continue;
      if (l.a != node && l.b != node) continue;
      const std::string next = l.a == node ? l.b : l.a;
      if (on_path.count(next)) continue;
      const double w = weight == AdminWeight::kHops ? 1.0 : l.length_km;
      cur.links.push_back(l.id);
      cur.nodes.push_back(next);
      cur.weight += w;
      on_path.insert(next);
      dfs(next);
      on_path.erase(next);
      cur.weight -= w;
      cur.nodes.pop_back();
      cur.links.pop_back();
    }
  };
  cur.nodes.push_back(src);
  on_path.insert(src);
  dfs(src);
  for (FiberPath& p : out) {
    // Recompute in path order so sums match the engine's rounding.
    p.weight = 0;
    for (const auto& l : p.links) {
      p.weight += weight == AdminWeight::kHops ? 1.0 : g.LinkById(l).length_km;
    }
  }
  std::sort(out.begin(), out.end(),
            [&g](const FiberPath& x, const FiberPath& y) { return Before(g, x, y); });
  return out;
}

bool LinkDisjoint(const FiberPath& p, const FiberPath& q) {
  for (const auto& l : p.links) {
    if (std::find(q.links.begin(), q.links.end(), l) != q.links.end()) return false;
  }
  return true;
}

bool InteriorNodeDisjoint(const FiberPath& p, const FiberPath& q) {
  for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
    if (std::find(q.nodes.begin() + 1, q.nodes.end() - 1, p.nodes[i]) != q.nodes.end() - 1) {
      return false;
    }
  }
  return true;
}

std::optional<double> BestDisjointPairWeight(const FiberGraph& g, const std::string& src,
                                             const std::string& dst, bool node_disjoint,
                                             AdminWeight weight) {
  const auto paths = AllSimplePaths(g, src, dst, weight);
  std::optional<double> best;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      if (!LinkDisjoint(paths[i], paths[j])) continue;
      if (node_disjoint && !InteriorNodeDisjoint(paths[i], paths[j])) continue;
      const double w = paths[i].weight + paths[j].weight;
      if (!best || w < *best) best = w;
    }
  }
  return best;
}

bool IsSimplePath(const FiberGraph& g, const FiberPath& p, const std::string& src,
                  const std::string& dst) {
  if (p.nodes.size() != p.links.size() + 1 || p.nodes.front() != src || p.nodes.back() != dst) {
    return false;
  }
  std::set<std::string> seen(p.nodes.begin(), p.nodes.end());
  if (seen.size() != p.nodes.size()) return false;
  for (std::size_t i = 0; i < p.links.size(); ++i) {
    const FiberLink& l = g.LinkById(p.links[i]);
    const bool fwd = l.a == p.nodes[i] && l.b == p.nodes[i + 1];
    const bool back = l.b == p.nodes[i] && l.a == p.nodes[i + 1];
    if (!fwd && !back) return false;
  }
  return true;
}

std::optional<int> FirstFitStart(const std::vector<std::vector<std::vector<bool>>>& occ,
                                 int width) {
  if (occ.empty()) return std::nullopt;
  const int units = static_cast<int>(occ[0][0].size());
  for (int lo = 0; lo + width <= units; ++lo) {
    bool all = true;
    for (const auto& link : occ) {
      bool some = false;
      for (const auto& inst : link) {
        bool free = true;
        for (int u = lo; u < lo + width; ++u) free = free && !inst[u];
        some = some || free;
      }
      all = all && some;
    }
    if (all) return lo;
  }
  return std::nullopt;
}

double ClosedFormOsnr(double span_loss_db, int spans, double reference_db,
                      double noise_figure_db) {
  return reference_db - span_loss_db - noise_figure_db - 10.0 * std::log10(spans);
}

// Random multigraph with up to 8 nodes; lengths are small integers so ties are
// common and the tie-break order gets exercised.
FiberGraph RandomSmallGraph(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = std::uniform_int_distribution<int>(2, 8)(rng);
  RandomTopologyOptions o;
  o.nodes = n;
  o.extra_link_fraction = std::uniform_real_distribution<double>(0.0, 0.7)(rng);
  o.min_length_km = 1;
  o.max_length_km = 4;
  FiberGraph base = RandomTopology(o, seed);
  std::vector<FiberLink> links = base.links();
  // Occasionally duplicate a link to get parallel fibers.
  if (!links.empty() && std::bernoulli_distribution(0.3)(rng)) {
    FiberLink dup = links[std::uniform_int_distribution<std::size_t>(0, links.size() - 1)(rng)];
    dup.id = "P" + dup.id;
    links.push_back(dup);
  }
  return FiberGraph(base.nodes(), links);
}

}  // namespace mlplan::oracle
