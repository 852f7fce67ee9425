#pragma once

// Live-arc BFS shared by the Monte Carlo estimators and the heuristic solver.

#include <cstdint>
#include <span>
#include <vector>

#include "pmcsn/graph.hpp"
#include "pmcsn/network.hpp"

namespace pmcsn::detail {

/// Visited marks that reset in O(1) by bumping an epoch counter.
class CascadeWorkspace {
 public:
  explicit CascadeWorkspace(std::size_t n) : stamp_(n, 0) { frontier_.reserve(n); }

  void reset() {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }
  bool mark(NodeId u) {
    if (stamp_[u] == epoch_) return false;
    stamp_[u] = epoch_;
    return true;
  }
  bool marked(NodeId u) const { return stamp_[u] == epoch_; }

  std::vector<NodeId>& frontier() { return frontier_; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> frontier_;
};

/// Runs a cascade from `seeds` and calls `on_active(u)` once per activated
/// node (seeds included). `live(arc)` decides each activation attempt and is
/// called at most once per arc. `blocked(u)` nodes are treated as already
/// active and never reported. Uses the workspace marks without resetting
/// them first.
template <class LiveFn, class BlockedFn, class ActiveFn>
void run_cascade(const DiffusionNetwork& net, std::span<const NodeId> seeds, LiveFn&& live,
                 BlockedFn&& blocked, ActiveFn&& on_active, CascadeWorkspace& ws) {
  const Graph& g = net.graph();
  auto& queue = ws.frontier();
  queue.clear();
  for (NodeId s : seeds) {
    if (blocked(s) || !ws.mark(s)) continue;
    queue.push_back(s);
    on_active(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    for (ArcId a : net.kept_arcs(u)) {
      NodeId v = g.arc_target(a);
      if (ws.marked(v) || blocked(v)) continue;
      if (!live(a)) continue;
      ws.mark(v);
      queue.push_back(v);
      on_active(v);
    }
  }
}

}  // namespace pmcsn::detail
