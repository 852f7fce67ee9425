#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pmcsn/graph.hpp"
#include "pmcsn/network.hpp"
#include "pmcsn/rng.hpp"

namespace pmcsn {

/// Nodes active at the end of one cascade, sorted by id.
class ActiveSet {
 public:
  ActiveSet() = default;
  explicit ActiveSet(std::vector<NodeId> nodes);

  bool contains(NodeId u) const;
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  std::span<const NodeId> nodes() const noexcept { return nodes_; }

 private:
  std::vector<NodeId> nodes_;
};

enum class EstimateKind { Influence, Benefit, Profit };
std::string_view to_string(EstimateKind k) noexcept;

struct SpreadEstimate {
  double mean = 0.0;
  double std_error = 0.0;  ///< sample standard deviation / sqrt(R)
  std::size_t replications = 0;
  EstimateKind kind = EstimateKind::Influence;
};

struct MonteCarloOptions {
  std::size_t replications = 100;
  std::uint64_t master_seed = 0;
  /// Worker threads. Results are identical for every value.
  unsigned threads = 1;
};

/// One Independent Cascade run: seeds are active at step 0, and each node
/// activated at step t makes a single Bernoulli(p) attempt on each inactive
/// out-neighbor kept in `net` at step t+1. Throws std::out_of_range for a
/// seed outside the graph.
ActiveSet simulate_ic_once(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                           std::span<const NodeId> seeds, RngStream& rng);

/// Same cascade with arc coins fixed by a live-arc world.
ActiveSet simulate_ic_world(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                            std::span<const NodeId> seeds, WorldCoins world);

/// Replication i draws its live-arc world from derive_seed(master_seed, i,
/// "ic-replication"), so estimates do not depend on thread scheduling, and
/// spread, benefit and profit computed with one master seed share worlds.
SpreadEstimate estimate_spread(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                               std::span<const NodeId> seeds, const MonteCarloOptions& mc);

SpreadEstimate estimate_benefit(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                                std::span<const NodeId> seeds, const CostBenefitTable& cb,
                                const MonteCarloOptions& mc);

/// Benefit estimate minus C(S); same standard error as the benefit estimate.
SpreadEstimate estimate_profit(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                               std::span<const NodeId> seeds, const CostBenefitTable& cb,
                               const MonteCarloOptions& mc);

/// Nodes reachable from `seeds` through kept arcs, sorted.
std::vector<NodeId> reachable_from(const DiffusionNetwork& net, std::span<const NodeId> seeds);

}  // namespace pmcsn
