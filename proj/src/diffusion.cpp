#include "pmcsn/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "pmcsn/detail/cascade.hpp"

namespace pmcsn {

namespace {

void check_inputs(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                  std::span<const NodeId> seeds) {
  if (!probs.covers(net.graph()))
    throw std::invalid_argument("edge probabilities do not cover the graph");
  for (NodeId s : seeds)
    if (s >= net.node_count())
      throw std::out_of_range("seed node " + std::to_string(s) + " outside the graph");
}

template <class LiveFn>
ActiveSet cascade_to_set(const DiffusionNetwork& net, std::span<const NodeId> seeds,
                         LiveFn&& live) {
  detail::CascadeWorkspace ws(net.node_count());
  ws.reset();
  std::vector<NodeId> active;
  detail::run_cascade(
      net, seeds, live, [](NodeId) { return false; }, [&](NodeId u) { active.push_back(u); }, ws);
  return ActiveSet(std::move(active));
}

// Evaluates `score(ws, world)` for every replication and aggregates in
// replication order.
template <class ScoreFn>
SpreadEstimate monte_carlo(std::size_t n, const MonteCarloOptions& mc, EstimateKind kind,
                           ScoreFn score) {
  if (mc.replications == 0) throw std::invalid_argument("replication count must be positive");
  const std::size_t reps = mc.replications;
  std::vector<double> values(reps);

  auto work = [&](std::size_t begin, std::size_t end) {
    detail::CascadeWorkspace ws(n);
    for (std::size_t i = begin; i < end; ++i)
      values[i] = score(ws, WorldCoins(derive_seed(mc.master_seed, i, "ic-replication")));
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(mc.threads, static_cast<unsigned>(reps)));
  if (threads == 1) {
    work(0, reps);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (reps + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t b = t * chunk, e = std::min(reps, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }

  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(reps);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) : 0.0;
  return {mean, sd / std::sqrt(static_cast<double>(reps)), reps, kind};
}

template <class WeightFn>
SpreadEstimate estimate_weighted(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                                 std::span<const NodeId> seeds, const MonteCarloOptions& mc,
                                 EstimateKind kind, WeightFn weight) {
  check_inputs(net, probs, seeds);
  if (seeds.empty()) {
    if (mc.replications == 0) throw std::invalid_argument("replication count must be positive");
    return {0.0, 0.0, mc.replications, kind};
  }
  return monte_carlo(net.node_count(), mc, kind, [&](detail::CascadeWorkspace& ws, WorldCoins world) {
    ws.reset();
    double total = 0.0;
    detail::run_cascade(
        net, seeds, [&](ArcId a) { return world.live(a, probs[a]); },
        [](NodeId) { return false; }, [&](NodeId u) { total += weight(u); }, ws);
    return total;
  });
}

}  // namespace

ActiveSet::ActiveSet(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
}

bool ActiveSet::contains(NodeId u) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), u);
}

std::string_view to_string(EstimateKind k) noexcept {
  switch (k) {
    case EstimateKind::Influence: return "influence";
    case EstimateKind::Benefit: return "benefit";
    case EstimateKind::Profit: return "profit";
  }
  return "influence";
}

ActiveSet simulate_ic_once(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                           std::span<const NodeId> seeds, RngStream& rng) {
  check_inputs(net, probs, seeds);
  return cascade_to_set(net, seeds, [&](ArcId a) { return next_unit(rng) < probs[a]; });
}

ActiveSet simulate_ic_world(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                            std::span<const NodeId> seeds, WorldCoins world) {
  check_inputs(net, probs, seeds);
  return cascade_to_set(net, seeds, [&](ArcId a) { return world.live(a, probs[a]); });
}

SpreadEstimate estimate_spread(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                               std::span<const NodeId> seeds, const MonteCarloOptions& mc) {
  return estimate_weighted(net, probs, seeds, mc, EstimateKind::Influence,
                           [](NodeId) { return 1.0; });
}

SpreadEstimate estimate_benefit(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                                std::span<const NodeId> seeds, const CostBenefitTable& cb,
                                const MonteCarloOptions& mc) {
  if (cb.size() != net.node_count())
    throw std::invalid_argument("cost/benefit table does not cover the graph");
  return estimate_weighted(net, probs, seeds, mc, EstimateKind::Benefit,
                           [&](NodeId u) { return cb.benefit(u); });
}

SpreadEstimate estimate_profit(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                               std::span<const NodeId> seeds, const CostBenefitTable& cb,
                               const MonteCarloOptions& mc) {
  SpreadEstimate est = estimate_benefit(net, probs, seeds, cb, mc);
  est.mean -= cb.cost_of(seeds);
  est.kind = EstimateKind::Profit;
  return est;
}

std::vector<NodeId> reachable_from(const DiffusionNetwork& net, std::span<const NodeId> seeds) {
  for (NodeId s : seeds)
    if (s >= net.node_count()) throw std::out_of_range("seed outside the graph");
  auto set = cascade_to_set(net, seeds, [](ArcId) { return true; });
  return {set.nodes().begin(), set.nodes().end()};
}

}  // namespace pmcsn
