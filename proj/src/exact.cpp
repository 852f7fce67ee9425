#include "pmcsn/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <stdexcept>

#include "pmcsn/errors.hpp"
#include "pmcsn/rng.hpp"

namespace pmcsn {

namespace {

std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xF];
  return s;
}

std::uint64_t mix_in(std::uint64_t h, std::uint64_t v) {
  char bytes[sizeof v];
  std::memcpy(bytes, &v, sizeof v);
  return fnv1a64(std::string_view(bytes, sizeof v), h);
}

std::string fingerprint(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                        std::span<const NodeId> seeds) {
  std::uint64_t h = fnv1a64("pmcsn-exact");
  h = mix_in(h, net.node_count());
  for (ArcId a : net.arcs()) {
    h = mix_in(h, net.graph().arc_source(a));
    h = mix_in(h, net.graph().arc_target(a));
    h = mix_in(h, std::bit_cast<std::uint64_t>(probs[a]));
  }
  h = mix_in(h, ~std::uint64_t{0});
  for (NodeId s : seeds) h = mix_in(h, s);
  return hex64(h);
}

void check_world_guard(const DiffusionNetwork& net, const ExactLimits& limits) {
  if (net.arc_count() > limits.max_arcs || net.arc_count() > 31)
    throw LimitExceeded("exact enumeration: " + std::to_string(net.arc_count()) +
                        " kept arcs exceed the guard of " + std::to_string(limits.max_arcs));
}

// Depth-first enumeration of live-arc worlds. `leaf(live_mask, probability)`
// receives a bitmask over positions in net.arcs().
template <class LeafFn>
void for_each_world(const DiffusionNetwork& net, const EdgeProbabilities& probs, LeafFn&& leaf) {
  const auto arcs = net.arcs();
  const std::size_t k = arcs.size();
  std::vector<ExactReal> p(k), q(k);
  for (std::size_t i = 0; i < k; ++i) {
    p[i] = ExactReal(probs[arcs[i]]);
    q[i] = 1 - p[i];
  }
  auto recurse = [&](auto& self, std::size_t depth, std::uint32_t mask, const ExactReal& prob) -> void {
    if (depth == k) {
      leaf(mask, prob);
      return;
    }
    if (q[depth] != 0) self(self, depth + 1, mask, prob * q[depth]);
    self(self, depth + 1, mask | (std::uint32_t{1} << depth), prob * p[depth]);
  };
  recurse(recurse, 0, 0, ExactReal(1));
}

// Nodes reachable from `seeds` using only arcs whose position bit is set.
std::vector<char> reach_in_world(const DiffusionNetwork& net, std::span<const NodeId> seeds,
                                 std::uint32_t live, std::vector<NodeId>& queue) {
  std::vector<char> seen(net.node_count(), 0);
  queue.clear();
  for (NodeId s : seeds) {
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  const auto all = net.arcs();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    auto kept = net.kept_arcs(u);
    const std::size_t base = static_cast<std::size_t>(kept.data() - all.data());
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (!(live >> (base + j) & 1u)) continue;
      NodeId v = net.graph().arc_target(kept[j]);
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

bool lex_less(std::uint32_t a, std::uint32_t b) {
  // Compare sorted member lists of two subsets.
  while (a && b) {
    int x = std::countr_zero(a), y = std::countr_zero(b);
    if (x != y) return x < y;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

std::vector<NodeId> members(std::uint32_t mask) {
  std::vector<NodeId> out;
  for (; mask; mask &= mask - 1) out.push_back(static_cast<NodeId>(std::countr_zero(mask)));
  return out;
}

}  // namespace

ExactResult exact_benefit(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                          const CostBenefitTable& cb, std::span<const NodeId> seeds,
                          const ExactLimits& limits) {
  check_world_guard(net, limits);
  if (!probs.covers(net.graph())) throw std::invalid_argument("probabilities do not cover graph");
  if (cb.size() != net.node_count()) throw std::invalid_argument("cost/benefit table size mismatch");
  for (NodeId s : seeds)
    if (s >= net.node_count()) throw std::out_of_range("seed outside the graph");

  ExactResult result;
  result.networks = 1;
  result.fingerprint = fingerprint(net, probs, seeds);
  std::vector<NodeId> queue;
  for_each_world(net, probs, [&](std::uint32_t live, const ExactReal& prob) {
    ++result.worlds;
    result.probability_mass += prob;
    if (seeds.empty()) return;
    reach_in_world(net, seeds, live, queue);
    ExactReal total = 0;
    for (NodeId u : queue) total += ExactReal(cb.benefit(u));
    result.value += prob * total;
  });
  return result;
}

ExactReal exact_profit(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                       const CostBenefitTable& cb, std::span<const NodeId> seeds,
                       const ExactLimits& limits) {
  ExactReal cost = 0;
  for (NodeId s : seeds) cost += ExactReal(cb.cost(s));
  return exact_benefit(net, probs, cb, seeds, limits).value - cost;
}

ExactResult exact_expected_benefit(const Graph& g, std::size_t ell, const EdgeProbabilities& probs,
                                   const CostBenefitTable& cb, std::span<const NodeId> seeds,
                                   const ExactLimits& limits) {
  ExactResult result;
  ExactReal sum = 0;
  std::uint64_t h = fnv1a64("pmcsn-expected");
  for_each_diffusion_network(g, ell, limits.max_networks, [&](const DiffusionNetwork& net) {
    ExactResult one = exact_benefit(net, probs, cb, seeds, limits);
    sum += one.value;
    result.probability_mass += one.probability_mass;
    result.worlds += one.worlds;
    ++result.networks;
    h = fnv1a64(one.fingerprint, h);
  });
  result.value = sum / ExactReal(result.networks);
  result.fingerprint = hex64(h);
  return result;
}

ExactOptimum exact_optimum(const Graph& g, std::size_t ell, const EdgeProbabilities& probs,
                           const CostBenefitTable& cb, double budget, const ExactLimits& limits) {
  const std::size_t n = g.node_count();
  if (n > limits.max_nodes || n > 31)
    throw LimitExceeded("exact optimum: " + std::to_string(n) + " nodes exceed the guard of " +
                        std::to_string(limits.max_nodes));
  if (cb.size() != n) throw std::invalid_argument("cost/benefit table size mismatch");

  const std::uint32_t full = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);

  // Budget-feasible subsets, their exact costs, and the benefit of every
  // node set.
  std::vector<std::uint32_t> feasible;
  std::vector<ExactReal> feasible_cost;
  std::vector<ExactReal> set_benefit(std::size_t{full} + 1);
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    double cost = 0.0;
    ExactReal exact_cost = 0, benefit = 0;
    for (std::uint32_t m = mask; m; m &= m - 1) {
      int u = std::countr_zero(m);
      cost += cb.cost(static_cast<NodeId>(u));
      exact_cost += ExactReal(cb.cost(static_cast<NodeId>(u)));
      benefit += ExactReal(cb.benefit(static_cast<NodeId>(u)));
    }
    set_benefit[mask] = benefit;
    if (cost <= budget) {
      feasible.push_back(mask);
      feasible_cost.push_back(exact_cost);
    }
    if (mask == full) break;
  }

  std::optional<ExactOptimum> best;
  std::uint32_t best_mask = 0;
  std::vector<ExactReal> value(feasible.size());
  std::vector<std::uint32_t> node_reach(n), subset_reach(std::size_t{full} + 1);
  std::vector<NodeId> queue;
  std::size_t index = 0;

  for_each_diffusion_network(g, ell, limits.max_networks, [&](const DiffusionNetwork& net) {
    check_world_guard(net, limits);
    std::fill(value.begin(), value.end(), ExactReal(0));
    for_each_world(net, probs, [&](std::uint32_t live, const ExactReal& prob) {
      for (NodeId u = 0; u < n; ++u) {
        NodeId seed[1] = {u};
        reach_in_world(net, seed, live, queue);
        std::uint32_t r = 0;
        for (NodeId v : queue) r |= std::uint32_t{1} << v;
        node_reach[u] = r;
      }
      subset_reach[0] = 0;
      for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
        subset_reach[mask] = subset_reach[mask & (mask - 1)] | node_reach[std::countr_zero(mask)];
        if (mask == full) break;
      }
      for (std::size_t i = 0; i < feasible.size(); ++i)
        if (feasible[i] != 0) value[i] += prob * set_benefit[subset_reach[feasible[i]]];
    });

    for (std::size_t i = 0; i < feasible.size(); ++i) {
      ExactReal profit = value[i] - feasible_cost[i];
      bool better = !best || profit > best->profit ||
                    (profit == best->profit && lex_less(feasible[i], best_mask));
      if (better) {
        best = ExactOptimum{members(feasible[i]), net, index, profit, feasible.size(), 0};
        best_mask = feasible[i];
      }
    }
    ++index;
  });

  best->networks = index;
  return *std::move(best);
}

}  // namespace pmcsn
