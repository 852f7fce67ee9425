#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond the Graph accessors: worlds are enumerated with plain long
// double arithmetic, reachability is a fresh BFS, and diffusion networks are
// enumerated with std::prev_permutation over selection masks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pmcsn/graph.hpp"
#include "pmcsn/network.hpp"

namespace testing {

using pmcsn::ArcId;
using pmcsn::NodeId;

using ArcPairs = std::vector<std::pair<NodeId, NodeId>>;

inline std::vector<NodeId> bfs_reach(std::size_t n, const ArcPairs& live, const std::vector<NodeId>& seeds) {
  std::vector<std::vector<NodeId>> adj(n);
  for (auto [u, v] : live) adj[u].push_back(v);
  std::vector<char> seen(n, 0);
  std::vector<NodeId> queue;
  for (auto s : seeds) {
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (auto v : adj[queue[i]]) {
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

/// Expected benefit of `seeds` on the arc set `arcs` with per-arc probability
/// `p[i]`, by enumerating every subset of arcs.
inline long double brute_benefit(std::size_t n, const ArcPairs& arcs, const std::vector<double>& p,
                                 const std::vector<double>& benefit, const std::vector<NodeId>& seeds) {
  const std::size_t m = arcs.size();
  long double total = 0.0L;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    long double prob = 1.0L;
    ArcPairs live;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1U) {
        prob *= p[i];
        live.push_back(arcs[i]);
      } else {
        prob *= 1.0L - p[i];
      }
    }
    long double b = 0.0L;
    for (auto u : bfs_reach(n, live, seeds)) b += benefit[u];
    total += prob * b;
  }
  return total;
}

/// Kept arcs of a network with their probabilities, in the same order.
inline std::pair<ArcPairs, std::vector<double>> network_arcs(const pmcsn::DiffusionNetwork& net,
                                                            const pmcsn::EdgeProbabilities& probs) {
  ArcPairs arcs;
  std::vector<double> p;
  const auto& g = net.graph();
  for (NodeId u = 0; u < net.node_count(); ++u) {
    for (ArcId a : net.kept_arcs(u)) {
      arcs.emplace_back(g.arc_source(a), g.arc_target(a));
      p.push_back(probs[a]);
    }
  }
  return {arcs, p};
}

inline long double brute_benefit(const pmcsn::DiffusionNetwork& net, const pmcsn::EdgeProbabilities& probs,
                                 const pmcsn::CostBenefitTable& cb, const std::vector<NodeId>& seeds) {
  auto [arcs, p] = network_arcs(net, probs);
  std::vector<double> b(cb.benefits().begin(), cb.benefits().end());
  return brute_benefit(net.node_count(), arcs, p, b, seeds);
}

/// Every member of alpha(G) as a sorted set of arc pairs.
inline std::vector<std::set<std::pair<NodeId, NodeId>>> brute_networks(const pmcsn::Graph& g, std::size_t ell) {
  std::vector<std::vector<ArcPairs>> per_node;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    ArcPairs out;
    for (NodeId v : g.out_neighbors(u)) out.emplace_back(u, v);
    std::vector<ArcPairs> choices;
    if (out.size() <= ell) {
      choices.push_back(out);
    } else {
      std::vector<char> pick(out.size(), 0);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(ell), 1);
      do {
        ArcPairs c;
        for (std::size_t i = 0; i < out.size(); ++i)
          if (pick[i]) c.push_back(out[i]);
        choices.push_back(c);
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    per_node.push_back(std::move(choices));
  }
  std::vector<std::set<std::pair<NodeId, NodeId>>> result;
  std::set<std::pair<NodeId, NodeId>> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t u) {
    if (u == per_node.size()) {
      result.push_back(cur);
      return;
    }
    for (const auto& c : per_node[u]) {
      for (auto& a : c) cur.insert(a);
      rec(u + 1);
      for (auto& a : c) cur.erase(a);
    }
  };
  rec(0);
  return result;
}

inline std::set<std::pair<NodeId, NodeId>> arc_set(const pmcsn::DiffusionNetwork& net) {
  auto list = net.arc_list();
  return {list.begin(), list.end()};
}

/// Uniform over arc sets: each ordered pair u != v present with probability
/// `density`, then trimmed to at most `max_arcs` arcs.
inline pmcsn::Graph random_graph(std::mt19937_64& rng, std::size_t n, double density, std::size_t max_arcs) {
  std::bernoulli_distribution coin(density);
  ArcPairs arcs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v && coin(rng)) arcs.emplace_back(u, v);
  std::shuffle(arcs.begin(), arcs.end(), rng);
  if (arcs.size() > max_arcs) arcs.resize(max_arcs);
  return pmcsn::Graph(n, std::move(arcs));
}

inline pmcsn::EdgeProbabilities random_probs(std::mt19937_64& rng, const pmcsn::Graph& g) {
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  std::vector<double> v(g.arc_count());
  for (auto& x : v) x = dist(rng);
  return pmcsn::EdgeProbabilities(std::move(v), pmcsn::ProbabilityModel::Custom);
}

inline pmcsn::CostBenefitTable random_table(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> cost(0.5, 3.0);
  std::uniform_real_distribution<double> benefit(0.5, 5.0);
  std::vector<double> c(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = cost(rng);
    b[i] = benefit(rng);
  }
  return pmcsn::CostBenefitTable(std::move(c), std::move(b));
}

inline long double binom(std::size_t n, std::size_t k) {
  long double r = 1.0L;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  return r;
}

inline long double brute_count(const pmcsn::Graph& g, std::size_t ell) {
  long double c = 1.0L;
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (g.out_degree(u) > ell) c *= binom(g.out_degree(u), ell);
  return c;
}

/// Best exact profit over all budget-feasible subsets and all networks,
/// evaluated with the brute-force oracles above.
inline long double brute_optimum(const pmcsn::Graph& g, std::size_t ell, const pmcsn::EdgeProbabilities& probs,
                                 const pmcsn::CostBenefitTable& cb, double budget) {
  const std::size_t n = g.node_count();
  std::vector<double> b(cb.benefits().begin(), cb.benefits().end());
  long double best = 0.0L;
  for (const auto& net : brute_networks(g, ell)) {
    ArcPairs arcs(net.begin(), net.end());
    std::vector<double> p;
    for (auto [u, v] : arcs) p.push_back(probs[*g.find_arc(u, v)]);
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
      std::vector<NodeId> s;
      for (NodeId u = 0; u < n; ++u)
        if (mask >> u & 1U) s.push_back(u);
      if (cb.cost_of(s) > budget) continue;
      long double c = 0.0L;
      for (auto u : s) c += cb.cost(u);
      best = std::max(best, brute_benefit(n, arcs, p, b, s) - c);
    }
  }
  return best;
}

}  // namespace testing
