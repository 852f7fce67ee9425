#pragma once

// Brute-force ground truth for tiny instances. Every function enumerates
// exhaustively and throws LimitExceeded instead of truncating.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pmcsn/graph.hpp"
#include "pmcsn/network.hpp"

namespace pmcsn {

using ExactReal = boost::multiprecision::cpp_bin_float_50;

struct ExactLimits {
  std::size_t max_arcs = 20;       ///< kept arcs per network (2^k worlds)
  std::size_t max_nodes = 12;      ///< exact_optimum subset search
  std::size_t max_networks = 4096; ///< |alpha(G)|
};

struct ExactResult {
  ExactReal value = 0;
  /// Sum of world probabilities visited; 1 up to rounding (times the
  /// number of networks for expectations over alpha(G)).
  ExactReal probability_mass = 0;
  std::uint64_t worlds = 0;
  std::uint64_t networks = 0;
  std::string fingerprint;

  double to_double() const { return value.convert_to<double>(); }
};

/// Sum over all 2^|E'| live-arc worlds of P(world) times the benefit of the
/// nodes reachable from `seeds`.
ExactResult exact_benefit(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                          const CostBenefitTable& cb, std::span<const NodeId> seeds,
                          const ExactLimits& limits = {});

/// exact_benefit minus C(S).
ExactReal exact_profit(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                       const CostBenefitTable& cb, std::span<const NodeId> seeds,
                       const ExactLimits& limits = {});

/// Uniform average of exact_benefit over every diffusion network of g.
ExactResult exact_expected_benefit(const Graph& g, std::size_t ell, const EdgeProbabilities& probs,
                                   const CostBenefitTable& cb, std::span<const NodeId> seeds,
                                   const ExactLimits& limits = {});

struct ExactOptimum {
  std::vector<NodeId> seeds;  ///< sorted
  DiffusionNetwork network;
  std::size_t network_index = 0;  ///< position in canonical enumeration
  ExactReal profit = 0;
  std::uint64_t subsets_feasible = 0;
  std::uint64_t networks = 0;
};

/// Best (S, E') over every budget-feasible S and every diffusion network,
/// by exact profit. Ties go to the lexicographically smallest sorted S,
/// then to the earliest network in canonical order.
ExactOptimum exact_optimum(const Graph& g, std::size_t ell, const EdgeProbabilities& probs,
                           const CostBenefitTable& cb, double budget,
                           const ExactLimits& limits = {});

}  // namespace pmcsn
