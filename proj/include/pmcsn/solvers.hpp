#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "pmcsn/diffusion.hpp"
#include "pmcsn/graph.hpp"
#include "pmcsn/network.hpp"

namespace pmcsn {

enum class Algorithm { Sba, Heu, Random, HighDegree };

std::string_view to_string(Algorithm a) noexcept;
/// "sba", "heu", "random", "highdeg"; throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view name);

enum class GainMetric { Benefit, Influence };
std::string_view to_string(GainMetric g) noexcept;
GainMetric parse_gain_metric(std::string_view name);

/// Settings shared by all four solvers.
struct SolverOptions {
  double budget = 0.0;
  std::size_t ell = 1;
  /// Monte Carlo replications for estimates made while searching.
  std::size_t search_replications = 100;
  /// Replications for the profit reported with the final solution.
  std::size_t report_replications = 10000;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;

  void validate() const;
};

struct HeuristicParams {
  double epsilon = 0.1;
  GainMetric gain = GainMetric::Benefit;

  void validate() const;
};

struct SampleBoundParams {
  double epsilon = 0.1;
  double delta = 0.05;
  double rho = 0.5;
};

/// Smallest sample count x = ceil(ln(2/delta) / (2 eps^2 rho^2)) for which
/// the best sampled network is within eps of the optimum with probability at
/// least 1 - delta. Throws ConfigError for eps, delta outside (0,1) or rho
/// outside (0,1].
std::uint64_t sample_bound(const SampleBoundParams& params);

struct Solution {
  Algorithm algorithm = Algorithm::Random;
  std::vector<NodeId> seeds;  ///< in selection order
  DiffusionNetwork network;
  SpreadEstimate profit;
  double cost = 0.0;
  double elapsed_ms = 0.0;
  std::size_t samples = 0;  ///< networks drawn (SBA), 1 otherwise
  std::vector<std::string> warnings;
  nlohmann::json config;

  /// {algo, seed_set, cost, profit_mean, profit_stderr, R, x, ell, budget,
  ///  rng_seed, elapsed_ms, edges_path}
  nlohmann::json to_json(const std::string& edges_path = {}) const;
};

/// Sampling-based approach: draws `samples` uniform diffusion networks, picks
/// a seed set in each (descending retained out-degree, affordable nodes
/// only), and keeps the network/seed pair with the highest estimated profit.
/// The winner is re-estimated with report_replications.
Solution solve_sba(const Graph& g, const EdgeProbabilities& probs, const CostBenefitTable& cb,
                   const SolverOptions& opts, std::size_t samples);

/// Marginal-gain heuristic on the top-degree network.
Solution solve_heu(const Graph& g, const EdgeProbabilities& probs, const CostBenefitTable& cb,
                   const SolverOptions& opts, const HeuristicParams& params = {});

Solution solve_random(const Graph& g, const EdgeProbabilities& probs, const CostBenefitTable& cb,
                      const SolverOptions& opts);

Solution solve_high_degree(const Graph& g, const EdgeProbabilities& probs,
                           const CostBenefitTable& cb, const SolverOptions& opts);

/// Number of candidates HEU samples when `remaining` budget is left:
/// max(1, ceil((n / k) ln(1/eps))) with k = ceil(remaining / C_min), capped
/// at `pool`.
std::size_t heuristic_sample_size(std::size_t n, double remaining, double min_cost,
                                  double epsilon, std::size_t pool);

}  // namespace pmcsn
