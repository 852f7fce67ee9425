#include "pmcsn/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <numeric>
#include <thread>

#include "pmcsn/detail/cascade.hpp"
#include "pmcsn/errors.hpp"
#include "pmcsn/rng.hpp"

namespace pmcsn {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_instance(const Graph& g, const EdgeProbabilities& probs, const CostBenefitTable& cb) {
  if (g.node_count() == 0) throw std::invalid_argument("solver: empty graph");
  if (!probs.covers(g)) throw std::invalid_argument("solver: probabilities do not cover the graph");
  if (cb.size() != g.node_count())
    throw std::invalid_argument("solver: cost/benefit table does not cover the graph");
}

nlohmann::json config_echo(Algorithm algo, const SolverOptions& opts) {
  return {{"algo", to_string(algo)},
          {"budget", opts.budget},
          {"ell", opts.ell},
          {"search_replications", opts.search_replications},
          {"report_replications", opts.report_replications},
          {"master_seed", opts.master_seed}};
}

// Adds nodes in the given order whenever they still fit the budget.
std::vector<NodeId> take_affordable(std::span<const NodeId> order, const CostBenefitTable& cb,
                                    double budget) {
  std::vector<NodeId> seeds;
  double spent = 0.0;
  for (NodeId u : order) {
    if (budget - spent < cb.min_cost()) break;
    if (spent + cb.cost(u) <= budget) {
      seeds.push_back(u);
      spent += cb.cost(u);
    }
  }
  return seeds;
}

std::vector<NodeId> nodes_by_descending(std::size_t n, auto key) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return key(a) > key(b); });
  return order;
}

SpreadEstimate report_profit(const DiffusionNetwork& net, const EdgeProbabilities& probs,
                             std::span<const NodeId> seeds, const CostBenefitTable& cb,
                             const SolverOptions& opts, std::string_view label) {
  return estimate_profit(net, probs, seeds, cb,
                         {opts.report_replications, derive_seed(opts.master_seed, 0, label),
                          opts.threads});
}

Solution finish(Algorithm algo, const SolverOptions& opts, DiffusionNetwork net,
                std::vector<NodeId> seeds, SpreadEstimate profit, const CostBenefitTable& cb,
                Clock::time_point start) {
  Solution sol{algo, std::move(seeds), std::move(net), profit, 0.0, 0.0, 1, {}, config_echo(algo, opts)};
  sol.cost = cb.cost_of(sol.seeds);
  if (opts.budget < cb.min_cost())
    sol.warnings.push_back("budget below the cheapest node cost; no seed is affordable");
  sol.elapsed_ms = elapsed_ms(start);
  return sol;
}

}  // namespace

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Sba: return "sba";
    case Algorithm::Heu: return "heu";
    case Algorithm::Random: return "random";
    case Algorithm::HighDegree: return "highdeg";
  }
  return "random";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "sba") return Algorithm::Sba;
  if (name == "heu") return Algorithm::Heu;
  if (name == "random") return Algorithm::Random;
  if (name == "highdeg") return Algorithm::HighDegree;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(GainMetric g) noexcept {
  return g == GainMetric::Benefit ? "benefit" : "influence";
}

GainMetric parse_gain_metric(std::string_view name) {
  if (name == "benefit") return GainMetric::Benefit;
  if (name == "influence") return GainMetric::Influence;
  throw ConfigError("unknown gain metric '" + std::string(name) + "'");
}

void SolverOptions::validate() const {
  if (!(budget > 0.0) || !std::isfinite(budget)) throw ConfigError("budget must be positive");
  if (ell == 0) throw ConfigError("ell must be at least 1");
  if (search_replications == 0 || report_replications == 0)
    throw ConfigError("Monte Carlo replication counts must be positive");
}

void HeuristicParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("heuristic epsilon must lie in (0, 1)");
}

std::uint64_t sample_bound(const SampleBoundParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  if (!(p.delta > 0.0 && p.delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (!(p.rho > 0.0 && p.rho <= 1.0)) throw ConfigError("rho must lie in (0, 1]");
  const long double eps = p.epsilon, rho = p.rho;
  const long double x = std::log(2.0L / static_cast<long double>(p.delta)) / (2.0L * eps * eps * rho * rho);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(x)));
}

std::size_t heuristic_sample_size(std::size_t n, double remaining, double min_cost, double epsilon,
                                  std::size_t pool) {
  if (pool == 0) return 0;
  const double k = std::max(1.0, std::ceil(remaining / min_cost));
  const double s = std::ceil(static_cast<double>(n) / k * std::log(1.0 / epsilon));
  const std::size_t size = s < 1.0 ? 1 : static_cast<std::size_t>(std::min(s, static_cast<double>(pool)));
  return std::clamp<std::size_t>(size, 1, pool);
}

nlohmann::json Solution::to_json(const std::string& edges_path) const {
  return {{"algo", pmcsn::to_string(algorithm)},
          {"seed_set", seeds},
          {"cost", cost},
          {"profit_mean", profit.mean},
          {"profit_stderr", profit.std_error},
          {"R", profit.replications},
          {"x", samples},
          {"ell", network.ell()},
          {"budget", config.value("budget", 0.0)},
          {"rng_seed", config.value("master_seed", std::uint64_t{0})},
          {"elapsed_ms", elapsed_ms},
          {"edges_path", edges_path}};
}

// ---------------------------------------------------------------------------

Solution solve_sba(const Graph& g, const EdgeProbabilities& probs, const CostBenefitTable& cb,
                   const SolverOptions& opts, std::size_t samples) {
  opts.validate();
  check_instance(g, probs, cb);
  if (samples == 0) throw ConfigError("SBA sample count must be at least 1");
  const auto start = Clock::now();

  if (opts.budget < cb.min_cost()) {
    RngStream rng = make_stream(opts.master_seed, 0, "sba-network");
    auto net = sample_diffusion_network(g, opts.ell, rng);
    auto sol = finish(Algorithm::Sba, opts, std::move(net), {},
                      {0.0, 0.0, opts.report_replications, EstimateKind::Profit}, cb, start);
    sol.config["samples"] = samples;
    return sol;
  }

  std::optional<DiffusionNetwork> best_net;
  std::vector<NodeId> best_seeds;
  double best_profit = -std::numeric_limits<double>::infinity();

  // One network in memory at a time.
  for (std::size_t i = 0; i < samples; ++i) {
    RngStream rng = make_stream(opts.master_seed, i, "sba-network");
    DiffusionNetwork net = sample_diffusion_network(g, opts.ell, rng);
    auto order = nodes_by_descending(g.node_count(),
                                     [&](NodeId u) { return net.retained_out_degree(u); });
    auto seeds = take_affordable(order, cb, opts.budget);
    auto est = estimate_profit(net, probs, seeds, cb,
                               {opts.search_replications,
                                derive_seed(opts.master_seed, i, "sba-evaluate"), opts.threads});
    if (est.mean > best_profit) {
      best_profit = est.mean;
      best_net = std::move(net);
      best_seeds = std::move(seeds);
    }
  }

  auto profit = report_profit(*best_net, probs, best_seeds, cb, opts, "sba-report");
  auto sol = finish(Algorithm::Sba, opts, *std::move(best_net), std::move(best_seeds), profit, cb, start);
  sol.samples = samples;
  sol.config["samples"] = samples;
  return sol;
}

Solution solve_heu(const Graph& g, const EdgeProbabilities& probs, const CostBenefitTable& cb,
                   const SolverOptions& opts, const HeuristicParams& params) {
  opts.validate();
  params.validate();
  check_instance(g, probs, cb);
  const auto start = Clock::now();
  const std::size_t n = g.node_count();

  DiffusionNetwork net = build_top_degree_network(g, opts.ell);

  std::vector<NodeId> pool(n);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  std::vector<NodeId> seeds;
  double spent = 0.0;
  const std::size_t reps = opts.search_replications;
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(reps)));

  auto affordable = [&](NodeId v) { return spent + cb.cost(v) <= opts.budget; };
  auto weight = [&](NodeId u) { return params.gain == GainMetric::Benefit ? cb.benefit(u) : 1.0; };

  for (std::uint64_t iteration = 0; spent < opts.budget && !pool.empty(); ++iteration) {
    const std::size_t s =
        heuristic_sample_size(n, opts.budget - spent, cb.min_cost(), params.epsilon, pool.size());

    RngStream rng = make_stream(opts.master_seed, iteration, "heu-candidates");
    std::vector<NodeId> shuffled = pool;
    for (std::size_t i = 0; i < s; ++i)
      std::swap(shuffled[i], shuffled[i + uniform_below(rng, shuffled.size() - i)]);

    std::vector<NodeId> candidates;
    for (std::size_t i = 0; i < s; ++i)
      if (affordable(shuffled[i])) candidates.push_back(shuffled[i]);
    if (candidates.empty()) {
      // Retry once with the whole remaining pool before giving up.
      for (NodeId v : pool)
        if (affordable(v)) candidates.push_back(v);
      if (candidates.empty()) break;
    }
    std::sort(candidates.begin(), candidates.end());

    // Marginal gain of each candidate in each replication, over live-arc
    // worlds shared by all candidates of this iteration.
    const std::size_t c = candidates.size();
    std::vector<double> gain(reps * c);
    const std::uint64_t iteration_key = derive_seed(opts.master_seed, iteration, "heu-iteration");
    auto work = [&](std::size_t begin, std::size_t end) {
      detail::CascadeWorkspace base(n), extra(n);
      auto none = [](NodeId) { return false; };
      for (std::size_t r = begin; r < end; ++r) {
        WorldCoins world(derive_seed(iteration_key, r, "heu-world"));
        auto live = [&](ArcId a) { return world.live(a, probs[a]); };
        base.reset();
        detail::run_cascade(net, seeds, live, none, [](NodeId) {}, base);
        auto in_base = [&](NodeId u) { return base.marked(u); };
        for (std::size_t j = 0; j < c; ++j) {
          double total = 0.0;
          extra.reset();
          const NodeId v[1] = {candidates[j]};
          detail::run_cascade(net, v, live, in_base, [&](NodeId u) { total += weight(u); }, extra);
          gain[r * c + j] = total;
        }
      }
    };
    if (threads == 1) {
      work(0, reps);
    } else {
      std::vector<std::jthread> workers;
      const std::size_t chunk = (reps + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        std::size_t b = t * chunk, e = std::min(reps, b + chunk);
        if (b < e) workers.emplace_back(work, b, e);
      }
    }

    std::size_t best = 0;
    double best_ratio = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c; ++j) {
      double total = 0.0;
      for (std::size_t r = 0; r < reps; ++r) total += gain[r * c + j];
      const double ratio = total / static_cast<double>(reps) / cb.cost(candidates[j]);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = j;
      }
    }

    const NodeId chosen = candidates[best];
    seeds.push_back(chosen);
    spent += cb.cost(chosen);
    pool.erase(std::lower_bound(pool.begin(), pool.end(), chosen));
  }

  auto profit = report_profit(net, probs, seeds, cb, opts, "heu-report");
  auto sol = finish(Algorithm::Heu, opts, std::move(net), std::move(seeds), profit, cb, start);
  sol.config["heu_eps"] = params.epsilon;
  sol.config["gain"] = to_string(params.gain);
  return sol;
}

Solution solve_random(const Graph& g, const EdgeProbabilities& probs, const CostBenefitTable& cb,
                      const SolverOptions& opts) {
  opts.validate();
  check_instance(g, probs, cb);
  const auto start = Clock::now();

  RngStream net_rng = make_stream(opts.master_seed, 0, "random-network");
  DiffusionNetwork net = sample_diffusion_network(g, opts.ell, net_rng);

  RngStream order_rng = make_stream(opts.master_seed, 0, "random-order");
  std::vector<NodeId> order(g.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[uniform_below(order_rng, i)]);

  auto seeds = take_affordable(order, cb, opts.budget);
  auto profit = report_profit(net, probs, seeds, cb, opts, "random-report");
  return finish(Algorithm::Random, opts, std::move(net), std::move(seeds), profit, cb, start);
}

Solution solve_high_degree(const Graph& g, const EdgeProbabilities& probs,
                           const CostBenefitTable& cb, const SolverOptions& opts) {
  opts.validate();
  check_instance(g, probs, cb);
  const auto start = Clock::now();

  RngStream net_rng = make_stream(opts.master_seed, 0, "highdeg-network");
  DiffusionNetwork net = sample_diffusion_network(g, opts.ell, net_rng);

  auto order = nodes_by_descending(g.node_count(), [&](NodeId u) { return g.out_degree(u); });
  auto seeds = take_affordable(order, cb, opts.budget);
  auto profit = report_profit(net, probs, seeds, cb, opts, "highdeg-report");
  return finish(Algorithm::HighDegree, opts, std::move(net), std::move(seeds), profit, cb, start);
}

}  // namespace pmcsn
