#include <cmath>

#include "doctest.h"

#include "pmcsn/diffusion.hpp"
#include "pmcsn/rng.hpp"
#include "support/oracle.hpp"

using namespace pmcsn;

namespace {

const Graph& chain() {
  static const Graph g(3, {{0, 1}, {1, 2}});
  return g;
}

}  // namespace

TEST_CASE("cascade with certain arcs reaches the closure") {
  const Graph g(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {1, 5}, {5, 3}});
  const auto net = full_network(g, 3);
  const auto p = EdgeProbabilities::constant(g, 1.0);
  auto rng = make_stream(1, 0, "t");
  const std::vector<NodeId> s{2};
  const auto act = simulate_ic_once(net, p, s, rng);
  const auto closure = reachable_from(net, s);
  CHECK(std::vector<NodeId>(act.nodes().begin(), act.nodes().end()) == closure);
  CHECK(act.size() == 6);
}

TEST_CASE("empty seeds") {
  const auto net = full_network(chain(), 1);
  const auto p = EdgeProbabilities::constant(chain(), 0.5);
  auto rng = make_stream(1, 0, "t");
  CHECK(simulate_ic_once(net, p, {}, rng).empty());
  const auto e = estimate_spread(net, p, {}, {100, 1, 1});
  CHECK(e.mean == 0.0);
  CHECK(e.std_error == 0.0);
  const auto cb = CostBenefitTable::uniform(3, 1, 1);
  CHECK(estimate_benefit(net, p, {}, cb, {100, 1, 1}).mean == 0.0);
  CHECK(estimate_profit(net, p, {}, cb, {100, 1, 1}).mean == 0.0);
}

TEST_CASE("chain activation frequency") {
  const auto net = full_network(chain(), 1);
  const auto p = EdgeProbabilities::constant(chain(), 0.5);
  auto rng = make_stream(5, 0, "chain");
  const std::vector<NodeId> s{0};
  const std::size_t runs = 20000;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < runs; ++i) hits += simulate_ic_once(net, p, s, rng).contains(2);
  const double se = std::sqrt(0.25 * 0.75 / runs);
  CHECK(std::abs(static_cast<double>(hits) / runs - 0.25) <= 3 * se);
}

TEST_CASE("chain spread, benefit and profit estimates") {
  const auto net = full_network(chain(), 1);
  const auto p = EdgeProbabilities::constant(chain(), 0.5);
  const std::vector<NodeId> s{0};
  const MonteCarloOptions mc{20000, 11, 1};
  const auto cb = CostBenefitTable::uniform(3, 1.0, 1.0);
  const double exact = static_cast<double>(testing::brute_benefit(net, p, cb, s));
  CHECK(exact == doctest::Approx(1.75));

  const auto sigma = estimate_spread(net, p, s, mc);
  CHECK(sigma.replications == 20000);
  CHECK(sigma.mean >= 1.0);
  CHECK(std::abs(sigma.mean - 1.75) <= 3 * sigma.std_error);

  const auto beta = estimate_benefit(net, p, s, cb, mc);
  CHECK(std::abs(beta.mean - 1.75) <= 3 * beta.std_error);

  const auto phi = estimate_profit(net, p, s, cb, mc);
  CHECK(std::abs(phi.mean - 0.75) <= 3 * phi.std_error);
  CHECK(phi.mean == beta.mean - 1.0);
  CHECK(phi.std_error == beta.std_error);
}

TEST_CASE("arcless graph") {
  const Graph g(5, {});
  const auto net = full_network(g, 1);
  const EdgeProbabilities p({}, ProbabilityModel::Custom);
  const std::vector<NodeId> one{3};
  CHECK(estimate_spread(net, p, one, {37, 4, 1}).mean == 1.0);

  const auto cb = CostBenefitTable::uniform(5, 2.0, 5.0);
  const std::vector<NodeId> s{0, 2, 4};
  CHECK(estimate_benefit(net, p, s, cb, {50, 4, 1}).mean == 15.0);
  const auto phi = estimate_profit(net, p, s, cb, {50, 4, 1});
  CHECK(phi.mean == 9.0);
  CHECK(phi.std_error == 0.0);
}

TEST_CASE("estimator errors") {
  const auto net = full_network(chain(), 1);
  const auto p = EdgeProbabilities::constant(chain(), 0.5);
  const std::vector<NodeId> bad{7};
  const std::vector<NodeId> ok{0};
  auto rng = make_stream(1, 0, "t");
  CHECK_THROWS_AS(simulate_ic_once(net, p, bad, rng), std::out_of_range);
  CHECK_THROWS(estimate_spread(net, p, ok, {0, 1, 1}));
}

TEST_CASE("estimates do not depend on thread count") {
  std::mt19937_64 gen(3);
  const auto g = testing::random_graph(gen, 40, 0.15, 400);
  const auto p = testing::random_probs(gen, g);
  const auto cb = testing::random_table(gen, g.node_count());
  auto rng = make_stream(8, 0, "t");
  const auto net = sample_diffusion_network(g, 3, rng);
  const std::vector<NodeId> s{0, 5, 9};
  const auto a = estimate_profit(net, p, s, cb, {3000, 99, 1});
  const auto b = estimate_profit(net, p, s, cb, {3000, 99, 4});
  const auto c = estimate_profit(net, p, s, cb, {3000, 99, 7});
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.mean == c.mean);
}

TEST_CASE("active sets contain the seeds and stay inside the reachable closure") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testing::random_graph(gen, 12, 0.25, 40);
    const auto p = testing::random_probs(gen, g);
    auto rng = make_stream(trial, 0, "t");
    const auto net = sample_diffusion_network(g, 2, rng);
    const std::vector<NodeId> s{static_cast<NodeId>(trial % 12), static_cast<NodeId>((trial * 7) % 12)};
    const auto closure = reachable_from(net, s);
    for (int r = 0; r < 20; ++r) {
      const auto act = simulate_ic_once(net, p, s, rng);
      for (auto u : s) CHECK(act.contains(u));
      for (auto u : act.nodes()) CHECK(std::binary_search(closure.begin(), closure.end(), u));
    }
  }
}
