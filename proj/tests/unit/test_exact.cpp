#include <cmath>
#include <random>

#include "doctest.h"

#include "pmcsn/diffusion.hpp"
#include "pmcsn/errors.hpp"
#include "pmcsn/exact.hpp"
#include "support/oracle.hpp"

using namespace pmcsn;

namespace {

Graph star() { return Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}); }

}  // namespace

TEST_CASE("exact benefit on a chain") {
  const Graph g(3, {{0, 1}, {1, 2}});
  const auto net = full_network(g, 1);
  const auto p = EdgeProbabilities::constant(g, 0.5);
  const auto cb = CostBenefitTable::uniform(3, 1.0, 1.0);
  const std::vector<NodeId> s{0};
  const auto r = exact_benefit(net, p, cb, s);
  CHECK(r.to_double() == 1.75);
  CHECK(r.worlds == 4);
  CHECK(abs(r.probability_mass - 1) < ExactReal("1e-40"));
  CHECK(exact_benefit(net, p, cb, {}).to_double() == 0.0);
  CHECK(exact_profit(net, p, cb, s).convert_to<double>() == 0.75);
}

TEST_CASE("exact benefit with certain arcs") {
  const Graph g(5, {{0, 1}, {1, 2}, {3, 4}});
  const auto net = full_network(g, 2);
  const auto p = EdgeProbabilities::constant(g, 1.0);
  const CostBenefitTable cb({1, 1, 1, 1, 1}, {1, 2, 3, 4, 5});
  const std::vector<NodeId> s{1};
  CHECK(exact_benefit(net, p, cb, s).to_double() == 5.0);
}

TEST_CASE("exact benefit arc guard") {
  std::vector<std::pair<NodeId, NodeId>> arcs;
  for (NodeId v = 1; v <= 21; ++v) arcs.emplace_back(0, v);
  const Graph g(22, arcs);
  const auto net = full_network(g, 30);
  const auto p = EdgeProbabilities::constant(g, 0.5);
  const auto cb = CostBenefitTable::uniform(22, 1, 1);
  const std::vector<NodeId> s{0};
  CHECK_THROWS_AS(exact_benefit(net, p, cb, s), LimitExceeded);
}

TEST_CASE("exact benefit matches the reference enumeration") {
  std::mt19937_64 gen(101);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = testing::random_graph(gen, 6, 0.4, 12);
    const auto p = testing::random_probs(gen, g);
    const auto cb = testing::random_table(gen, 6);
    auto rng = make_stream(trial, 0, "t");
    const auto net = sample_diffusion_network(g, 2, rng);
    const std::vector<NodeId> s{static_cast<NodeId>(trial % 6)};
    const auto r = exact_benefit(net, p, cb, s);
    CHECK(std::abs(r.to_double() - static_cast<double>(testing::brute_benefit(net, p, cb, s))) < 1e-12);
    CHECK(abs(r.probability_mass - 1) < ExactReal("1e-12"));
  }
}

TEST_CASE("exact benefit is monotone in the seed set") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = testing::random_graph(gen, 5, 0.5, 10);
    const auto p = testing::random_probs(gen, g);
    const auto cb = testing::random_table(gen, 5);
    const auto net = full_network(g, 4);
    for (std::uint32_t small = 0; small < 32; ++small) {
      for (std::uint32_t big = small; big < 32; big = (big + 1) | small) {
        std::vector<NodeId> a, b;
        for (NodeId u = 0; u < 5; ++u) {
          if (small >> u & 1U) a.push_back(u);
          if (big >> u & 1U) b.push_back(u);
        }
        CHECK(exact_benefit(net, p, cb, a).value <= exact_benefit(net, p, cb, b).value);
      }
    }
  }
}

TEST_CASE("expected benefit over all diffusion networks") {
  SUBCASE("single network") {
    const Graph g(3, {{0, 1}, {1, 2}});
    const auto p = EdgeProbabilities::constant(g, 0.5);
    const auto cb = CostBenefitTable::uniform(3, 1, 1);
    const std::vector<NodeId> s{0};
    const auto r = exact_expected_benefit(g, 1, p, cb, s);
    CHECK(r.networks == 1);
    CHECK(r.value == exact_benefit(full_network(g, 1), p, cb, s).value);
  }
  SUBCASE("three networks") {
    // 0 -> {1,2,3}, 1 -> 3 ; ell = 2
    const Graph g(4, {{0, 1}, {0, 2}, {0, 3}, {1, 3}});
    const EdgeProbabilities p({0.5, 0.4, 0.3, 0.9}, ProbabilityModel::Custom);
    const CostBenefitTable cb({1, 1, 1, 1}, {1, 2, 3, 4});
    const std::vector<NodeId> s{0};
    const auto r = exact_expected_benefit(g, 2, p, cb, s);
    CHECK(r.networks == 3);
    // {1,2}: 1 + .5*2 + .4*3 + .5*.9*4 ; {1,3}: 1 + .5*2 + (1-(1-.3)(1-.45))*4 ; {2,3}: 1 + .4*3 + .3*4
    const double a = 1 + 1.0 + 1.2 + 1.8;
    const double b = 1 + 1.0 + (1 - 0.7 * 0.55) * 4;
    const double c = 1 + 1.2 + 1.2;
    CHECK(std::abs(r.to_double() - (a + b + c) / 3) < 1e-12);
    CHECK(exact_expected_benefit(g, 2, p, cb, {}).to_double() == 0.0);
  }
}

TEST_CASE("optimum") {
  SUBCASE("star") {
    const auto g = star();
    const auto p = EdgeProbabilities::constant(g, 1.0);
    const auto cb = CostBenefitTable::uniform(5, 1.0, 1.0);
    const auto opt = exact_optimum(g, 4, p, cb, 1.0);
    CHECK(opt.seeds == std::vector<NodeId>{0});
    CHECK(opt.profit == 4);
    CHECK(opt.subsets_feasible == 6);
  }
  SUBCASE("budget below the cheapest node") {
    const auto g = star();
    const auto p = EdgeProbabilities::constant(g, 0.5);
    const auto cb = CostBenefitTable::uniform(5, 2.0, 1.0);
    const auto opt = exact_optimum(g, 2, p, cb, 1.0);
    CHECK(opt.seeds.empty());
    CHECK(opt.profit == 0);
    CHECK(opt.network_index == 0);
  }
  SUBCASE("matches the reference search") {
    std::mt19937_64 gen(404);
    for (int trial = 0; trial < 8; ++trial) {
      const auto g = testing::random_graph(gen, 5, 0.4, 9);
      const auto p = testing::random_probs(gen, g);
      const auto cb = testing::random_table(gen, 5);
      const double budget = 2.0 + trial % 4;
      const auto opt = exact_optimum(g, 2, p, cb, budget);
      const auto ref = testing::brute_optimum(g, 2, p, cb, budget);
      CHECK(std::abs(opt.profit.convert_to<double>() - static_cast<double>(ref)) < 1e-9);
      CHECK(cb.cost_of(opt.seeds) <= budget);
      CHECK_FALSE(validate_diffusion_network(g, opt.network, 2).has_value());
      const auto check = exact_profit(opt.network, p, cb, opt.seeds);
      CHECK(abs(check - opt.profit) < ExactReal("1e-30"));
    }
  }
  SUBCASE("node guard") {
    const Graph g(13, {{0, 1}});
    const auto p = EdgeProbabilities::constant(g, 0.5);
    const auto cb = CostBenefitTable::uniform(13, 1, 1);
    CHECK_THROWS_AS(exact_optimum(g, 1, p, cb, 3.0), LimitExceeded);
  }
}
