#include "pmcsn/network.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pmcsn/errors.hpp"

namespace pmcsn {

namespace {

void require_positive_cap(std::size_t ell) {
  if (ell == 0) throw std::invalid_argument("ell must be at least 1");
}

std::vector<ArcId> all_arcs(const Graph& g, NodeId u) {
  std::vector<ArcId> arcs(g.out_degree(u));
  std::iota(arcs.begin(), arcs.end(), g.out_begin(u));
  return arcs;
}

BigCount binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Next k-combination of {0..n-1} in lexicographic order; false on wrap.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  std::iota(c.begin(), c.end(), std::size_t{0});
  return false;
}

}  // namespace

DiffusionNetwork::DiffusionNetwork(const Graph& g, std::size_t ell,
                                   std::vector<std::vector<ArcId>> kept)
    : graph_(&g), ell_(ell) {
  if (kept.size() != g.node_count())
    throw std::invalid_argument("diffusion network: one arc list per node required");
  offsets_.reserve(kept.size() + 1);
  offsets_.push_back(0);
  for (NodeId u = 0; u < kept.size(); ++u) {
    auto& list = kept[u];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end())
      throw std::invalid_argument("diffusion network: arc listed twice");
    for (ArcId a : list) {
      if (a >= g.arc_count() || g.arc_source(a) != u)
        throw std::invalid_argument("diffusion network: arc filed under the wrong node");
      arcs_.push_back(a);
    }
    offsets_.push_back(arcs_.size());
  }
}

std::vector<std::pair<NodeId, NodeId>> DiffusionNetwork::arc_list() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(arcs_.size());
  for (ArcId a : arcs_) out.emplace_back(graph_->arc_source(a), graph_->arc_target(a));
  return out;
}

nlohmann::json DiffusionNetwork::to_json() const {
  nlohmann::json j;
  j["ell"] = ell_;
  j["n"] = node_count();
  auto arcs = nlohmann::json::array();
  for (auto [u, v] : arc_list()) arcs.push_back({u, v});
  j["arcs"] = std::move(arcs);
  return j;
}

std::vector<std::pair<NodeId, NodeId>> arc_list_from_json(const nlohmann::json& j) {
  std::vector<std::pair<NodeId, NodeId>> arcs;
  for (const auto& a : j.at("arcs")) arcs.emplace_back(a.at(0).get<NodeId>(), a.at(1).get<NodeId>());
  return arcs;
}

DiffusionNetwork sample_diffusion_network(const Graph& g, std::size_t ell, RngStream& rng) {
  require_positive_cap(ell);
  std::vector<std::vector<ArcId>> kept(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto arcs = all_arcs(g, u);
    if (arcs.size() > ell) {
      // Partial Fisher-Yates: the first ell slots end up a uniform ell-subset.
      for (std::size_t i = 0; i < ell; ++i) {
        std::size_t j = i + uniform_below(rng, arcs.size() - i);
        std::swap(arcs[i], arcs[j]);
      }
      arcs.resize(ell);
    }
    kept[u] = std::move(arcs);
  }
  return DiffusionNetwork(g, ell, std::move(kept));
}

DiffusionNetwork build_top_degree_network(const Graph& g, std::size_t ell) {
  require_positive_cap(ell);
  std::vector<std::vector<ArcId>> kept(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto arcs = all_arcs(g, u);
    if (arcs.size() > ell) {
      std::partial_sort(arcs.begin(), arcs.begin() + static_cast<std::ptrdiff_t>(ell), arcs.end(),
                        [&](ArcId a, ArcId b) {
                          NodeId x = g.arc_target(a), y = g.arc_target(b);
                          std::size_t dx = g.influence_degree(x), dy = g.influence_degree(y);
                          return dx != dy ? dx > dy : x < y;
                        });
      arcs.resize(ell);
    }
    kept[u] = std::move(arcs);
  }
  return DiffusionNetwork(g, ell, std::move(kept));
}

DiffusionNetwork full_network(const Graph& g, std::size_t ell) {
  require_positive_cap(ell);
  std::vector<std::vector<ArcId>> kept(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) kept[u] = all_arcs(g, u);
  return DiffusionNetwork(g, ell, std::move(kept));
}

BigCount count_diffusion_networks(const Graph& g, std::size_t ell) {
  require_positive_cap(ell);
  BigCount total = 1;
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (g.out_degree(u) > ell) total *= binomial(g.out_degree(u), ell);
  return total;
}

void for_each_diffusion_network(const Graph& g, std::size_t ell, std::size_t cap,
                                const std::function<void(const DiffusionNetwork&)>& visit) {
  const BigCount count = count_diffusion_networks(g, ell);
  if (count > cap)
    throw LimitExceeded("diffusion network enumeration: |alpha(G)| = " + count.str() +
                        " exceeds cap " + std::to_string(cap));

  std::vector<NodeId> capped;
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (g.out_degree(u) > ell) capped.push_back(u);

  std::vector<std::vector<std::size_t>> choice(capped.size(), std::vector<std::size_t>(ell));
  for (auto& c : choice) std::iota(c.begin(), c.end(), std::size_t{0});

  std::vector<std::vector<ArcId>> base(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (g.out_degree(u) <= ell) base[u] = all_arcs(g, u);

  while (true) {
    auto kept = base;
    for (std::size_t i = 0; i < capped.size(); ++i) {
      NodeId u = capped[i];
      for (std::size_t pos : choice[i]) kept[u].push_back(g.out_begin(u) + static_cast<ArcId>(pos));
    }
    visit(DiffusionNetwork(g, ell, std::move(kept)));

    std::size_t i = capped.size();
    bool advanced = false;
    while (i > 0) {
      --i;
      if (next_combination(choice[i], g.out_degree(capped[i]))) {
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

std::vector<DiffusionNetwork> enumerate_diffusion_networks(const Graph& g, std::size_t ell,
                                                           std::size_t cap) {
  std::vector<DiffusionNetwork> out;
  for_each_diffusion_network(g, ell, cap, [&](const DiffusionNetwork& net) { out.push_back(net); });
  return out;
}

std::optional<Violation> validate_arc_list(const Graph& g,
                                           std::span<const std::pair<NodeId, NodeId>> arcs,
                                           std::size_t ell) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<NodeId>> per_node(n);
  for (auto [u, v] : arcs) {
    if (u >= n) return Violation{u, "arc source outside the graph"};
    if (v >= n || !g.find_arc(u, v))
      return Violation{u, "arc (" + std::to_string(u) + "," + std::to_string(v) + ") not in E"};
    per_node[u].push_back(v);
  }
  for (NodeId u = 0; u < n; ++u) {
    auto& kept = per_node[u];
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
      return Violation{u, "arc retained twice"};
    const std::size_t d = g.out_degree(u);
    if (kept.size() > ell)
      return Violation{u, "retains " + std::to_string(kept.size()) + " arcs, cap is " +
                              std::to_string(ell)};
    if (d >= ell && kept.size() != ell)
      return Violation{u, "out-degree " + std::to_string(d) + " >= cap but retains " +
                              std::to_string(kept.size()) + " arcs"};
    if (d < ell && kept.size() != d)
      return Violation{u, "below cap but retains " + std::to_string(kept.size()) + " of " +
                              std::to_string(d) + " arcs"};
  }
  return std::nullopt;
}

std::optional<Violation> validate_diffusion_network(const Graph& g, const DiffusionNetwork& net,
                                                    std::size_t ell) {
  if (&net.graph() != &g && !(net.graph() == g))
    return Violation{0, "network belongs to a different graph"};
  auto arcs = net.arc_list();
  return validate_arc_list(g, arcs, ell);
}

}  // namespace pmcsn
