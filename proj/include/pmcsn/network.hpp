#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

#include "pmcsn/graph.hpp"
#include "pmcsn/rng.hpp"

namespace pmcsn {

using BigCount = boost::multiprecision::cpp_int;

/// A subgraph G_D = (V, E') of a parent graph in which every node keeps at
/// most `ell` of its out-arcs. Kept arcs are referenced by parent ArcId and
/// listed per node in ascending order. The parent graph must outlive the
/// network.
///
/// The constructor checks only that each listed arc leaves the node it is
/// filed under; the cap rules are checked by validate_diffusion_network so
/// that malformed networks can still be represented and reported.
class DiffusionNetwork {
 public:
  DiffusionNetwork(const Graph& g, std::size_t ell, std::vector<std::vector<ArcId>> kept);

  const Graph& graph() const noexcept { return *graph_; }
  std::size_t ell() const noexcept { return ell_; }
  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }

  std::span<const ArcId> kept_arcs(NodeId u) const {
    return {arcs_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
  }
  std::size_t retained_out_degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  /// All kept arc ids, grouped by source node.
  std::span<const ArcId> arcs() const noexcept { return arcs_; }

  std::vector<std::pair<NodeId, NodeId>> arc_list() const;

  /// {"ell": L, "n": N, "arcs": [[u, v], ...]} in dense node ids.
  nlohmann::json to_json() const;

  bool operator==(const DiffusionNetwork& other) const {
    return graph_ == other.graph_ && ell_ == other.ell_ && offsets_ == other.offsets_ &&
           arcs_ == other.arcs_;
  }

 private:
  const Graph* graph_;
  std::size_t ell_;
  std::vector<std::size_t> offsets_;
  std::vector<ArcId> arcs_;
};

/// Keeps a uniformly random ell-subset of out-arcs at every node with
/// out-degree above `ell`, and all arcs elsewhere. The resulting network is
/// uniform over the set of all diffusion networks.
DiffusionNetwork sample_diffusion_network(const Graph& g, std::size_t ell, RngStream& rng);

/// Keeps, at every node, the arcs towards its `ell` out-neighbors of highest
/// degree (Graph::influence_degree), ties to the lower node id.
DiffusionNetwork build_top_degree_network(const Graph& g, std::size_t ell);

/// The unrestricted network: every arc kept. Valid when ell >= max out-degree.
DiffusionNetwork full_network(const Graph& g, std::size_t ell);

/// Number of distinct diffusion networks: product over capped nodes of
/// binomial(out_degree, ell).
BigCount count_diffusion_networks(const Graph& g, std::size_t ell);

/// Visits every diffusion network exactly once in canonical order: each
/// capped node (ascending id) picks an ell-combination of its out-arcs, the
/// tuple of choices advances lexicographically with the highest node id
/// changing fastest. Throws LimitExceeded when the count exceeds `cap`.
void for_each_diffusion_network(const Graph& g, std::size_t ell, std::size_t cap,
                                const std::function<void(const DiffusionNetwork&)>& visit);

std::vector<DiffusionNetwork> enumerate_diffusion_networks(const Graph& g, std::size_t ell,
                                                           std::size_t cap);

struct Violation {
  NodeId node;
  std::string reason;
};

/// Checks E' subset of E, the out-degree cap, exactly-ell retention for
/// capped nodes and full retention for the others. Returns the first
/// violation in node order, or nullopt.
std::optional<Violation> validate_arc_list(const Graph& g,
                                           std::span<const std::pair<NodeId, NodeId>> arcs,
                                           std::size_t ell);
std::optional<Violation> validate_diffusion_network(const Graph& g, const DiffusionNetwork& net,
                                                    std::size_t ell);

/// Arc pairs from a network JSON document (see DiffusionNetwork::to_json).
std::vector<std::pair<NodeId, NodeId>> arc_list_from_json(const nlohmann::json& j);

}  // namespace pmcsn
