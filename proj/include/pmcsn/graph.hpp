#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace pmcsn {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

/// Directed graph in compressed sparse row form. Node ids are dense
/// (0..n-1). Out-neighbors of a node are stored in ascending id order, and
/// arc ids are positions in that layout, so arc `a` of node `u` lies in
/// `[out_begin(u), out_end(u))`.
class Graph {
 public:
  Graph() = default;

  /// Throws std::invalid_argument on self-loops, duplicate arcs or ids
  /// outside [0, n). When `undirected_origin` is set, every arc must have
  /// its reverse present.
  Graph(std::size_t node_count, std::vector<std::pair<NodeId, NodeId>> arcs,
        bool undirected_origin = false);

  std::size_t node_count() const noexcept { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
  std::size_t arc_count() const noexcept { return targets_.size(); }
  bool undirected_origin() const noexcept { return undirected_; }
  /// Undirected edge count when loaded undirected, arc count otherwise.
  std::size_t edge_count() const noexcept { return undirected_ ? arc_count() / 2 : arc_count(); }

  std::size_t out_degree(NodeId u) const { return out_offsets_[u + 1] - out_offsets_[u]; }
  std::size_t in_degree(NodeId u) const { return in_offsets_[u + 1] - in_offsets_[u]; }

  ArcId out_begin(NodeId u) const { return static_cast<ArcId>(out_offsets_[u]); }
  ArcId out_end(NodeId u) const { return static_cast<ArcId>(out_offsets_[u + 1]); }

  std::span<const NodeId> out_neighbors(NodeId u) const {
    return {targets_.data() + out_offsets_[u], out_degree(u)};
  }
  /// Arc ids entering `u`, ordered by source id.
  std::span<const ArcId> in_arcs(NodeId u) const {
    return {in_arcs_.data() + in_offsets_[u], in_degree(u)};
  }

  NodeId arc_source(ArcId a) const { return sources_[a]; }
  NodeId arc_target(ArcId a) const { return targets_[a]; }
  std::optional<ArcId> find_arc(NodeId u, NodeId v) const;

  /// Degree used to rank nodes for influence: out-degree. For graphs loaded
  /// undirected this equals the undirected degree.
  std::size_t influence_degree(NodeId u) const { return out_degree(u); }

  /// Nodes with out-degree strictly below `ell` and at least `ell`.
  std::vector<NodeId> nodes_below_cap(std::size_t ell) const;
  std::vector<NodeId> nodes_at_or_above_cap(std::size_t ell) const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> targets_;
  std::vector<NodeId> sources_;
  std::vector<std::size_t> in_offsets_;
  std::vector<ArcId> in_arcs_;
  bool undirected_ = false;
};

struct LoadResult {
  Graph graph;
  /// Original token of each node, indexed by dense id.
  std::vector<std::string> labels;
  std::size_t lines_read = 0;
  std::size_t edge_lines = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Reads a SNAP-style whitespace edge list. Lines starting with '#' and blank
/// lines are skipped. Labels are remapped to 0..n-1 in first-appearance order.
/// Throws DataError on an unreadable file, a malformed line (with its line
/// number) or a file without any node.
LoadResult load_edge_list(const std::filesystem::path& path, bool directed);
LoadResult parse_edge_list(std::string_view text, bool directed);

enum class DegreeMetric {
  Total,       ///< in + out; for undirected-origin graphs the undirected degree
  Out,
  Undirected,  ///< distinct neighbors ignoring direction
};

struct DegreeStats {
  std::size_t max = 0;
  double average = 0.0;
};

DegreeStats degree_stats(const Graph& g, DegreeMetric metric = DegreeMetric::Total);

// ---------------------------------------------------------------------------
// Edge probabilities

enum class ProbabilityModel { Trivalency, WeightedCascade, Custom };
enum class WeightedCascadeMode { SourceDegree, TargetInDegree };

std::string_view to_string(ProbabilityModel m) noexcept;
std::string_view to_string(WeightedCascadeMode m) noexcept;

/// Influence probability of every arc, indexed by ArcId. Values lie in (0, 1].
class EdgeProbabilities {
 public:
  EdgeProbabilities() = default;
  /// Throws std::invalid_argument if any value is outside (0, 1].
  EdgeProbabilities(std::vector<double> values, ProbabilityModel model,
                    std::optional<std::uint64_t> seed = std::nullopt,
                    WeightedCascadeMode wc_mode = WeightedCascadeMode::SourceDegree);

  /// All arcs at the same probability; handy for hand-built instances.
  static EdgeProbabilities constant(const Graph& g, double p);

  double operator[](ArcId a) const { return values_[a]; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  ProbabilityModel model() const noexcept { return model_; }
  WeightedCascadeMode wc_mode() const noexcept { return wc_mode_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }

  bool covers(const Graph& g) const noexcept { return values_.size() == g.arc_count(); }

  nlohmann::json to_json() const;
  static EdgeProbabilities from_json(const nlohmann::json& j);

  bool operator==(const EdgeProbabilities&) const = default;

 private:
  std::vector<double> values_;
  ProbabilityModel model_ = ProbabilityModel::Custom;
  std::optional<std::uint64_t> seed_;
  WeightedCascadeMode wc_mode_ = WeightedCascadeMode::SourceDegree;
};

inline constexpr double kTrivalencyValues[3] = {0.1, 0.01, 0.001};

/// Each arc independently takes one of {0.1, 0.01, 0.001} with equal
/// probability. Deterministic in `seed`.
EdgeProbabilities assign_trivalency(const Graph& g, std::uint64_t seed);

EdgeProbabilities assign_weighted_cascade(
    const Graph& g, WeightedCascadeMode mode = WeightedCascadeMode::SourceDegree);

// ---------------------------------------------------------------------------
// Cost and benefit

struct CostModel {
  enum class Kind { Uniform, DegreeProportional };
  Kind kind = Kind::DegreeProportional;
  double base = 1.0;   ///< uniform value, or intercept
  double slope = 0.1;  ///< per out-arc increment (degree-proportional only)

  static CostModel uniform(double c) { return {Kind::Uniform, c, 0.0}; }
  static CostModel degree_proportional(double base, double gamma) {
    return {Kind::DegreeProportional, base, gamma};
  }
  /// Accepts "uniform:C" and "degree:BASE,GAMMA" (alias "degree-proportional").
  static CostModel parse(std::string_view text);
  std::string describe() const;
  void validate() const;
};

struct BenefitModel {
  enum class Kind { Uniform, SeededUniform };
  Kind kind = Kind::Uniform;
  double lo = 10.0;  ///< uniform value, or lower bound
  double hi = 10.0;

  static BenefitModel uniform(double b) { return {Kind::Uniform, b, b}; }
  static BenefitModel seeded_uniform(double lo, double hi) {
    return {Kind::SeededUniform, lo, hi};
  }
  /// Accepts "uniform:B" and "range:LO,HI" (alias "seeded-uniform").
  static BenefitModel parse(std::string_view text);
  std::string describe() const;
  void validate() const;
};

/// Per-node selection cost C(u) and benefit b(u), both strictly positive.
class CostBenefitTable {
 public:
  CostBenefitTable() = default;
  CostBenefitTable(std::vector<double> costs, std::vector<double> benefits);

  static CostBenefitTable uniform(std::size_t n, double cost, double benefit);

  double cost(NodeId u) const { return costs_[u]; }
  double benefit(NodeId u) const { return benefits_[u]; }
  std::span<const double> costs() const noexcept { return costs_; }
  std::span<const double> benefits() const noexcept { return benefits_; }
  std::size_t size() const noexcept { return costs_.size(); }

  /// Sum of costs in the given order.
  double cost_of(std::span<const NodeId> nodes) const;
  double min_cost() const noexcept { return min_cost_; }
  double total_benefit() const noexcept { return total_benefit_; }
  /// Upper bound on achievable profit: sum of all benefits minus the
  /// cheapest selection cost.
  double max_profit_bound() const noexcept { return total_benefit_ - min_cost_; }

  std::string model_description;
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const;
  static CostBenefitTable from_json(const nlohmann::json& j);

  bool operator==(const CostBenefitTable&) const = default;

 private:
  std::vector<double> costs_;
  std::vector<double> benefits_;
  double min_cost_ = 0.0;
  double total_benefit_ = 0.0;
};

CostBenefitTable assign_cost_benefit(const Graph& g, const CostModel& cost,
                                     const BenefitModel& benefit, std::uint64_t seed);

}  // namespace pmcsn
