#include "pmcsn/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "pmcsn/errors.hpp"
#include "pmcsn/rng.hpp"

namespace pmcsn {

namespace {

constexpr int kTableFormatVersion = 1;

std::uint64_t arc_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

Graph::Graph(std::size_t node_count, std::vector<std::pair<NodeId, NodeId>> arcs,
             bool undirected_origin)
    : undirected_(undirected_origin) {
  if (node_count > std::numeric_limits<NodeId>::max())
    throw std::invalid_argument("graph: too many nodes");
  if (arcs.size() > std::numeric_limits<ArcId>::max())
    throw std::invalid_argument("graph: too many arcs");
  for (const auto& [u, v] : arcs) {
    if (u >= node_count || v >= node_count)
      throw std::invalid_argument("graph: arc endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop on node " + std::to_string(u));
  }
  std::sort(arcs.begin(), arcs.end());
  if (std::adjacent_find(arcs.begin(), arcs.end()) != arcs.end())
    throw std::invalid_argument("graph: duplicate arc");
  if (undirected_) {
    for (const auto& [u, v] : arcs) {
      if (!std::binary_search(arcs.begin(), arcs.end(), std::pair{v, u}))
        throw std::invalid_argument("graph: undirected graph is missing a reverse arc");
    }
  }

  out_offsets_.assign(node_count + 1, 0);
  in_offsets_.assign(node_count + 1, 0);
  for (const auto& [u, v] : arcs) {
    ++out_offsets_[u + 1];
    ++in_offsets_[v + 1];
  }
  std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());

  targets_.reserve(arcs.size());
  sources_.reserve(arcs.size());
  for (const auto& [u, v] : arcs) {
    sources_.push_back(u);
    targets_.push_back(v);
  }

  // Arcs are sorted by source, so filling in-lists in arc order keeps each
  // in-list ordered by source id.
  in_arcs_.resize(arcs.size());
  std::vector<std::size_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  for (ArcId a = 0; a < targets_.size(); ++a) in_arcs_[cursor[targets_[a]]++] = a;
}

std::optional<ArcId> Graph::find_arc(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return std::nullopt;
  auto nb = out_neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return static_cast<ArcId>(out_offsets_[u] + (it - nb.begin()));
}

std::vector<NodeId> Graph::nodes_below_cap(std::size_t ell) const {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < node_count(); ++u)
    if (out_degree(u) < ell) out.push_back(u);
  return out;
}

std::vector<NodeId> Graph::nodes_at_or_above_cap(std::size_t ell) const {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < node_count(); ++u)
    if (out_degree(u) >= ell) out.push_back(u);
  return out;
}

// ---------------------------------------------------------------------------

LoadResult parse_edge_list(std::string_view text, bool directed) {
  LoadResult result;
  std::unordered_map<std::string, NodeId> ids;
  auto intern = [&](std::string_view token) {
    auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<NodeId>(ids.size()));
    if (inserted) result.labels.emplace_back(token);
    return it->second;
  };

  std::vector<std::pair<NodeId, NodeId>> arcs;
  std::unordered_set<std::uint64_t> seen;

  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (line[first] == '#') continue;

    std::string_view tokens[3];
    int count = 0;
    std::size_t i = first;
    while (i < line.size() && count < 3) {
      std::size_t j = line.find_first_of(" \t", i);
      if (j == std::string_view::npos) j = line.size();
      tokens[count++] = line.substr(i, j - i);
      i = line.find_first_not_of(" \t", j);
      if (i == std::string_view::npos) break;
    }
    if (count != 2)
      throw DataError("malformed edge list line " + std::to_string(line_no) +
                      ": expected two node tokens");

    ++result.edge_lines;
    NodeId u = intern(tokens[0]);
    NodeId v = intern(tokens[1]);
    if (u == v) {
      ++result.self_loops_dropped;
      continue;
    }
    if (!directed && u > v) std::swap(u, v);
    if (!seen.insert(arc_key(u, v)).second) {
      ++result.duplicates_dropped;
      continue;
    }
    arcs.emplace_back(u, v);
    if (!directed) arcs.emplace_back(v, u);
  }
  result.lines_read = line_no;
  if (ids.empty()) throw DataError("edge list contains no nodes");
  result.graph = Graph(ids.size(), std::move(arcs), !directed);
  return result;
}

LoadResult load_edge_list(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read edge list '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw DataError("error while reading '" + path.string() + "'");
  return parse_edge_list(buffer.str(), directed);
}

DegreeStats degree_stats(const Graph& g, DegreeMetric metric) {
  const std::size_t n = g.node_count();
  DegreeStats stats;
  if (n == 0) return stats;
  std::size_t total = 0;
  std::vector<NodeId> scratch;
  for (NodeId u = 0; u < n; ++u) {
    std::size_t d = 0;
    switch (metric) {
      case DegreeMetric::Out:
        d = g.out_degree(u);
        break;
      case DegreeMetric::Total:
        d = g.undirected_origin() ? g.out_degree(u) : g.out_degree(u) + g.in_degree(u);
        break;
      case DegreeMetric::Undirected: {
        scratch.assign(g.out_neighbors(u).begin(), g.out_neighbors(u).end());
        for (ArcId a : g.in_arcs(u)) scratch.push_back(g.arc_source(a));
        std::sort(scratch.begin(), scratch.end());
        d = static_cast<std::size_t>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
        break;
      }
    }
    stats.max = std::max(stats.max, d);
    total += d;
  }
  stats.average = static_cast<double>(total) / static_cast<double>(n);
  return stats;
}

// ---------------------------------------------------------------------------

std::string_view to_string(ProbabilityModel m) noexcept {
  switch (m) {
    case ProbabilityModel::Trivalency: return "trivalency";
    case ProbabilityModel::WeightedCascade: return "wc";
    case ProbabilityModel::Custom: return "custom";
  }
  return "custom";
}

std::string_view to_string(WeightedCascadeMode m) noexcept {
  return m == WeightedCascadeMode::SourceDegree ? "source" : "target";
}

EdgeProbabilities::EdgeProbabilities(std::vector<double> values, ProbabilityModel model,
                                     std::optional<std::uint64_t> seed,
                                     WeightedCascadeMode wc_mode)
    : values_(std::move(values)), model_(model), seed_(seed), wc_mode_(wc_mode) {
  for (std::size_t a = 0; a < values_.size(); ++a) {
    double p = values_[a];
    if (!(p > 0.0 && p <= 1.0))
      throw std::invalid_argument("edge probability of arc " + std::to_string(a) +
                                  " outside (0, 1]");
  }
}

EdgeProbabilities EdgeProbabilities::constant(const Graph& g, double p) {
  return EdgeProbabilities(std::vector<double>(g.arc_count(), p), ProbabilityModel::Custom);
}

nlohmann::json EdgeProbabilities::to_json() const {
  nlohmann::json j;
  j["version"] = kTableFormatVersion;
  j["model"] = to_string(model_);
  if (model_ == ProbabilityModel::WeightedCascade) j["wc_mode"] = to_string(wc_mode_);
  j["seed"] = seed_ ? nlohmann::json(*seed_) : nlohmann::json(nullptr);
  j["values"] = values_;
  return j;
}

EdgeProbabilities EdgeProbabilities::from_json(const nlohmann::json& j) {
  if (j.value("version", 0) != kTableFormatVersion)
    throw DataError("unsupported probability table version");
  const auto model_name = j.at("model").get<std::string>();
  ProbabilityModel model = ProbabilityModel::Custom;
  if (model_name == "trivalency") model = ProbabilityModel::Trivalency;
  else if (model_name == "wc") model = ProbabilityModel::WeightedCascade;
  WeightedCascadeMode mode = WeightedCascadeMode::SourceDegree;
  if (j.contains("wc_mode") && j["wc_mode"] == "target") mode = WeightedCascadeMode::TargetInDegree;
  std::optional<std::uint64_t> seed;
  if (!j.at("seed").is_null()) seed = j["seed"].get<std::uint64_t>();
  return EdgeProbabilities(j.at("values").get<std::vector<double>>(), model, seed, mode);
}

EdgeProbabilities assign_trivalency(const Graph& g, std::uint64_t seed) {
  if (g.node_count() == 0) throw std::invalid_argument("trivalency: empty graph");
  RngStream rng = make_stream(seed, 0, "trivalency");
  std::vector<double> values(g.arc_count());
  for (double& p : values) p = kTrivalencyValues[uniform_below(rng, 3)];
  return EdgeProbabilities(std::move(values), ProbabilityModel::Trivalency, seed);
}

EdgeProbabilities assign_weighted_cascade(const Graph& g, WeightedCascadeMode mode) {
  if (g.node_count() == 0) throw std::invalid_argument("weighted cascade: empty graph");
  std::vector<double> values(g.arc_count());
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    std::size_t d = mode == WeightedCascadeMode::SourceDegree ? g.out_degree(g.arc_source(a))
                                                              : g.in_degree(g.arc_target(a));
    values[a] = std::min(1.0, 1.0 / static_cast<double>(d));
  }
  return EdgeProbabilities(std::move(values), ProbabilityModel::WeightedCascade, std::nullopt, mode);
}

// ---------------------------------------------------------------------------

namespace {

struct ModelText {
  std::string name;
  std::vector<double> args;
};

ModelText split_model(std::string_view text) {
  ModelText out;
  auto colon = text.find(':');
  out.name = std::string(text.substr(0, colon));
  if (colon == std::string_view::npos) return out;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view tok = rest.substr(0, comma);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ConfigError("cannot parse number '" + std::string(tok) + "' in model spec '" +
                        std::string(text) + "'");
    out.args.push_back(value);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

std::string fmt_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

CostModel CostModel::parse(std::string_view text) {
  auto m = split_model(text);
  CostModel model;
  if (m.name == "uniform" && m.args.size() == 1) {
    model = uniform(m.args[0]);
  } else if ((m.name == "degree" || m.name == "degree-proportional") && m.args.size() == 2) {
    model = degree_proportional(m.args[0], m.args[1]);
  } else {
    throw ConfigError("unknown cost model '" + std::string(text) +
                      "' (expected uniform:C or degree:BASE,GAMMA)");
  }
  model.validate();
  return model;
}

std::string CostModel::describe() const {
  if (kind == Kind::Uniform) return "uniform:" + fmt_number(base);
  return "degree:" + fmt_number(base) + "," + fmt_number(slope);
}

void CostModel::validate() const {
  if (!(base > 0.0)) throw ConfigError("cost model: base cost must be positive");
  if (kind == Kind::DegreeProportional && !(slope > 0.0))
    throw ConfigError("cost model: degree slope must be positive");
}

BenefitModel BenefitModel::parse(std::string_view text) {
  auto m = split_model(text);
  BenefitModel model;
  if (m.name == "uniform" && m.args.size() == 1) {
    model = uniform(m.args[0]);
  } else if ((m.name == "range" || m.name == "seeded-uniform") && m.args.size() == 2) {
    model = seeded_uniform(m.args[0], m.args[1]);
  } else {
    throw ConfigError("unknown benefit model '" + std::string(text) +
                      "' (expected uniform:B or range:LO,HI)");
  }
  model.validate();
  return model;
}

std::string BenefitModel::describe() const {
  if (kind == Kind::Uniform) return "uniform:" + fmt_number(lo);
  return "range:" + fmt_number(lo) + "," + fmt_number(hi);
}

void BenefitModel::validate() const {
  if (!(lo > 0.0)) throw ConfigError("benefit model: values must be positive");
  if (kind == Kind::SeededUniform && !(hi >= lo))
    throw ConfigError("benefit model: range upper bound below lower bound");
}

CostBenefitTable::CostBenefitTable(std::vector<double> costs, std::vector<double> benefits)
    : costs_(std::move(costs)), benefits_(std::move(benefits)) {
  if (costs_.size() != benefits_.size())
    throw std::invalid_argument("cost/benefit tables differ in length");
  if (costs_.empty()) throw std::invalid_argument("cost/benefit table is empty");
  min_cost_ = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < costs_.size(); ++u) {
    if (!(costs_[u] > 0.0) || !std::isfinite(costs_[u]))
      throw std::invalid_argument("cost of node " + std::to_string(u) + " must be positive");
    if (!(benefits_[u] > 0.0) || !std::isfinite(benefits_[u]))
      throw std::invalid_argument("benefit of node " + std::to_string(u) + " must be positive");
    min_cost_ = std::min(min_cost_, costs_[u]);
    total_benefit_ += benefits_[u];
  }
}

CostBenefitTable CostBenefitTable::uniform(std::size_t n, double cost, double benefit) {
  CostBenefitTable t(std::vector<double>(n, cost), std::vector<double>(n, benefit));
  t.model_description = "cost=uniform:" + fmt_number(cost) + ";benefit=uniform:" + fmt_number(benefit);
  return t;
}

double CostBenefitTable::cost_of(std::span<const NodeId> nodes) const {
  double total = 0.0;
  for (NodeId u : nodes) total += costs_.at(u);
  return total;
}

nlohmann::json CostBenefitTable::to_json() const {
  nlohmann::json j;
  j["version"] = kTableFormatVersion;
  j["model"] = model_description;
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  auto values = nlohmann::json::array();
  for (std::size_t u = 0; u < costs_.size(); ++u) values.push_back({costs_[u], benefits_[u]});
  j["values"] = std::move(values);
  return j;
}

CostBenefitTable CostBenefitTable::from_json(const nlohmann::json& j) {
  if (j.value("version", 0) != kTableFormatVersion)
    throw DataError("unsupported cost/benefit table version");
  std::vector<double> costs, benefits;
  for (const auto& row : j.at("values")) {
    costs.push_back(row.at(0).get<double>());
    benefits.push_back(row.at(1).get<double>());
  }
  CostBenefitTable t(std::move(costs), std::move(benefits));
  t.model_description = j.at("model").get<std::string>();
  if (!j.at("seed").is_null()) t.seed = j["seed"].get<std::uint64_t>();
  return t;
}

CostBenefitTable assign_cost_benefit(const Graph& g, const CostModel& cost,
                                     const BenefitModel& benefit, std::uint64_t seed) {
  cost.validate();
  benefit.validate();
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("cost/benefit: empty graph");

  std::vector<double> costs(n), benefits(n);
  for (NodeId u = 0; u < n; ++u) {
    costs[u] = cost.kind == CostModel::Kind::Uniform
                   ? cost.base
                   : cost.base + cost.slope * static_cast<double>(g.out_degree(u));
  }
  RngStream rng = make_stream(seed, 0, "benefit");
  for (NodeId u = 0; u < n; ++u) {
    benefits[u] = benefit.kind == BenefitModel::Kind::Uniform
                      ? benefit.lo
                      : benefit.lo + (benefit.hi - benefit.lo) * next_unit(rng);
  }
  CostBenefitTable t(std::move(costs), std::move(benefits));
  t.model_description = "cost=" + cost.describe() + ";benefit=" + benefit.describe();
  t.seed = seed;
  return t;
}

}  // namespace pmcsn
