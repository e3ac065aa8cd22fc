#include "citenet/graph/citation_graph.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

#include "citenet/common/error.hpp"

namespace citenet::graph {

namespace {

bool outranks(const EdgeAttributes& candidate, const EdgeAttributes& current) {
  if (!candidate.confidence) return false;
  if (!current.confidence) return true;
  return *candidate.confidence > *current.confidence;
}

}  // namespace

std::optional<NodeIndex> CitationGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool CitationGraph::operator==(const CitationGraph& other) const {
  return ids_ == other.ids_ && out_offsets_ == other.out_offsets_ && targets_ == other.targets_ &&
         attributes_ == other.attributes_ && intent_labels_ == other.intent_labels_;
}

CitationGraph CitationGraph::from_sorted(std::vector<std::string> ids, std::vector<RawEdge> edges,
                                         std::vector<std::string> intent_labels, BuildStats stats) {
  if (ids.size() >= std::numeric_limits<NodeIndex>::max() || edges.size() >= std::numeric_limits<EdgeIndex>::max()) {
    throw ValidationError("graph exceeds 32-bit index range");
  }
  CitationGraph g;
  const auto n = ids.size();
  g.ids_ = std::move(ids);
  g.index_.reserve(n);
  for (NodeIndex v = 0; v < n; ++v) g.index_.emplace(g.ids_[v], v);
  g.intent_labels_ = std::move(intent_labels);
  g.stats_ = stats;

  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  g.targets_.reserve(edges.size());
  g.attributes_.reserve(edges.size());
  for (const auto& e : edges) {
    ++g.out_offsets_[e.source + 1];
    ++g.in_offsets_[e.target + 1];
    g.targets_.push_back(e.target);
    g.attributes_.push_back(e.attributes);
  }
  for (std::size_t v = 0; v < n; ++v) {
    g.out_offsets_[v + 1] += g.out_offsets_[v];
    g.in_offsets_[v + 1] += g.in_offsets_[v];
  }
  g.sources_.resize(edges.size());
  g.in_edge_ids_.resize(edges.size());
  std::vector<EdgeIndex> fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (EdgeIndex e = 0; e < edges.size(); ++e) {
    const auto pos = fill[edges[e].target]++;
    g.sources_[pos] = edges[e].source;
    g.in_edge_ids_[pos] = e;
  }
  return g;
}

CitationGraph build_graph(std::span<const CitationEdge> edges, std::vector<std::string> intent_labels,
                          std::span<const std::string> nodes) {
  BuildStats stats;
  stats.raw_edges = edges.size();
  std::vector<std::string> ids;
  std::unordered_map<std::string, NodeIndex> index;
  auto intern = [&](const std::string& id) {
    auto [it, inserted] = index.try_emplace(id, static_cast<NodeIndex>(ids.size()));
    if (inserted) ids.push_back(id);
    return it->second;
  };

  for (const auto& id : nodes) intern(id);

  std::vector<CitationGraph::RawEdge> unique;
  std::unordered_map<std::uint64_t, std::size_t> seen;
  for (const auto& e : edges) {
    if (e.intent && !intent_labels.empty() && *e.intent >= intent_labels.size()) {
      throw ValidationError("edge " + e.citing_id + " -> " + e.cited_id + " has intent outside the label set");
    }
    if (e.citing_id == e.cited_id) {
      ++stats.self_loops_dropped;
      continue;
    }
    const auto s = intern(e.citing_id);
    const auto t = intern(e.cited_id);
    const EdgeAttributes attrs{e.intent, e.confidence, 1};
    const auto key = (static_cast<std::uint64_t>(s) << 32) | t;
    auto [it, inserted] = seen.try_emplace(key, unique.size());
    if (inserted) {
      unique.push_back({s, t, attrs});
      continue;
    }
    ++stats.duplicates_collapsed;
    auto& kept = unique[it->second].attributes;
    const auto multiplicity = kept.multiplicity + 1;
    if (outranks(attrs, kept)) kept = attrs;
    kept.multiplicity = multiplicity;
  }

  std::sort(unique.begin(), unique.end(),
            [](const auto& a, const auto& b) { return std::tie(a.source, a.target) < std::tie(b.source, b.target); });
  return CitationGraph::from_sorted(std::move(ids), std::move(unique), std::move(intent_labels), stats);
}

CitationGraph subgraph(const CitationGraph& g, const std::vector<bool>& keep_node, const std::vector<bool>& keep_edge) {
  if (keep_node.size() != g.node_count() || keep_edge.size() != g.edge_count()) {
    throw ParameterError("subgraph masks do not match graph size");
  }
  std::vector<NodeIndex> remap(g.node_count(), std::numeric_limits<NodeIndex>::max());
  std::vector<std::string> ids;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (!keep_node[v]) continue;
    remap[v] = static_cast<NodeIndex>(ids.size());
    ids.push_back(g.node_id(v));
  }
  std::vector<CitationGraph::RawEdge> edges;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    if (!keep_node[u]) continue;
    const auto first = g.first_out_edge(u);
    const auto targets = g.out_neighbors(u);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const auto e = first + static_cast<EdgeIndex>(i);
      if (keep_edge[e] && keep_node[targets[i]]) edges.push_back({remap[u], remap[targets[i]], g.edge_attributes(e)});
    }
  }
  // Remapping is monotone, so (source, target) order is preserved.
  BuildStats stats = g.stats();
  return CitationGraph::from_sorted(std::move(ids), std::move(edges), g.intent_labels(), stats);
}

bool same_structure(const CitationGraph& a, const CitationGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  if (std::set(a.node_ids().begin(), a.node_ids().end()) != std::set(b.node_ids().begin(), b.node_ids().end())) {
    return false;
  }
  auto key = [](const CitationGraph& g, const CitationEdge& e) {
    std::optional<std::string> intent;
    if (e.intent) intent = *e.intent < g.intent_labels().size() ? g.intent_labels()[*e.intent] : std::to_string(*e.intent);
    return std::make_tuple(e.citing_id, e.cited_id, intent, e.confidence);
  };
  std::set<decltype(key(a, CitationEdge{}))> ea, eb;
  for (const auto& e : edge_list(a)) ea.insert(key(a, e));
  for (const auto& e : edge_list(b)) eb.insert(key(b, e));
  return ea == eb;
}

std::vector<CitationEdge> edge_list(const CitationGraph& g) {
  std::vector<CitationEdge> out;
  out.reserve(g.edge_count());
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    const auto targets = g.out_neighbors(u);
    const auto attrs = g.out_attributes(u);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      out.push_back({g.node_id(u), g.node_id(targets[i]), attrs[i].intent, attrs[i].confidence});
    }
  }
  return out;
}

}  // namespace citenet::graph
