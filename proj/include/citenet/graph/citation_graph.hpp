#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace citenet::graph {

using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

/// "citing cites cited", optionally tagged with a classified intent.
struct CitationEdge {
  std::string citing_id;
  std::string cited_id;
  std::optional<std::uint32_t> intent;
  std::optional<double> confidence;

  bool operator==(const CitationEdge&) const = default;
};

struct EdgeAttributes {
  std::optional<std::uint32_t> intent;
  std::optional<double> confidence;
  std::uint32_t multiplicity = 1;  // number of raw contexts collapsed into this edge

  bool operator==(const EdgeAttributes&) const = default;
};

struct BuildStats {
  std::size_t raw_edges = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_collapsed = 0;
};

/// Immutable directed graph in compressed adjacency form. Node indices are
/// dense and follow first appearance; edges are stored per source sorted by
/// target index, and the in-adjacency refers back to the same edge indices.
class CitationGraph {
 public:
  CitationGraph() = default;

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return targets_.size(); }
  bool empty() const { return ids_.empty(); }

  const std::string& node_id(NodeIndex v) const { return ids_[v]; }
  const std::vector<std::string>& node_ids() const { return ids_; }
  std::optional<NodeIndex> find(std::string_view id) const;

  std::span<const NodeIndex> out_neighbors(NodeIndex v) const {
    return {targets_.data() + out_offsets_[v], targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const EdgeAttributes> out_attributes(NodeIndex v) const {
    return {attributes_.data() + out_offsets_[v], attributes_.data() + out_offsets_[v + 1]};
  }
  std::span<const NodeIndex> in_neighbors(NodeIndex v) const {
    return {sources_.data() + in_offsets_[v], sources_.data() + in_offsets_[v + 1]};
  }
  /// Edge indices (positions in the out-adjacency) of v's incoming edges.
  std::span<const EdgeIndex> in_edges(NodeIndex v) const {
    return {in_edge_ids_.data() + in_offsets_[v], in_edge_ids_.data() + in_offsets_[v + 1]};
  }
  EdgeIndex first_out_edge(NodeIndex v) const { return out_offsets_[v]; }

  std::size_t out_degree(NodeIndex v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(NodeIndex v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

  NodeIndex edge_target(EdgeIndex e) const { return targets_[e]; }
  const EdgeAttributes& edge_attributes(EdgeIndex e) const { return attributes_[e]; }

  /// Intent names that edge intents index into.
  const std::vector<std::string>& intent_labels() const { return intent_labels_; }
  const BuildStats& stats() const { return stats_; }

  /// Index-level equality (same node order, same edges, same attributes).
  bool operator==(const CitationGraph& other) const;

  friend CitationGraph build_graph(std::span<const CitationEdge>, std::vector<std::string>, std::span<const std::string>);
  friend CitationGraph subgraph(const CitationGraph&, const std::vector<bool>&, const std::vector<bool>&);

 private:
  struct RawEdge {
    NodeIndex source;
    NodeIndex target;
    EdgeAttributes attributes;
  };
  // `edges` must be sorted by (source, target) with no duplicates.
  static CitationGraph from_sorted(std::vector<std::string> ids, std::vector<RawEdge> edges,
                                   std::vector<std::string> intent_labels, BuildStats stats);

  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<EdgeIndex> out_offsets_{0};
  std::vector<NodeIndex> targets_;
  std::vector<EdgeAttributes> attributes_;
  std::vector<EdgeIndex> in_offsets_{0};
  std::vector<NodeIndex> sources_;
  std::vector<EdgeIndex> in_edge_ids_;
  std::vector<std::string> intent_labels_;
  BuildStats stats_;
};

/// Builds the graph. Self-loops are dropped and counted; parallel edges are
/// collapsed, keeping the highest-confidence intent (first seen on ties) and
/// summing multiplicity. `nodes` are indexed first, in the given order, and
/// may include nodes without edges; remaining endpoints follow in order of
/// first appearance.
CitationGraph build_graph(std::span<const CitationEdge> edges, std::vector<std::string> intent_labels = {},
                          std::span<const std::string> nodes = {});

/// Keeps flagged nodes and flagged edges between kept nodes; node order and
/// edge attributes are preserved.
CitationGraph subgraph(const CitationGraph& g, const std::vector<bool>& keep_node, const std::vector<bool>& keep_edge);

/// Equality by string IDs: same node set and same edge set with the same
/// intents and confidences, regardless of node indexing.
bool same_structure(const CitationGraph& a, const CitationGraph& b);

/// Edge list back at the string-ID level, in CSR order.
std::vector<CitationEdge> edge_list(const CitationGraph& g);

}  // namespace citenet::graph
