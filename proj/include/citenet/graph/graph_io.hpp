#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "citenet/graph/citation_graph.hpp"
#include "citenet/graph/components.hpp"
#include "citenet/ingest/label_schema.hpp"

namespace citenet::graph {

struct EdgeTable {
  std::vector<CitationEdge> edges;
  std::vector<std::string> intent_labels;
};

/// Reads `citing_id,cited_id,intent,confidence`. With a schema, intent names
/// must belong to it and index it; without one, names are indexed in order of
/// first appearance.
EdgeTable read_edge_csv(std::istream& in, const ingest::LabelSchema* schema = nullptr,
                        std::string_view source = "<stream>");
EdgeTable read_edge_csv(const std::filesystem::path& path, const ingest::LabelSchema* schema = nullptr);

std::size_t write_edge_csv(std::span<const CitationEdge> edges, std::span<const std::string> intent_labels,
                           std::ostream& out);
std::size_t write_edge_csv(std::span<const CitationEdge> edges, std::span<const std::string> intent_labels,
                           const std::filesystem::path& path);

/// The graph's deduplicated edges in the edge-list format.
std::size_t write_graph_edges(const CitationGraph& g, const std::filesystem::path& path);
/// CSV `node_id,component_label` in node index order.
std::size_t write_node_csv(const CitationGraph& g, const Components& components, const std::filesystem::path& path);

/// Reads an edge list plus an optional node CSV (which restores isolated nodes).
CitationGraph read_graph(const std::filesystem::path& edges, const std::optional<std::filesystem::path>& nodes,
                         const ingest::LabelSchema* schema = nullptr);

}  // namespace citenet::graph
