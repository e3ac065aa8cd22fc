#include "citenet/graph/graph_io.hpp"

#include <algorithm>

#include "citenet/common/csv.hpp"
#include "citenet/common/error.hpp"
#include "citenet/common/numfmt.hpp"

namespace citenet::graph {

EdgeTable read_edge_csv(std::istream& in, const ingest::LabelSchema* schema, std::string_view source) {
  CsvReader reader(in);
  CsvRow row;
  if (!reader.next(row)) throw FormatError(std::string(source) + ": missing CSV header");
  expect_header(row, {"citing_id", "cited_id", "intent", "confidence"}, source);

  EdgeTable table;
  if (schema != nullptr) table.intent_labels = schema->labels();
  while (reader.next(row)) {
    const auto where = std::string(source) + ":" + std::to_string(reader.row_line());
    if (row.size() != 4) throw FormatError(where + ": expected 4 fields, got " + std::to_string(row.size()));
    CitationEdge e;
    e.citing_id = std::move(row[0].text);
    e.cited_id = std::move(row[1].text);
    if (!row[2].text.empty()) {
      const auto& name = row[2].text;
      auto it = std::find(table.intent_labels.begin(), table.intent_labels.end(), name);
      if (it == table.intent_labels.end()) {
        if (schema != nullptr) throw ValidationError(where + ": intent '" + name + "' is not in the label schema");
        table.intent_labels.push_back(name);
        it = table.intent_labels.end() - 1;
      }
      e.intent = static_cast<std::uint32_t>(it - table.intent_labels.begin());
    }
    if (!row[3].text.empty()) {
      auto c = parse_real(row[3].text);
      if (!c || !(*c >= 0.0 && *c <= 1.0)) throw ValidationError(where + ": confidence must be a real in [0, 1]");
      e.confidence = *c;
    }
    table.edges.push_back(std::move(e));
  }
  return table;
}

EdgeTable read_edge_csv(const std::filesystem::path& path, const ingest::LabelSchema* schema) {
  auto in = open_input(path);
  return read_edge_csv(in, schema, path.string());
}

std::size_t write_edge_csv(std::span<const CitationEdge> edges, std::span<const std::string> intent_labels,
                           std::ostream& out) {
  CsvWriter csv(out);
  csv.row({"citing_id", "cited_id", "intent", "confidence"});
  for (const auto& e : edges) {
    csv.field(e.citing_id).field(e.cited_id);
    if (e.intent) {
      if (*e.intent >= intent_labels.size()) throw ValidationError("edge intent index has no label name");
      csv.field(intent_labels[*e.intent]);
    } else {
      csv.field("");
    }
    csv.field(e.confidence ? format_real(*e.confidence) : std::string());
    csv.end_row();
  }
  return edges.size();
}

std::size_t write_edge_csv(std::span<const CitationEdge> edges, std::span<const std::string> intent_labels,
                           const std::filesystem::path& path) {
  auto out = open_output(path);
  const auto n = write_edge_csv(edges, intent_labels, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
  return n;
}

std::size_t write_graph_edges(const CitationGraph& g, const std::filesystem::path& path) {
  const auto edges = edge_list(g);
  return write_edge_csv(edges, g.intent_labels(), path);
}

std::size_t write_node_csv(const CitationGraph& g, const Components& components, const std::filesystem::path& path) {
  auto out = open_output(path);
  CsvWriter csv(out);
  csv.row({"node_id", "component_label"});
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    csv.field(g.node_id(v)).field(std::to_string(components.label[v]));
    csv.end_row();
  }
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
  return g.node_count();
}

CitationGraph read_graph(const std::filesystem::path& edges, const std::optional<std::filesystem::path>& nodes,
                         const ingest::LabelSchema* schema) {
  auto table = read_edge_csv(edges, schema);
  std::vector<std::string> node_order;
  if (nodes) {
    auto in = open_input(*nodes);
    CsvReader reader(in);
    CsvRow row;
    if (!reader.next(row)) throw FormatError(nodes->string() + ": missing CSV header");
    expect_header(row, {"node_id", "component_label"}, nodes->string());
    while (reader.next(row)) {
      if (row.size() != 2) throw FormatError(nodes->string() + ":" + std::to_string(reader.row_line()) + ": expected 2 fields");
      node_order.push_back(std::move(row[0].text));
    }
  }
  return build_graph(table.edges, std::move(table.intent_labels), node_order);
}

}  // namespace citenet::graph
