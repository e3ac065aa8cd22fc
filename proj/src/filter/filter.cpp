#include "citenet/filter/filter.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "citenet/common/csv.hpp"
#include "citenet/common/error.hpp"
#include "citenet/common/numfmt.hpp"
#include "citenet/graph/components.hpp"

namespace citenet::filter {

using graph::CitationGraph;
using graph::NodeIndex;

FilterSpec make_spec(const CitationGraph& g, std::span<const std::string> intent_names) {
  FilterSpec spec;
  const auto& labels = g.intent_labels();
  for (const auto& name : intent_names) {
    auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) throw ValidationError("intent '" + name + "' does not occur in the graph's label set");
    spec.removed_intents.insert(static_cast<std::uint32_t>(it - labels.begin()));
  }
  return spec;
}

CitationGraph filter_graph(const CitationGraph& g, const FilterSpec& spec) {
  if (spec.removed_intents.empty()) return g;
  for (auto i : spec.removed_intents) {
    if (i >= g.intent_labels().size()) throw ValidationError("removed intent index outside the graph's label set");
  }
  std::vector<bool> keep_edge(g.edge_count(), true);
  std::vector<std::size_t> incident(g.node_count(), 0);
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    const auto first = g.first_out_edge(u);
    const auto targets = g.out_neighbors(u);
    const auto attrs = g.out_attributes(u);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const auto& a = attrs[i];
      if (!a.intent) {
        throw ValidationError("edge " + g.node_id(u) + " -> " + g.node_id(targets[i]) + " carries no intent label");
      }
      bool remove = spec.removed_intents.contains(*a.intent);
      if (remove && spec.min_confidence) remove = a.confidence && *a.confidence >= *spec.min_confidence;
      if (remove) {
        keep_edge[first + i] = false;
      } else {
        ++incident[u];
        ++incident[targets[i]];
      }
    }
  }
  std::vector<bool> keep_node(g.node_count(), true);
  if (spec.drop_isolated_nodes) {
    for (std::size_t v = 0; v < g.node_count(); ++v) keep_node[v] = incident[v] > 0;
  }
  return graph::subgraph(g, keep_node, keep_edge);
}

GraphCounts count(const CitationGraph& g) {
  return {g.node_count(), g.edge_count(), graph::weakly_connected_components(g).count()};
}

namespace {

double relative(std::size_t before, std::size_t after) {
  if (before == 0) return 0.0;
  return (static_cast<double>(after) - static_cast<double>(before)) / static_cast<double>(before);
}

std::string with_thousands(std::size_t n) {
  auto digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

std::string signed_pct(double fraction) {
  auto text = format_fixed(100.0 * fraction, 1);
  if (text == "-0.0" || text == "0.0") return "0.0%";
  if (text.front() != '-') text = "+" + text;
  return text + "%";
}

}  // namespace

double ImpactReport::node_delta() const { return relative(before.nodes, after.nodes); }
double ImpactReport::edge_delta() const { return relative(before.edges, after.edges); }
double ImpactReport::component_delta() const { return relative(before.components, after.components); }

ImpactReport impact_report(const CitationGraph& before, const CitationGraph& after) {
  return {count(before), count(after)};
}

std::string format_impact_table(std::span<const std::pair<std::string, ImpactReport>> columns) {
  if (columns.empty()) return {};
  const auto& base = columns.front().second.before;
  std::vector<std::vector<std::string>> table = {{"Metric", "Full Network"},
                                                 {"Nodes", with_thousands(base.nodes)},
                                                 {"Edges", with_thousands(base.edges)},
                                                 {"Components", with_thousands(base.components)}};
  for (const auto& [name, r] : columns) {
    table[0].push_back(name);
    table[1].push_back(with_thousands(r.after.nodes) + " (" + signed_pct(r.node_delta()) + ")");
    table[2].push_back(with_thousands(r.after.edges) + " (" + signed_pct(r.edge_delta()) + ")");
    table[3].push_back(with_thousands(r.after.components) + " (" + signed_pct(r.component_delta()) + ")");
  }
  std::vector<std::size_t> width(table[0].size(), 0);
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << row[c];
    }
    out << '\n';
  }
  auto text = out.str();
  // Strip trailing padding on each line.
  std::string trimmed;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    line.erase(line.find_last_not_of(' ') + 1);
    trimmed += line + '\n';
  }
  return trimmed;
}

void write_impact_csv(std::span<const std::pair<std::string, ImpactReport>> columns, const std::filesystem::path& path) {
  auto out = open_output(path);
  CsvWriter csv(out);
  csv.row({"filter", "quantity", "before", "after", "delta_pct"});
  for (const auto& [name, r] : columns) {
    auto line = [&](std::string_view q, std::size_t b, std::size_t a, double d) {
      csv.field(name).field(q).field(std::to_string(b)).field(std::to_string(a)).field(format_real(100.0 * d));
      csv.end_row();
    };
    line("nodes", r.before.nodes, r.after.nodes, r.node_delta());
    line("edges", r.before.edges, r.after.edges, r.edge_delta());
    line("components", r.before.components, r.after.components, r.component_delta());
  }
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

RankShiftReport rank_shift(const CitationGraph& before, const CitationGraph& after, centrality::Metric metric,
                           std::size_t k, std::size_t horizon, const centrality::CentralityOptions& options) {
  if (k < 1) throw ParameterError("rank shift needs K >= 1");
  if (horizon < k) throw ParameterError("rank shift horizon must be at least K");
  RankShiftReport report;
  report.metric = metric;
  report.k = k;
  report.horizon = horizon;
  if (before.empty()) return report;

  const auto v_before = centrality::compute(before, metric, options);
  const auto top = centrality::top_k(before, v_before, k);

  std::unordered_map<std::string, std::pair<std::size_t, double>> after_rank;
  if (!after.empty()) {
    const auto v_after = centrality::compute(after, metric, options);
    for (const auto& r : centrality::top_k(after, v_after, after.node_count())) {
      after_rank.emplace(r.node_id, std::make_pair(r.rank, r.value));
    }
  }
  for (const auto& r : top) {
    RankShiftRow row;
    row.node_id = r.node_id;
    row.rank_before = r.rank;
    row.value_before = r.value;
    auto it = after_rank.find(r.node_id);
    if (it == after_rank.end()) {
      row.dropped = true;
    } else {
      row.value_after = it->second.second;
      if (it->second.first <= horizon) {
        row.rank_after = it->second.first;
      } else {
        row.dropped = true;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::size_t export_bump_data(const RankShiftReport& report, const std::filesystem::path& path) {
  auto rows = report.rows;
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.rank_before < b.rank_before; });
  {
    auto out = open_output(path);
    CsvWriter csv(out);
    csv.row({"node_id", "rank_before", "rank_after", "value_before", "value_after", "dropped"});
    for (const auto& r : rows) {
      csv.field(r.node_id)
          .field(std::to_string(r.rank_before))
          .field(r.rank_after ? std::to_string(*r.rank_after) : std::string())
          .field(format_real(r.value_before))
          .field(r.value_after ? format_real(*r.value_after) : std::string())
          .field(r.dropped ? "1" : "0");
      csv.end_row();
    }
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
  }
  auto meta_path = path;
  meta_path += ".meta";
  auto meta = open_output(meta_path);
  meta << "metric=" << centrality::to_string(report.metric) << "\nk=" << report.k << "\nhorizon=" << report.horizon
       << '\n';
  if (!meta) throw IoError("failed writing '" + meta_path.string() + "'");
  return rows.size();
}

RankShiftReport read_bump_data(const std::filesystem::path& path) {
  RankShiftReport report;
  auto meta_path = path;
  meta_path += ".meta";
  if (std::filesystem::exists(meta_path)) {
    auto meta = open_input(meta_path);
    for (std::string line; std::getline(meta, line);) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const auto key = line.substr(0, eq);
      const auto value = line.substr(eq + 1);
      if (key == "metric") {
        auto m = centrality::parse_metric(value);
        if (!m) throw FormatError(meta_path.string() + ": unknown metric '" + value + "'");
        report.metric = *m;
      } else if (key == "k" || key == "horizon") {
        auto n = parse_int(value);
        if (!n || *n < 1) throw FormatError(meta_path.string() + ": bad " + key);
        (key == "k" ? report.k : report.horizon) = static_cast<std::size_t>(*n);
      }
    }
  }
  auto in = open_input(path);
  CsvReader reader(in);
  CsvRow row;
  if (!reader.next(row)) throw FormatError(path.string() + ": missing CSV header");
  expect_header(row, {"node_id", "rank_before", "rank_after", "value_before", "value_after", "dropped"}, path.string());
  while (reader.next(row)) {
    const auto where = path.string() + ":" + std::to_string(reader.row_line());
    if (row.size() != 6) throw FormatError(where + ": expected 6 fields");
    RankShiftRow r;
    r.node_id = row[0].text;
    auto rb = parse_int(row[1].text);
    auto vb = parse_real(row[3].text);
    if (!rb || *rb < 1 || !vb) throw FormatError(where + ": malformed rank or value");
    r.rank_before = static_cast<std::size_t>(*rb);
    r.value_before = *vb;
    if (!row[2].text.empty()) {
      auto ra = parse_int(row[2].text);
      if (!ra || *ra < 1) throw FormatError(where + ": malformed rank_after");
      r.rank_after = static_cast<std::size_t>(*ra);
    }
    if (!row[4].text.empty()) {
      auto va = parse_real(row[4].text);
      if (!va) throw FormatError(where + ": malformed value_after");
      r.value_after = *va;
    }
    if (row[5].text != "0" && row[5].text != "1") throw FormatError(where + ": dropped must be 0 or 1");
    r.dropped = row[5].text == "1";
    report.rows.push_back(std::move(r));
  }
  return report;
}

}  // namespace citenet::filter
