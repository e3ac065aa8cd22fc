#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citenet/centrality/centrality.hpp"
#include "citenet/graph/citation_graph.hpp"

namespace citenet::filter {

struct FilterSpec {
  std::set<std::uint32_t> removed_intents;  // indices into the graph's intent labels
  std::optional<double> min_confidence;     // only remove edges at or above this confidence
  bool drop_isolated_nodes = true;
};

/// Resolves intent names against the graph's label list; throws
/// ValidationError for a name the graph does not know.
FilterSpec make_spec(const graph::CitationGraph& g, std::span<const std::string> intent_names);

/// Removes matching edges, then (optionally) every node left without edges.
/// An empty intent set returns the graph unchanged. Throws ValidationError if
/// a removal decision meets an edge without an intent.
graph::CitationGraph filter_graph(const graph::CitationGraph& g, const FilterSpec& spec);

struct GraphCounts {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t components = 0;

  bool operator==(const GraphCounts&) const = default;
};

GraphCounts count(const graph::CitationGraph& g);

/// Structural change; deltas are fractions (after - before) / before, 0 when
/// the baseline is 0.
struct ImpactReport {
  GraphCounts before;
  GraphCounts after;

  double node_delta() const;
  double edge_delta() const;
  double component_delta() const;
};

ImpactReport impact_report(const graph::CitationGraph& before, const graph::CitationGraph& after);

/// Aligned text table: one column for the baseline, one per named filter,
/// counts followed by signed percentage deltas rounded to one decimal.
std::string format_impact_table(std::span<const std::pair<std::string, ImpactReport>> columns);
/// CSV `filter,quantity,before,after,delta_pct` with unrounded deltas.
void write_impact_csv(std::span<const std::pair<std::string, ImpactReport>> columns, const std::filesystem::path& path);

struct RankShiftRow {
  std::string node_id;
  std::size_t rank_before = 0;
  std::optional<std::size_t> rank_after;  // empty when dropped
  double value_before = 0.0;
  std::optional<double> value_after;      // empty when the node left the graph
  bool dropped = false;                   // removed, or ranked beyond the horizon

  bool operator==(const RankShiftRow&) const = default;
};

struct RankShiftReport {
  centrality::Metric metric = centrality::Metric::in_degree;
  std::size_t k = 20;
  std::size_t horizon = 100;
  std::vector<RankShiftRow> rows;  // ordered by rank_before

  bool operator==(const RankShiftReport&) const = default;
};

/// Tracks the before-graph's top-K nodes (matched by ID) in the full ranking
/// of the after-graph. Throws ParameterError unless 1 <= K <= horizon.
RankShiftReport rank_shift(const graph::CitationGraph& before, const graph::CitationGraph& after,
                           centrality::Metric metric, std::size_t k, std::size_t horizon = 100,
                           const centrality::CentralityOptions& options = {});

/// CSV `node_id,rank_before,rank_after,value_before,value_after,dropped`
/// ordered by rank_before, plus `<path>.meta` with metric, k and horizon.
std::size_t export_bump_data(const RankShiftReport& report, const std::filesystem::path& path);
RankShiftReport read_bump_data(const std::filesystem::path& path);

}  // namespace citenet::filter
