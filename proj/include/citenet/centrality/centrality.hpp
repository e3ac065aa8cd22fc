#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citenet/graph/citation_graph.hpp"

namespace citenet::centrality {

enum class Metric { in_degree, out_degree, betweenness, closeness, pagerank };

enum class ClosenessVariant {
  standard,     // reachable-set closeness scaled by (r - 1) / (N - 1)
  farness_sum,  // sum of distances from reaching nodes divided by N
};

/// Which way distances run for closeness: `incoming` measures d(u, v) from
/// every u that reaches v along citation edges.
enum class Direction { incoming, outgoing };

enum class Dangling {
  redistribute,  // rank of nodes without out-edges is spread evenly
  drop,          // that rank leaks, as in the bare recurrence
};

std::string_view to_string(Metric m);
std::string_view to_string(ClosenessVariant v);
std::string_view to_string(Direction d);
std::string_view to_string(Dangling d);
std::optional<Metric> parse_metric(std::string_view text);
std::optional<ClosenessVariant> parse_variant(std::string_view text);
std::optional<Direction> parse_direction(std::string_view text);
std::optional<Dangling> parse_dangling(std::string_view text);

struct CentralityOptions {
  bool undirected = false;  // betweenness/closeness on the underlying undirected graph
  ClosenessVariant variant = ClosenessVariant::standard;
  Direction direction = Direction::incoming;
  double damping = 0.85;
  double tolerance = 1e-10;
  std::size_t max_iterations = 100;
  Dangling dangling = Dangling::redistribute;
};

struct CentralityVector {
  Metric metric = Metric::in_degree;
  std::vector<double> values;  // indexed by node
  CentralityOptions params;
  bool converged = true;       // PageRank only
  std::size_t iterations = 0;  // PageRank only
  double residual = 0.0;       // last L1 change, PageRank only
};

/// k_in(i) = sum_j a_ji and k_out(i) = sum_j a_ij on the deduplicated graph.
std::pair<CentralityVector, CentralityVector> degree(const graph::CitationGraph& g);

/// Unnormalized betweenness over ordered pairs (s, t), exact, via Brandes'
/// dependency accumulation on unweighted shortest paths.
CentralityVector betweenness(const graph::CitationGraph& g, bool undirected = false);

CentralityVector closeness(const graph::CitationGraph& g, ClosenessVariant variant = ClosenessVariant::standard,
                           Direction direction = Direction::incoming, bool undirected = false);

/// Unnormalized power iteration PR(A) = (1 - d) + d * sum_{T -> A} PR(T) / C(T)
/// from PR = 1, stopping when the L1 change drops below `tolerance`. Sets
/// `converged = false` instead of throwing when `max_iterations` runs out.
CentralityVector pagerank(const graph::CitationGraph& g, double damping = 0.85, double tolerance = 1e-10,
                          std::size_t max_iterations = 100, Dangling dangling = Dangling::redistribute);

CentralityVector compute(const graph::CitationGraph& g, Metric metric, const CentralityOptions& options = {});

struct RankedNode {
  std::size_t rank = 0;  // 1-based
  std::string node_id;
  double value = 0.0;

  bool operator==(const RankedNode&) const = default;
};

/// Descending by value, ties by ascending node ID; at most `k` entries.
std::vector<RankedNode> top_k(const graph::CitationGraph& g, const CentralityVector& v, std::size_t k);

/// CSV `node_id,metric,value,rank` for the top `k` nodes (all when k == 0),
/// plus `<path>.meta` echoing the parameters as key=value lines.
std::size_t write_centrality_csv(const graph::CitationGraph& g, const CentralityVector& v, std::size_t k,
                                 const std::filesystem::path& path);

}  // namespace citenet::centrality
