#include "citenet/centrality/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "citenet/common/csv.hpp"
#include "citenet/common/error.hpp"
#include "citenet/common/numfmt.hpp"
#include "citenet/common/parallel.hpp"

namespace citenet::centrality {

using graph::CitationGraph;
using graph::NodeIndex;

namespace {

// Fixed block count keeps floating-point reduction order independent of threads.
constexpr std::size_t kMaxBlocks = 64;

/// Plain CSR neighbor lists for one traversal direction.
struct Adjacency {
  std::vector<std::size_t> offsets;
  std::vector<NodeIndex> targets;

  std::span<const NodeIndex> operator[](NodeIndex v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
};

enum class Walk { forward, reverse, both };

Adjacency adjacency(const CitationGraph& g, Walk walk) {
  Adjacency adj;
  const auto n = g.node_count();
  adj.offsets.assign(n + 1, 0);
  std::vector<NodeIndex> scratch;
  for (NodeIndex v = 0; v < n; ++v) {
    scratch.clear();
    if (walk != Walk::reverse) scratch.insert(scratch.end(), g.out_neighbors(v).begin(), g.out_neighbors(v).end());
    if (walk != Walk::forward) scratch.insert(scratch.end(), g.in_neighbors(v).begin(), g.in_neighbors(v).end());
    if (walk == Walk::both) {
      std::sort(scratch.begin(), scratch.end());
      scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    }
    adj.targets.insert(adj.targets.end(), scratch.begin(), scratch.end());
    adj.offsets[v + 1] = adj.targets.size();
  }
  return adj;
}

struct BlockRange {
  std::size_t blocks;
  std::size_t per_block;
};

BlockRange split_blocks(std::size_t n) {
  const auto blocks = std::max<std::size_t>(1, std::min(kMaxBlocks, n));
  return {blocks, (n + blocks - 1) / blocks};
}

CentralityOptions with(CentralityOptions o, auto&& edit) {
  edit(o);
  return o;
}

}  // namespace

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::in_degree: return "in_degree";
    case Metric::out_degree: return "out_degree";
    case Metric::betweenness: return "betweenness";
    case Metric::closeness: return "closeness";
    case Metric::pagerank: return "pagerank";
  }
  return "unknown";
}

std::string_view to_string(ClosenessVariant v) { return v == ClosenessVariant::standard ? "standard" : "farness"; }
std::string_view to_string(Direction d) { return d == Direction::incoming ? "incoming" : "outgoing"; }
std::string_view to_string(Dangling d) { return d == Dangling::redistribute ? "redistribute" : "drop"; }

std::optional<Metric> parse_metric(std::string_view text) {
  for (auto m : {Metric::in_degree, Metric::out_degree, Metric::betweenness, Metric::closeness, Metric::pagerank}) {
    if (text == to_string(m)) return m;
  }
  if (text == "in-degree" || text == "indegree") return Metric::in_degree;
  if (text == "out-degree" || text == "outdegree") return Metric::out_degree;
  return std::nullopt;
}

std::optional<ClosenessVariant> parse_variant(std::string_view text) {
  if (text == "standard") return ClosenessVariant::standard;
  if (text == "farness" || text == "paper-literal" || text == "paper_literal") return ClosenessVariant::farness_sum;
  return std::nullopt;
}

std::optional<Direction> parse_direction(std::string_view text) {
  if (text == "incoming") return Direction::incoming;
  if (text == "outgoing") return Direction::outgoing;
  return std::nullopt;
}

std::optional<Dangling> parse_dangling(std::string_view text) {
  if (text == "redistribute") return Dangling::redistribute;
  if (text == "drop") return Dangling::drop;
  return std::nullopt;
}

std::pair<CentralityVector, CentralityVector> degree(const CitationGraph& g) {
  CentralityVector in{Metric::in_degree, std::vector<double>(g.node_count()), {}, true, 0, 0.0};
  CentralityVector out{Metric::out_degree, std::vector<double>(g.node_count()), {}, true, 0, 0.0};
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    in.values[v] = static_cast<double>(g.in_degree(v));
    out.values[v] = static_cast<double>(g.out_degree(v));
  }
  return {std::move(in), std::move(out)};
}

CentralityVector betweenness(const CitationGraph& g, bool undirected) {
  const auto n = g.node_count();
  const auto adj = adjacency(g, undirected ? Walk::both : Walk::forward);
  const auto [blocks, per_block] = split_blocks(n);
  std::vector<std::vector<double>> partial(blocks);

  for_each_block(blocks, [&](std::size_t b) {
    auto& acc = partial[b];
    acc.assign(n, 0.0);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::int64_t> dist(n, -1);
    std::vector<NodeIndex> order;
    order.reserve(n);
    const auto begin = b * per_block;
    const auto end = std::min(n, begin + per_block);
    for (auto s = static_cast<NodeIndex>(begin); s < end; ++s) {
      for (auto v : order) {
        dist[v] = -1;
        sigma[v] = 0.0;
      }
      order.clear();
      sigma[s] = 1.0;
      dist[s] = 0;
      order.push_back(s);
      for (std::size_t head = 0; head < order.size(); ++head) {
        const auto v = order[head];
        for (auto w : adj[v]) {
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            order.push_back(w);
          }
          if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
        }
      }
      for (auto v : order) delta[v] = 0.0;
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto v = *it;
        for (auto w : adj[v]) {
          if (dist[w] == dist[v] + 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
        if (v != s) acc[v] += delta[v];
      }
    }
  });

  CentralityVector result{Metric::betweenness, std::vector<double>(n, 0.0),
                          with(CentralityOptions{}, [&](auto& o) { o.undirected = undirected; }), true, 0, 0.0};
  for (const auto& acc : partial) {
    for (std::size_t v = 0; v < n; ++v) result.values[v] += acc[v];
  }
  return result;
}

CentralityVector closeness(const CitationGraph& g, ClosenessVariant variant, Direction direction, bool undirected) {
  const auto n = g.node_count();
  // Incoming distances d(u, v) are found by walking backwards from v.
  const Walk walk = undirected ? Walk::both : (direction == Direction::incoming ? Walk::reverse : Walk::forward);
  const auto adj = adjacency(g, walk);
  CentralityVector result{Metric::closeness, std::vector<double>(n, 0.0),
                          with(CentralityOptions{},
                               [&](auto& o) {
                                 o.variant = variant;
                                 o.direction = direction;
                                 o.undirected = undirected;
                               }),
                          true, 0, 0.0};
  const auto [blocks, per_block] = split_blocks(n);
  for_each_block(blocks, [&, per_block = per_block](std::size_t b) {
    std::vector<std::int64_t> dist(n, -1);
    std::vector<NodeIndex> queue;
    const auto begin = b * per_block;
    const auto end = std::min(n, begin + per_block);
    for (auto v = static_cast<NodeIndex>(begin); v < end; ++v) {
      for (auto u : queue) dist[u] = -1;
      queue.clear();
      dist[v] = 0;
      queue.push_back(v);
      double total = 0.0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto x = queue[head];
        total += static_cast<double>(dist[x]);
        for (auto w : adj[x]) {
          if (dist[w] < 0) {
            dist[w] = dist[x] + 1;
            queue.push_back(w);
          }
        }
      }
      const auto reached = static_cast<double>(queue.size());
      if (variant == ClosenessVariant::farness_sum) {
        result.values[v] = total / static_cast<double>(n);
      } else if (queue.size() > 1 && n > 1) {
        result.values[v] = ((reached - 1.0) / total) * ((reached - 1.0) / static_cast<double>(n - 1));
      }
    }
  });
  return result;
}

CentralityVector pagerank(const CitationGraph& g, double damping, double tolerance, std::size_t max_iterations,
                          Dangling dangling) {
  if (g.empty()) throw ValidationError("PageRank needs at least one node");
  if (!(damping > 0.0 && damping < 1.0)) throw ParameterError("damping must lie in (0, 1)");
  if (!(tolerance > 0.0)) throw ParameterError("tolerance must be positive");
  const auto n = g.node_count();
  CentralityVector result{Metric::pagerank, std::vector<double>(n, 1.0),
                          with(CentralityOptions{},
                               [&](auto& o) {
                                 o.damping = damping;
                                 o.tolerance = tolerance;
                                 o.max_iterations = max_iterations;
                                 o.dangling = dangling;
                               }),
                          false, 0, 0.0};
  auto& pr = result.values;
  std::vector<double> next(n), share(n);
  const auto [blocks, per_block] = split_blocks(n);

  while (result.iterations < max_iterations) {
    double dangling_mass = 0.0;
    for (NodeIndex u = 0; u < n; ++u) {
      const auto out = g.out_degree(u);
      share[u] = out == 0 ? 0.0 : pr[u] / static_cast<double>(out);
      if (out == 0) dangling_mass += pr[u];
    }
    const double base =
        (1.0 - damping) + (dangling == Dangling::redistribute ? damping * dangling_mass / static_cast<double>(n) : 0.0);
    for_each_block(blocks, [&, per_block = per_block](std::size_t b) {
      const auto end = std::min(n, (b + 1) * per_block);
      for (auto v = static_cast<NodeIndex>(b * per_block); v < end; ++v) {
        double sum = 0.0;
        for (auto u : g.in_neighbors(v)) sum += share[u];
        next[v] = base + damping * sum;
      }
    });
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - pr[v]);
    pr.swap(next);
    ++result.iterations;
    result.residual = change;
    if (change < tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

CentralityVector compute(const CitationGraph& g, Metric metric, const CentralityOptions& o) {
  switch (metric) {
    case Metric::in_degree: return degree(g).first;
    case Metric::out_degree: return degree(g).second;
    case Metric::betweenness: return betweenness(g, o.undirected);
    case Metric::closeness: return closeness(g, o.variant, o.direction, o.undirected);
    case Metric::pagerank: return pagerank(g, o.damping, o.tolerance, o.max_iterations, o.dangling);
  }
  throw ParameterError("unknown metric");
}

std::vector<RankedNode> top_k(const CitationGraph& g, const CentralityVector& v, std::size_t k) {
  if (k == 0) throw ParameterError("top_k needs K >= 1");
  if (v.values.size() != g.node_count()) throw ParameterError("centrality vector does not match graph");
  std::vector<NodeIndex> order(g.node_count());
  std::iota(order.begin(), order.end(), NodeIndex{0});
  const auto keep = std::min(k, order.size());
  auto better = [&](NodeIndex a, NodeIndex b) {
    if (v.values[a] != v.values[b]) return v.values[a] > v.values[b];
    return g.node_id(a) < g.node_id(b);
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(), better);
  std::vector<RankedNode> ranked;
  ranked.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) ranked.push_back({i + 1, g.node_id(order[i]), v.values[order[i]]});
  return ranked;
}

std::size_t write_centrality_csv(const CitationGraph& g, const CentralityVector& v, std::size_t k,
                                 const std::filesystem::path& path) {
  const auto ranked = g.empty() ? std::vector<RankedNode>{} : top_k(g, v, k == 0 ? g.node_count() : k);
  {
    auto out = open_output(path);
    CsvWriter csv(out);
    csv.row({"node_id", "metric", "value", "rank"});
    for (const auto& r : ranked) {
      csv.field(r.node_id).field(to_string(v.metric)).field(format_real(r.value)).field(std::to_string(r.rank));
      csv.end_row();
    }
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
  }
  auto meta_path = path;
  meta_path += ".meta";
  auto meta = open_output(meta_path);
  const auto& p = v.params;
  meta << "metric=" << to_string(v.metric) << '\n'
       << "nodes=" << g.node_count() << '\n'
       << "edges=" << g.edge_count() << '\n'
       << "rows=" << ranked.size() << '\n';
  switch (v.metric) {
    case Metric::betweenness:
      meta << "undirected=" << (p.undirected ? "true" : "false") << '\n' << "normalized=false\n";
      break;
    case Metric::closeness:
      meta << "variant=" << to_string(p.variant) << '\n'
           << "direction=" << to_string(p.direction) << '\n'
           << "undirected=" << (p.undirected ? "true" : "false") << '\n';
      break;
    case Metric::pagerank:
      meta << "damping=" << format_real(p.damping) << '\n'
           << "tolerance=" << format_real(p.tolerance) << '\n'
           << "max_iterations=" << p.max_iterations << '\n'
           << "dangling=" << to_string(p.dangling) << '\n'
           << "iterations=" << v.iterations << '\n'
           << "residual=" << format_real(v.residual) << '\n'
           << "converged=" << (v.converged ? "true" : "false") << '\n';
      break;
    default:
      break;
  }
  if (!meta) throw IoError("failed writing '" + meta_path.string() + "'");
  return ranked.size();
}

}  // namespace citenet::centrality
