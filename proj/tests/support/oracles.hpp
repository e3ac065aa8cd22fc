#pragma once

// Reference implementations used only by tests. Each one is written from
// the definition, without sharing code paths with the library.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "citenet/common/rng.hpp"
#include "citenet/graph/citation_graph.hpp"

namespace citenet::testing {

inline std::string node_name(std::size_t i) { return "n" + std::to_string(i); }

/// Random directed edge list over n named nodes with edge probability p,
/// intents drawn from [0, k) and confidences from a coarse grid so ties occur.
/// Duplicate contexts appear with probability `dup`.
inline std::vector<graph::CitationEdge> random_edges(Rng& rng, std::size_t n, double p, std::uint32_t k = 3,
                                                     double dup = 0.0, bool self_loops = false) {
  std::vector<graph::CitationEdge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v && !self_loops) continue;
      if (!rng.bernoulli(p)) continue;
      do {
        edges.push_back({node_name(u), node_name(v), static_cast<std::uint32_t>(rng.index(k)),
                         static_cast<double>(rng.index(5)) / 4.0});
      } while (rng.bernoulli(dup));
    }
  }
  rng.shuffle(std::span(edges));
  return edges;
}

inline std::vector<std::string> intent_names(std::uint32_t k) {
  std::vector<std::string> out;
  for (std::uint32_t i = 0; i < k; ++i) out.push_back("i" + std::to_string(i));
  return out;
}

/// Deduplicated adjacency matrix of a library graph (row = citing).
inline std::vector<std::vector<bool>> adjacency_matrix(const graph::CitationGraph& g, bool undirected = false) {
  const auto n = g.node_count();
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (const auto& e : graph::edge_list(g)) {
    const auto u = *g.find(e.citing_id), v = *g.find(e.cited_id);
    a[u][v] = true;
    if (undirected) a[v][u] = true;
  }
  return a;
}

constexpr long kUnreachable = std::numeric_limits<long>::max() / 4;

/// Floyd-Warshall hop distances.
inline std::vector<std::vector<long>> all_pairs_distances(const std::vector<std::vector<bool>>& a) {
  const auto n = a.size();
  std::vector<std::vector<long>> d(n, std::vector<long>(n, kUnreachable));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j] && i != j) d[i][j] = 1;
    }
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
    }
  }
  return d;
}

/// Number of shortest s-t paths for every pair, counted layer by layer from
/// the distance matrix. Exact integers.
inline std::vector<std::vector<std::uint64_t>> shortest_path_counts(const std::vector<std::vector<bool>>& a,
                                                                    const std::vector<std::vector<long>>& d) {
  const auto n = a.size();
  std::vector<std::vector<std::uint64_t>> sigma(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return d[s][x] < d[s][y]; });
    sigma[s][s] = 1;
    for (auto t : order) {
      if (t == s || d[s][t] >= kUnreachable) continue;
      for (std::size_t u = 0; u < n; ++u) {
        if (a[u][t] && u != t && d[s][u] + 1 == d[s][t]) sigma[s][t] += sigma[s][u];
      }
    }
  }
  return sigma;
}

/// g(v) = sum over ordered pairs s != v != t of sigma_st(v) / sigma_st,
/// with sigma_st(v) = sigma_sv * sigma_vt when v lies on a shortest s-t path.
inline std::vector<double> brute_force_betweenness(const std::vector<std::vector<bool>>& a) {
  const auto n = a.size();
  const auto d = all_pairs_distances(a);
  const auto sigma = shortest_path_counts(a, d);
  std::vector<double> g(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        if (s == v || t == v || s == t || d[s][t] >= kUnreachable) continue;
        if (d[s][v] + d[v][t] != d[s][t]) continue;
        g[v] += static_cast<double>(sigma[s][v] * sigma[v][t]) / static_cast<double>(sigma[s][t]);
      }
    }
  }
  return g;
}

/// Closeness from the distance matrix; `into` selects distances d(u, v).
inline std::vector<double> reference_closeness(const std::vector<std::vector<bool>>& a, bool into, bool farness) {
  const auto n = a.size();
  const auto d = all_pairs_distances(a);
  std::vector<double> c(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    double total = 0.0;
    double reached = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      const auto dist = into ? d[u][v] : d[v][u];
      if (u == v || dist >= kUnreachable) continue;
      total += static_cast<double>(dist);
      reached += 1.0;
    }
    if (farness) {
      c[v] = total / static_cast<double>(n);
    } else if (reached > 0) {
      c[v] = (reached / total) * (reached / static_cast<double>(n - 1));
    }
  }
  return c;
}

/// Solves (I - d M) PR = (1 - d) 1 where M is column-stochastic over the
/// citation direction; dangling columns are 1/N (redistribute) or 0 (drop).
inline Eigen::VectorXd dense_pagerank(const std::vector<std::vector<bool>>& a, double d, bool redistribute) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    const auto out = std::count(a[u].begin(), a[u].end(), true);
    for (Eigen::Index v = 0; v < n; ++v) {
      if (out == 0) {
        m(v, u) = redistribute ? 1.0 / static_cast<double>(n) : 0.0;
      } else if (a[u][v]) {
        m(v, u) = 1.0 / static_cast<double>(out);
      }
    }
  }
  const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) - d * m;
  const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n, 1.0 - d);
  return lhs.fullPivLu().solve(rhs);
}

/// Disjoint-set forest with path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
  std::size_t sets() {
    std::size_t count = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) count += find(i) == i;
    return count;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct NaiveCounts {
  std::size_t nodes = 0, edges = 0, components = 0;
};

/// Collapses duplicate pairs (highest confidence wins, first seen on ties),
/// removes edges whose intent is listed, drops nodes left without edges, and
/// counts what is left. `extra_nodes` are isolated nodes present before filtering.
inline NaiveCounts naive_filter_counts(const std::vector<graph::CitationEdge>& edges,
                                       const std::set<std::uint32_t>& removed,
                                       const std::vector<std::string>& extra_nodes = {}, bool drop_isolated = true) {
  std::map<std::pair<std::string, std::string>, graph::CitationEdge> unique;
  std::set<std::string> all_nodes(extra_nodes.begin(), extra_nodes.end());
  for (const auto& e : edges) {
    if (e.citing_id == e.cited_id) continue;
    all_nodes.insert(e.citing_id);
    all_nodes.insert(e.cited_id);
    auto [it, fresh] = unique.emplace(std::pair(e.citing_id, e.cited_id), e);
    if (!fresh && e.confidence.value_or(-1.0) > it->second.confidence.value_or(-1.0)) it->second = e;
  }
  std::vector<std::pair<std::string, std::string>> kept;
  for (const auto& [key, e] : unique) {
    if (!removed.empty() && e.intent && removed.count(*e.intent)) continue;
    kept.push_back(key);
  }
  std::set<std::string> nodes;
  if (removed.empty() || !drop_isolated) {
    nodes = all_nodes;
  } else {
    for (const auto& [u, v] : kept) {
      nodes.insert(u);
      nodes.insert(v);
    }
  }
  std::map<std::string, std::size_t> index;
  for (const auto& id : nodes) index.emplace(id, index.size());
  UnionFind uf(nodes.size());
  for (const auto& [u, v] : kept) uf.unite(index.at(u), index.at(v));
  return {nodes.size(), kept.size(), uf.sets()};
}

}  // namespace citenet::testing
