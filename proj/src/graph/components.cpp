#include "citenet/graph/components.hpp"

#include <algorithm>
#include <numeric>

#include "citenet/common/error.hpp"

namespace citenet::graph {

Components weakly_connected_components(const CitationGraph& g) {
  constexpr auto kUnset = UINT32_MAX;
  const auto n = g.node_count();
  std::vector<std::uint32_t> raw(n, kUnset);
  std::vector<std::size_t> raw_sizes;
  std::vector<NodeIndex> stack;

  // Roots are visited in index order, so each raw label's root is its smallest member.
  for (NodeIndex root = 0; root < n; ++root) {
    if (raw[root] != kUnset) continue;
    const auto label = static_cast<std::uint32_t>(raw_sizes.size());
    std::size_t size = 0;
    raw[root] = label;
    stack.push_back(root);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      ++size;
      for (auto w : g.out_neighbors(v)) {
        if (raw[w] == kUnset) {
          raw[w] = label;
          stack.push_back(w);
        }
      }
      for (auto w : g.in_neighbors(v)) {
        if (raw[w] == kUnset) {
          raw[w] = label;
          stack.push_back(w);
        }
      }
    }
    raw_sizes.push_back(size);
  }

  std::vector<std::uint32_t> order(raw_sizes.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return raw_sizes[a] > raw_sizes[b]; });
  std::vector<std::uint32_t> relabel(order.size());
  Components c;
  c.sizes.reserve(order.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    relabel[order[i]] = i;
    c.sizes.push_back(raw_sizes[order[i]]);
  }
  c.label.resize(n);
  for (std::size_t v = 0; v < n; ++v) c.label[v] = relabel[raw[v]];
  return c;
}

CitationGraph largest_component(const CitationGraph& g) {
  if (g.empty()) throw ValidationError("largest component of an empty graph is undefined");
  const auto comps = weakly_connected_components(g);
  std::vector<bool> keep_node(g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) keep_node[v] = comps.label[v] == 0;
  return subgraph(g, keep_node, std::vector<bool>(g.edge_count(), true));
}

}  // namespace citenet::graph
