#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "citenet/graph/citation_graph.hpp"

namespace citenet::graph {

/// Weak component labels. Label 0 is the largest component; equal sizes are
/// ordered by their smallest member index.
struct Components {
  std::vector<std::uint32_t> label;  // per node
  std::vector<std::size_t> sizes;    // per label

  std::size_t count() const { return sizes.size(); }
};

Components weakly_connected_components(const CitationGraph& g);

/// Induced subgraph on component 0. Throws ValidationError on an empty graph.
CitationGraph largest_component(const CitationGraph& g);

}  // namespace citenet::graph
