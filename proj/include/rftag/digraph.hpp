#ifndef RFTAG_DIGRAPH_HPP
#define RFTAG_DIGRAPH_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "rftag/symbol.hpp"

namespace rftag {

// Minimal directed multigraph view shared by the spine graph and the
// left-corner derivation graph. Edges are referenced by index.
struct DigraphEdge {
  Symbol src;
  Symbol dst;
};

// All simple cycles as edge-index sequences. Every rotation is enumerated
// separately (once per start vertex) and parallel edges give distinct
// cycles. Edge order within the input determines the output order.
std::vector<std::vector<std::size_t>> enumerate_simple_cycles(const std::vector<DigraphEdge>& edges);

// All simple paths (distinct vertices) that start at a non-sink vertex and
// end at a vertex satisfying `is_sink`.
std::vector<std::vector<std::size_t>> enumerate_simple_paths_to_sinks(
    const std::vector<DigraphEdge>& edges, const std::function<bool(const Symbol&)>& is_sink);

}  // namespace rftag

#endif
