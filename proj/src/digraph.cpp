#include "rftag/digraph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rftag {

namespace {

std::map<Symbol, std::vector<std::size_t>> adjacency(const std::vector<DigraphEdge>& edges) {
  std::map<Symbol, std::vector<std::size_t>> adj;
  for (std::size_t i = 0; i < edges.size(); ++i) adj[edges[i].src].push_back(i);
  return adj;
}

}  // namespace

std::vector<std::vector<std::size_t>> enumerate_simple_cycles(const std::vector<DigraphEdge>& edges) {
  auto adj = adjacency(edges);
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> path;
  std::set<Symbol> visited;

  std::function<void(const Symbol&, const Symbol&)> dfs = [&](const Symbol& start, const Symbol& at) {
    auto it = adj.find(at);
    if (it == adj.end()) return;
    for (std::size_t ei : it->second) {
      const Symbol& to = edges[ei].dst;
      if (to == start) {
        path.push_back(ei);
        cycles.push_back(path);
        path.pop_back();
      } else if (!visited.count(to)) {
        visited.insert(to);
        path.push_back(ei);
        dfs(start, to);
        path.pop_back();
        visited.erase(to);
      }
    }
  };

  for (const auto& [start, outs] : adj) {
    visited.clear();
    visited.insert(start);
    dfs(start, start);
  }
  return cycles;
}

std::vector<std::vector<std::size_t>> enumerate_simple_paths_to_sinks(
    const std::vector<DigraphEdge>& edges, const std::function<bool(const Symbol&)>& is_sink) {
  auto adj = adjacency(edges);
  std::vector<std::vector<std::size_t>> paths;
  std::vector<std::size_t> path;
  std::set<Symbol> visited;

  std::function<void(const Symbol&)> dfs = [&](const Symbol& at) {
    auto it = adj.find(at);
    if (it == adj.end()) return;
    for (std::size_t ei : it->second) {
      const Symbol& to = edges[ei].dst;
      if (is_sink(to)) {
        path.push_back(ei);
        paths.push_back(path);
        path.pop_back();
      } else if (!visited.count(to)) {
        visited.insert(to);
        path.push_back(ei);
        dfs(to);
        path.pop_back();
        visited.erase(to);
      }
    }
  };

  for (const auto& [start, outs] : adj) {
    if (is_sink(start)) continue;
    visited.clear();
    visited.insert(start);
    dfs(start);
  }
  return paths;
}

}  // namespace rftag
