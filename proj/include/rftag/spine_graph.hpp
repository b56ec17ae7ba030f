#ifndef RFTAG_SPINE_GRAPH_HPP
#define RFTAG_SPINE_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include "rftag/grammar.hpp"

namespace rftag {

// Label of one spine step of an elementary auxiliary tree. The segment is
// the material dominated by the step's source node but not properly
// dominated by its target node; the target position is marked by a
// foot-flagged leaf labeled with the target vertex, where the next segment
// (or the final foot) splices in.
struct EdgeLabel {
  std::string aux_name;
  std::size_t index = 0;
  Tree segment;
};

struct SpineEdge {
  Symbol src;
  Symbol dst;
  EdgeLabel label;
};

struct SpineGraph {
  std::set<Symbol> vertices;
  std::vector<SpineEdge> edges;
};

// Spine graph in reduced form: one edge per consecutive spine-node pair of
// each elementary auxiliary tree, then vertices whose label roots no
// auxiliary tree are eliminated by fusing consecutive same-tree edge pairs.
SpineGraph build_spine_graph(const TagGrammar& g);

// Well-formed cycle test: can the single-stack automaton traverse exactly
// this edge walk, starting and halting with an empty stack?
bool trace_wfc(const SpineGraph& sg, const std::vector<SpineEdge>& walk);

struct CycleWitness {
  std::vector<Symbol> vertex_sequence;  // first == last
  std::vector<EdgeLabel> edge_sequence;
  Tree cycle_tree;
  bool wfc_equivalent = false;
};

// All directed cycles with pairwise-distinct vertices, one per start vertex
// (rotations are distinct witnesses) and per choice of parallel edge.
std::vector<CycleWitness> simple_cycles(const SpineGraph& sg);

// True iff every simple cycle is equivalent to some wfc, i.e. some traceable
// walk concatenates to the same auxiliary tree. The witness list carries the
// per-cycle verdicts. A negative answer does not say the derived tree set is
// unrecognizable, only that the closure condition fails.
std::pair<bool, std::vector<CycleWitness>> check_regular_form(const TagGrammar& g);

// Adds the cycle trees of all non-wfc-equivalent simple cycles as new
// elementary auxiliary trees and re-runs the decision. The language may grow.
std::pair<TagGrammar, std::vector<Tree>> extend_to_regular_form(const TagGrammar& g);

std::string to_dot(const SpineGraph& sg);

}  // namespace rftag

#endif
