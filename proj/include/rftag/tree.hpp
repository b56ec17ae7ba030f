#ifndef RFTAG_TREE_HPP
#define RFTAG_TREE_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rftag/symbol.hpp"

namespace rftag {

// Path of child indices from the root; the root itself is the empty path.
struct NodeAddress {
  std::vector<std::size_t> path;

  static NodeAddress root() { return {}; }
  bool is_root() const { return path.empty(); }
  std::size_t depth() const { return path.size(); }

  NodeAddress child(std::size_t i) const {
    NodeAddress a = *this;
    a.path.push_back(i);
    return a;
  }

  std::string to_string() const;

  auto operator<=>(const NodeAddress&) const = default;
};

// Ordered labeled tree. A frontier node with `foot` set is the foot of an
// auxiliary tree; `anchor` marks the lexical anchor of an elementary tree.
// A frontier non-terminal without the foot flag counts as a substitution
// node; there is no separate marker.
struct Tree {
  Symbol label;
  std::vector<Tree> children;
  bool foot = false;
  bool anchor = false;

  bool leaf() const { return children.empty(); }
  std::size_t node_count() const;
};

// Three-way structural comparison. Foot flags participate, anchor flags do
// not: trees differing only in anchors compare equal.
std::strong_ordering compare_trees(const Tree& a, const Tree& b);

inline bool operator==(const Tree& a, const Tree& b) {
  return compare_trees(a, b) == std::strong_ordering::equal;
}
inline bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }
inline bool operator<(const Tree& a, const Tree& b) {
  return compare_trees(a, b) == std::strong_ordering::less;
}

// Node lookup; nullptr when the address walks off the tree.
const Tree* node_at(const Tree& t, const NodeAddress& at);

// Functional replacement of the subtree at `at`. Throws invalid_address.
Tree replace_at(const Tree& t, const NodeAddress& at, Tree sub);

// All node addresses in preorder.
std::vector<NodeAddress> all_addresses(const Tree& t);

// Address of the unique foot node, if any.
std::optional<NodeAddress> find_foot(const Tree& t);

inline bool has_foot(const Tree& t) { return find_foot(t).has_value(); }

// Frontier labels left to right, epsilon leaves skipped. Completed trees
// yield pure terminal strings; other trees may contribute non-terminal names.
std::vector<std::string> tree_yield(const Tree& t);

// Height in nodes: a single leaf has depth 1.
std::size_t tree_depth(const Tree& t);

// Parenthesized text form, e.g. "(S a (S a S*))"; anchors render as "@a".
std::string render_tree(const Tree& t);

}  // namespace rftag

#endif
