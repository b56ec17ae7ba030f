#include "rftag/tree.hpp"

#include <sstream>

#include "rftag/error.hpp"

namespace rftag {

std::string NodeAddress::to_string() const {
  if (path.empty()) return "r";
  std::ostringstream os;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) os << '.';
    os << path[i];
  }
  return os.str();
}

std::size_t Tree::node_count() const {
  std::size_t n = 1;
  for (const Tree& c : children) n += c.node_count();
  return n;
}

std::strong_ordering compare_trees(const Tree& a, const Tree& b) {
  if (auto c = a.label <=> b.label; c != 0) return c;
  if (auto c = a.foot <=> b.foot; c != 0) return c;
  if (auto c = a.children.size() <=> b.children.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (auto c = compare_trees(a.children[i], b.children[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

const Tree* node_at(const Tree& t, const NodeAddress& at) {
  const Tree* cur = &t;
  for (std::size_t i : at.path) {
    if (i >= cur->children.size()) return nullptr;
    cur = &cur->children[i];
  }
  return cur;
}

Tree replace_at(const Tree& t, const NodeAddress& at, Tree sub) {
  if (at.is_root()) return sub;
  Tree out = t;
  Tree* cur = &out;
  for (std::size_t d = 0; d + 1 < at.path.size(); ++d) {
    std::size_t i = at.path[d];
    if (i >= cur->children.size()) fail(Errc::invalid_address, "address " + at.to_string() + " not in tree");
    cur = &cur->children[i];
  }
  std::size_t last = at.path.back();
  if (last >= cur->children.size()) fail(Errc::invalid_address, "address " + at.to_string() + " not in tree");
  cur->children[last] = std::move(sub);
  return out;
}

static void collect_addresses(const Tree& t, NodeAddress cur, std::vector<NodeAddress>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    collect_addresses(t.children[i], cur.child(i), out);
  }
}

std::vector<NodeAddress> all_addresses(const Tree& t) {
  std::vector<NodeAddress> out;
  collect_addresses(t, NodeAddress::root(), out);
  return out;
}

static bool find_foot_rec(const Tree& t, NodeAddress cur, std::optional<NodeAddress>& found) {
  if (t.foot) {
    found = cur;
    return true;
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (find_foot_rec(t.children[i], cur.child(i), found)) return true;
  }
  return false;
}

std::optional<NodeAddress> find_foot(const Tree& t) {
  std::optional<NodeAddress> found;
  find_foot_rec(t, NodeAddress::root(), found);
  return found;
}

static void yield_rec(const Tree& t, std::vector<std::string>& out) {
  if (t.leaf()) {
    if (!t.label.is_epsilon()) out.push_back(t.label.name);
    return;
  }
  for (const Tree& c : t.children) yield_rec(c, out);
}

std::vector<std::string> tree_yield(const Tree& t) {
  std::vector<std::string> out;
  yield_rec(t, out);
  return out;
}

std::size_t tree_depth(const Tree& t) {
  std::size_t d = 0;
  for (const Tree& c : t.children) d = std::max(d, tree_depth(c));
  return d + 1;
}

static void render_leaf(const Tree& t, std::ostream& os) {
  if (t.anchor) os << '@';
  os << t.label.name;
  if (t.foot) os << '*';
}

static void render_rec(const Tree& t, std::ostream& os) {
  if (t.leaf()) {
    render_leaf(t, os);
    return;
  }
  os << '(' << t.label.name;
  for (const Tree& c : t.children) {
    os << ' ';
    render_rec(c, os);
  }
  os << ')';
}

std::string render_tree(const Tree& t) {
  std::ostringstream os;
  if (t.leaf()) {
    // a one-node tree still gets parentheses so the text form is unambiguous
    os << '(';
    render_leaf(t, os);
    os << ')';
  } else {
    render_rec(t, os);
  }
  return os.str();
}

}  // namespace rftag
