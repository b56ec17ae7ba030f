#include <random>

#include "doctest.h"
#include "rftag/error.hpp"
#include "rftag/grammar.hpp"
#include "rftag/oracle.hpp"
#include "test_util.hpp"

using namespace rftag;
using rftag::test::t;

TEST_CASE("validate_grammar accepts the fixtures") {
  CHECK(validate_grammar(rftag::test::g0()).empty());
  CHECK(validate_grammar(rftag::test::g1()).empty());
  CHECK(validate_grammar(rftag::test::load_grammar("geps.tag")).empty());
  CHECK(validate_grammar(rftag::test::load_grammar("gred.tag")).empty());
}

TEST_CASE("validate_grammar: foot label must match the root") {
  TagGrammar g = rftag::test::g0();
  g.nonterminals.insert(Symbol::nonterminal("A"));
  g.auxiliary["beta"] = t("(S a A*)");
  std::vector<Violation> bad = validate_grammar(g);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].tree_name == "beta");
  CHECK(bad[0].message == "foot label differs from root label");
}

TEST_CASE("validate_grammar: non-frontier terminal") {
  TagGrammar g = rftag::test::g0();
  g.terminals.insert(Symbol::terminal("b"));
  g.initial["alpha"] = t("(S (a b))");
  std::vector<Violation> bad = validate_grammar(g);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].message == "non-frontier node labeled with a terminal");
  CHECK(bad[0].where == NodeAddress{{0}});
}

TEST_CASE("validate_grammar: structural flags") {
  TagGrammar g = rftag::test::g0();
  SUBCASE("two feet") {
    g.auxiliary["beta"] = t("(S S* S*)");
    bool found = false;
    for (const Violation& v : validate_grammar(g)) found |= v.message == "more than one foot node";
    CHECK(found);
  }
  SUBCASE("initial with a foot") {
    g.initial["alpha"] = t("(S a S*)");
    bool found = false;
    for (const Violation& v : validate_grammar(g)) found |= v.message == "initial tree has a foot node";
    CHECK(found);
  }
  SUBCASE("aux without a foot") {
    g.auxiliary["beta"] = t("(S a a)");
    bool found = false;
    for (const Violation& v : validate_grammar(g)) found |= v.message == "auxiliary tree has no foot node";
    CHECK(found);
  }
  SUBCASE("start not a non-terminal") {
    g.start = Symbol::nonterminal("Z");
    CHECK(validate_grammar(g).size() == 1);
  }
}

TEST_CASE("spine") {
  CHECK(spine(t("(S a S*)")) == std::vector<NodeAddress>{{}, {{1}}});
  CHECK(spine(t("(A (B A* b))")) == std::vector<NodeAddress>{{}, {{0}}, {{0, 0}}});
  CHECK_THROWS_AS((void)spine(t("(S a)")), TagError);
}

TEST_CASE("is_proper") {
  CHECK(is_proper(t("(A (B A* b))")));
  CHECK_FALSE(is_proper(t("(A (B (A (B A* b)) b))")));
  CHECK(is_proper(t("(S a S*)")));
  CHECK_FALSE(is_proper(t("(A (A A* a) b)")));
}

TEST_CASE("proper_segments") {
  SUBCASE("already proper") {
    std::vector<Tree> segs = proper_segments(t("(A (B A* b))"));
    REQUIRE(segs.size() == 1);
    CHECK(segs[0] == t("(A (B A* b))"));
  }
  SUBCASE("composite from adjoining beta_B into beta_A at B") {
    // oracle: perform the adjunction, then split at A-labeled spine nodes
    Tree gamma = adjoin(t("(A (B A* b))"), NodeAddress{{0}}, t("(B (A B* a))"));
    CHECK(render_tree(gamma) == "(A (B (A (B A* b) a)))");
    std::vector<Tree> segs = proper_segments(gamma);
    REQUIRE(segs.size() == 2);
    CHECK(segs[0] == t("(A (B A*))"));
    CHECK(segs[1] == t("(A (B A* b) a)"));
  }
  SUBCASE("beta of g0 composed with itself") {
    std::vector<Tree> segs = proper_segments(t("(S a (S a S*))"));
    REQUIRE(segs.size() == 2);
    CHECK(segs[0] == t("(S a S*)"));
    CHECK(segs[1] == t("(S a S*)"));
  }
}

TEST_CASE("adjoin") {
  SUBCASE("at the root") {
    CHECK(adjoin(t("(S a)"), NodeAddress{}, t("(S a S*)")) == t("(S a (S a))"));
  }
  SUBCASE("at an interior node") {
    Tree out = adjoin(t("(A (B b) a)"), NodeAddress{{0}}, t("(B (A B* a))"));
    CHECK(render_tree(out) == "(A (B (A (B b) a)) a)");
  }
  SUBCASE("label mismatch") {
    CHECK_THROWS_AS((void)adjoin(t("(S a)"), NodeAddress{}, t("(A (B A* b))")), TagError);
  }
  SUBCASE("adjunct without a foot") {
    try {
      (void)adjoin(t("(S a)"), NodeAddress{}, t("(S a)"));
      FAIL("expected an error");
    } catch (const TagError& e) {
      CHECK(e.code() == Errc::not_an_auxiliary_tree);
    }
  }
  SUBCASE("substitution node is an illegal site") {
    try {
      (void)adjoin(t("(S A b)"), NodeAddress{{0}}, t("(A a A*)"));
      FAIL("expected an error");
    } catch (const TagError& e) {
      CHECK(e.code() == Errc::illegal_site);
    }
  }
  SUBCASE("inputs are untouched") {
    Tree host = t("(S a)");
    Tree aux = t("(S a S*)");
    (void)adjoin(host, NodeAddress{}, aux);
    CHECK(host == t("(S a)"));
    CHECK(aux == t("(S a S*)"));
  }
}

TEST_CASE("adjoin at the foot keeps the derived foot") {
  Tree out = adjoin(t("(S a S*)"), NodeAddress{{1}}, t("(S a S*)"));
  CHECK(out == t("(S a (S a S*))"));
  CHECK(find_foot(out) == NodeAddress{{1, 1}});
}

TEST_CASE("substitute") {
  CHECK(substitute(t("(S A b)"), NodeAddress{{0}}, t("(A a)")) == t("(S (A a) b)"));
  SUBCASE("foot is an illegal site") {
    try {
      (void)substitute(t("(S a S*)"), NodeAddress{{1}}, t("(S a)"));
      FAIL("expected an error");
    } catch (const TagError& e) {
      CHECK(e.code() == Errc::illegal_site);
    }
  }
  SUBCASE("label mismatch") {
    try {
      (void)substitute(t("(S A b)"), NodeAddress{{0}}, t("(B b)"));
      FAIL("expected an error");
    } catch (const TagError& e) {
      CHECK(e.code() == Errc::label_mismatch);
    }
  }
  SUBCASE("substituting an auxiliary tree") {
    CHECK_THROWS_AS((void)substitute(t("(S A b)"), NodeAddress{{0}}, t("(A a A*)")), TagError);
  }
}

namespace {

// random derived trees over g0/g1 shapes for the splice property
Tree random_tree(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> coin(0, 1);
  if (depth <= 0 || coin(rng) == 0) {
    return coin(rng) ? rftag::test::t("(S a)") : rftag::test::t("(S a (S a))");
  }
  Tree sub = random_tree(rng, depth - 1);
  Tree node = rftag::test::t("(S a)");
  node.children.push_back(sub);
  return node;
}

}  // namespace

TEST_CASE("yield of adjoin splices the adjunct's yield around the excised part") {
  std::mt19937 rng(7);
  Tree aux = t("(S a (S b S*))");
  for (int i = 0; i < 40; ++i) {
    Tree host = random_tree(rng, 3);
    std::vector<NodeAddress> addrs = all_addresses(host);
    std::uniform_int_distribution<std::size_t> pick(0, addrs.size() - 1);
    NodeAddress at = addrs[pick(rng)];
    const Tree* site = node_at(host, at);
    if (site->label != aux.label || is_substitution_node(*site)) continue;

    Tree out = adjoin(host, at, aux);
    // expected: yield(host) with the excised yield replaced by the aux yield
    // whose foot position carries the excised yield
    std::vector<std::string> host_yield = tree_yield(host);
    std::vector<std::string> excised = tree_yield(*site);
    std::vector<std::string> aux_yield = tree_yield(aux);  // foot shows up as "S"
    std::vector<std::string> expected;
    // locate the excised block: count frontier tokens left of the site
    std::size_t before = 0;
    {
      // walk the host frontier until reaching the subtree at `at`
      std::function<bool(const Tree&, NodeAddress)> walk = [&](const Tree& n, NodeAddress cur) {
        if (cur == at) return true;
        if (n.leaf()) {
          if (!n.label.is_epsilon()) ++before;
          return false;
        }
        for (std::size_t k = 0; k < n.children.size(); ++k) {
          if (walk(n.children[k], cur.child(k))) return true;
        }
        return false;
      };
      walk(host, {});
    }
    expected.assign(host_yield.begin(), host_yield.begin() + static_cast<std::ptrdiff_t>(before));
    for (const std::string& tok : aux_yield) {
      if (tok == "S") {
        expected.insert(expected.end(), excised.begin(), excised.end());
      } else {
        expected.push_back(tok);
      }
    }
    expected.insert(expected.end(),
                    host_yield.begin() + static_cast<std::ptrdiff_t>(before + excised.size()),
                    host_yield.end());
    CHECK(tree_yield(out) == expected);
  }
}

TEST_CASE("proper segments splice back to the original") {
  // every derivable auxiliary tree reassembles from its proper segments
  TagGrammar g = rftag::test::g1();
  Enumeration e = enumerate_derived(g, DerivationBudget{14, 1000000}, false);
  std::size_t checked = 0;
  for (const Tree& tr : e.trees) {
    if (!has_foot(tr)) continue;
    std::vector<Tree> segs = proper_segments(tr);
    Tree acc = segs[0];
    for (std::size_t i = 1; i < segs.size(); ++i) {
      acc = adjoin(acc, spine(acc).back(), segs[i]);
    }
    CHECK(acc == tr);
    for (const Tree& seg : segs) CHECK(is_proper(seg));
    ++checked;
  }
  CHECK(checked > 3);
}

TEST_CASE("project_labels") {
  ProjectionMap id;
  for (const char* n : {"S"}) id.to_base[Symbol::nonterminal(n)] = Symbol::nonterminal(n);
  id.to_base[Symbol::terminal("a")] = Symbol::terminal("a");
  CHECK(project_labels(t("(S a (S a))"), id) == t("(S a (S a))"));

  ProjectionMap m;
  m.to_base[Symbol::nonterminal("S_0")] = Symbol::nonterminal("S");
  m.to_base[Symbol::nonterminal("S_1")] = Symbol::nonterminal("S");
  m.to_base[Symbol::terminal("a")] = Symbol::terminal("a");
  CHECK(project_labels(t("(S_0 a (S_1 a))"), m) == t("(S a (S a))"));

  try {
    (void)project_labels(t("(S b)"), m);
    FAIL("expected an error");
  } catch (const TagError& e) {
    CHECK(e.code() == Errc::unmapped_label);
  }
}
