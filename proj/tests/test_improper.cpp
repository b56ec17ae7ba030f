#include "doctest.h"
#include "rftag/error.hpp"
#include "rftag/grammar.hpp"
#include "rftag/oracle.hpp"
#include "test_util.hpp"

using namespace rftag;
using rftag::test::t;

namespace {

std::set<Tree> projected(const std::set<Tree>& trees, const ProjectionMap& m) {
  std::set<Tree> out;
  for (const Tree& tr : trees) out.insert(project_labels(tr, m));
  return out;
}

void check_projection_property(const TagGrammar& g, std::size_t budget) {
  auto [g2, pm] = eliminate_improper(g);
  CHECK(validate_grammar(g2).empty());
  for (const auto& [name, tr] : g2.auxiliary) {
    CHECK(is_proper(tr));
  }
  DerivationBudget b{budget, 10000000};
  std::set<Tree> base = enumerate_derived(g, b, true).trees;
  std::set<Tree> refined = enumerate_derived(g2, b, true).trees;
  CHECK(projected(refined, pm) == base);
}

}  // namespace

TEST_CASE("eliminate_improper duplicates auxiliary trees per root index") {
  auto [g2, pm] = eliminate_improper(rftag::test::g0());
  CHECK(g2.auxiliary.size() == 2);
  CHECK(g2.auxiliary.count("beta_0"));
  CHECK(g2.auxiliary.count("beta_1"));
  CHECK(g2.auxiliary.at("beta_0") == t("(S_0 a_0 S_0*)"));
  CHECK(g2.auxiliary.at("beta_1") == t("(S_1 a_0 S_1*)"));
  CHECK(g2.initial.at("alpha") == t("(S_0 a_0)"));
  CHECK(g2.start == Symbol::nonterminal("S_0"));
}

TEST_CASE("eliminate_improper removes improperness along the spine") {
  TagGrammar g = rftag::test::load_grammar("g_improper.tag");
  REQUIRE_FALSE(is_proper(g.auxiliary.at("beta")));
  auto [g2, pm] = eliminate_improper(g);
  // the index-0 copy carries the opposite index on the repeating spine node
  CHECK(g2.auxiliary.at("beta_0") == t("(A_0 (A_1 A_0* a_0) b_0)"));
  CHECK(g2.auxiliary.at("beta_1") == t("(A_1 (A_0 A_1* a_0) b_0)"));
  for (const auto& [name, tr] : g2.auxiliary) CHECK(is_proper(tr));
}

TEST_CASE("eliminate_improper on a grammar without auxiliaries only relabels") {
  TagGrammar g;
  g.terminals = {Symbol::terminal("a")};
  g.nonterminals = {Symbol::nonterminal("S")};
  g.start = Symbol::nonterminal("S");
  g.initial.emplace("alpha", t("(S a)"));
  auto [g2, pm] = eliminate_improper(g);
  CHECK(g2.auxiliary.empty());
  CHECK(g2.initial.size() == 1);
  CHECK(g2.initial.at("alpha") == t("(S_0 a_0)"));
  CHECK(project_labels(g2.initial.at("alpha"), pm) == t("(S a)"));
}

TEST_CASE("eliminate_improper rejects invalid grammars") {
  TagGrammar g = rftag::test::g0();
  g.start = Symbol::nonterminal("Z");
  CHECK_THROWS_AS((void)eliminate_improper(g), TagError);
}

TEST_CASE("projection preserves the bounded completed tree set") {
  check_projection_property(rftag::test::g0(), 12);
  check_projection_property(rftag::test::g1(), 12);
  check_projection_property(rftag::test::load_grammar("g_improper.tag"), 12);
  check_projection_property(rftag::test::load_grammar("geps.tag"), 12);
  check_projection_property(rftag::test::load_grammar("gred.tag"), 12);
}

TEST_CASE("projection map refines kinds consistently") {
  auto [g2, pm] = eliminate_improper(rftag::test::g1());
  for (const auto& [from, to] : pm.to_base) {
    CHECK(from.kind == to.kind);
  }
  // epsilon keeps its reserved name
  CHECK(pm.to_base.at(Symbol::epsilon()) == Symbol::epsilon());
}
