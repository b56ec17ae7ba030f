#include "doctest.h"
#include "rftag/error.hpp"
#include "rftag/text.hpp"
#include "test_util.hpp"

using namespace rftag;
using rftag::test::t;

TEST_CASE("parse_grammar_file on the fixtures") {
  TagGrammar g0 = rftag::test::load_grammar("g0.tag");
  CHECK(g0.start == Symbol::nonterminal("S"));
  REQUIRE(g0.initial.size() == 1);
  REQUIRE(g0.auxiliary.size() == 1);
  CHECK(g0.initial.count("alpha"));
  CHECK(g0.auxiliary.count("beta"));
  CHECK(g0.initial.at("alpha") == t("(S a)"));
  CHECK(g0.terminals == std::set<Symbol>{Symbol::terminal("a")});

  TagGrammar g1 = rftag::test::load_grammar("g1.tag");
  CHECK(g1.auxiliary.count("beta_A"));
  CHECK(g1.auxiliary.count("beta_B"));
}

TEST_CASE("unnamed trees are auto-named in file order") {
  TagGrammar g = parse_grammar_file("start: S\ninit: (S a)\ninit: (S b)\naux: (S a S*)\n");
  CHECK(g.initial.count("alpha1"));
  CHECK(g.initial.count("alpha2"));
  CHECK(g.auxiliary.count("beta1"));
}

TEST_CASE("render/parse round trip preserves every fixture") {
  for (const char* name : {"g0.tag", "g1.tag", "geps.tag", "gred.tag", "g_twoloops.tag",
                           "g_improper.tag"}) {
    CAPTURE(name);
    TagGrammar g = rftag::test::load_grammar(name);
    TagGrammar again = parse_grammar_file(render_grammar(g));
    CHECK(again.start == g.start);
    CHECK(again.terminals == g.terminals);
    CHECK(again.nonterminals == g.nonterminals);
    CHECK(again.initial == g.initial);
    CHECK(again.auxiliary == g.auxiliary);
  }
}

TEST_CASE("anchors survive the round trip") {
  Tree anchored = parse_tree_text("(S S* @a)");
  CHECK(anchored.children[1].anchor);
  CHECK(render_tree(anchored) == "(S S* @a)");
}

TEST_CASE("grammar file errors carry positions") {
  SUBCASE("missing start symbol") {
    try {
      (void)parse_grammar_file("init alpha: (S a)\n");
      FAIL("expected an error");
    } catch (const TagError& e) {
      CHECK(std::string(e.what()).find("no start symbol") != std::string::npos);
    }
  }
  SUBCASE("two foot nodes") {
    try {
      (void)parse_grammar_file("start: S\ninit alpha: (S a)\naux beta: (S S* S*)\n");
      FAIL("expected an error");
    } catch (const TagError& e) {
      std::string msg = e.what();
      CHECK(msg.find("beta") != std::string::npos);
      CHECK(msg.find("line 3") != std::string::npos);
      CHECK(msg.find("foot") != std::string::npos);
    }
  }
  SUBCASE("foot marker on a terminal") {
    CHECK_THROWS_AS((void)parse_grammar_file("start: S\ninit alpha: (S a*)\n"), TagError);
  }
  SUBCASE("anchor marker on a non-terminal") {
    CHECK_THROWS_AS((void)parse_grammar_file("start: S\ninit alpha: (S @A)\n"), TagError);
  }
  SUBCASE("foot marker on an internal node") {
    CHECK_THROWS_AS((void)parse_grammar_file("start: S\naux beta: (S* a)\n"), TagError);
  }
  SUBCASE("unbalanced parens") {
    try {
      (void)parse_grammar_file("start: S\ninit alpha: (S (A a)\n");
      FAIL("expected an error");
    } catch (const TagError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("duplicate tree name") {
    CHECK_THROWS_AS(
        (void)parse_grammar_file("start: S\ninit x: (S a)\ninit x: (S a)\n"), TagError);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  TagGrammar g = parse_grammar_file("# heading\n\nstart: S  # trailing\ninit alpha: (S a) # tree\n");
  CHECK(g.initial.size() == 1);
}

TEST_CASE("parse_cfg_file") {
  Cfg c = rftag::test::load_cfg("gcfg1.cfg");
  CHECK(c.start == Symbol::nonterminal("S"));
  REQUIRE(c.productions.size() == 2);
  CHECK(c.productions[0].rhs.size() == 2);
  CHECK(c.productions[1].rhs == std::vector<Symbol>{Symbol::terminal("b")});

  SUBCASE("epsilon production") {
    Cfg eps = parse_cfg_file("S -> <eps>\n");
    REQUIRE(eps.productions.size() == 1);
    CHECK(eps.productions[0].rhs.empty());
  }
  SUBCASE("first production head is the default start") {
    Cfg d = parse_cfg_file("T -> a\nS -> b\n");
    CHECK(d.start == Symbol::nonterminal("T"));
  }
  SUBCASE("malformed arrow") {
    try {
      (void)parse_cfg_file("S = a\n");
      FAIL("expected an error");
    } catch (const TagError& e) {
      CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
  }
  SUBCASE("epsilon inside a non-empty rhs") {
    CHECK_THROWS_AS((void)parse_cfg_file("S -> a <eps>\n"), TagError);
  }
  SUBCASE("terminal head") {
    CHECK_THROWS_AS((void)parse_cfg_file("s -> a\n"), TagError);
  }
}

TEST_CASE("render_cfg round trip") {
  Cfg c = rftag::test::load_cfg("cfg_mutual.cfg");
  Cfg again = parse_cfg_file(render_cfg(c));
  CHECK(again.start == c.start);
  CHECK(again.productions == c.productions);
  CHECK(again.terminals == c.terminals);
}

TEST_CASE("validation failures surface as grammar errors") {
  try {
    (void)parse_grammar_file("start: S\ninit alpha: (S a)\naux beta: (S a A*)\n");
    FAIL("expected an error");
  } catch (const TagError& e) {
    CHECK(e.code() == Errc::invalid_grammar);
    CHECK(std::string(e.what()).find("foot label differs") != std::string::npos);
  }
}
