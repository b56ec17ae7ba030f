#include "rftag/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "rftag/automaton.hpp"
#include "rftag/error.hpp"
#include "rftag/lexicalize.hpp"
#include "rftag/oracle.hpp"
#include "rftag/recognizer.hpp"
#include "rftag/spine_graph.hpp"
#include "rftag/text.hpp"

namespace rftag {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot write '" + path + "'");
  out << text;
}

int errc_exit_code(Errc c) {
  switch (c) {
    case Errc::budget_exceeded:
    case Errc::state_explosion:
    case Errc::nontermination_guard:
      return 3;
    default:
      return 2;
  }
}

std::string describe_cycle(const CycleWitness& w) {
  std::ostringstream os;
  os << "cycle:";
  for (std::size_t i = 0; i < w.vertex_sequence.size(); ++i) {
    os << (i ? " -> " : " ") << w.vertex_sequence[i].name;
  }
  os << "  edges:";
  for (const EdgeLabel& e : w.edge_sequence) os << ' ' << e.aux_name << ':' << e.index;
  os << "  tree: " << render_tree(w.cycle_tree);
  os << "  wfc-equivalent: " << (w.wfc_equivalent ? "yes" : "no");
  return os.str();
}

int cmd_check(const std::string& file, std::ostream& report) {
  TagGrammar g = parse_grammar_file(read_file(file));
  auto [ok, witnesses] = check_regular_form(g);
  report << "simple cycles: " << witnesses.size() << "\n";
  for (const CycleWitness& w : witnesses) report << describe_cycle(w) << "\n";
  report << "regular form: " << (ok ? "yes" : "no") << "\n";
  if (!ok) {
    report << "note: a negative verdict only means the closure condition fails; "
              "it does not assert that the derived tree set is unrecognizable\n";
  }
  return ok ? 0 : 1;
}

int cmd_extend(const std::string& file, const std::string& out, std::ostream& report) {
  TagGrammar g = parse_grammar_file(read_file(file));
  auto [extended, added] = extend_to_regular_form(g);
  std::string text = render_grammar(extended);
  if (out.empty()) {
    report << text;
  } else {
    write_file(out, text);
    report << "wrote " << out << " (added " << added.size() << " auxiliary trees)\n";
  }
  return 0;
}

int cmd_lexicalize(const std::string& file, const std::string& strategy, bool lexicalized,
                   bool close_subst, const std::string& out, std::ostream& report) {
  Cfg c = parse_cfg_file(read_file(file));
  ExpansionStrategy s = strategy == "rightmost" ? ExpansionStrategy::rightmost()
                                                : ExpansionStrategy::leftmost();
  TagGrammar g = cfg_to_regular_tag(c, s, lexicalized);
  if (close_subst) g = close_substitution(g);
  std::string text = render_grammar(g);
  if (out.empty()) {
    report << text;
  } else {
    write_file(out, text);
    report << "wrote " << out << "\n";
  }
  return 0;
}

TokenString tokens_of(const TagGrammar& g, const std::string& sentence) {
  TokenString w;
  std::istringstream in(sentence);
  std::string tok;
  while (in >> tok) {
    Symbol s = Symbol::terminal(tok);
    if (!g.terminals.count(s)) fail(Errc::unknown_token, "token '" + tok + "' is not a terminal");
    w.tokens.push_back(std::move(s));
  }
  return w;
}

int cmd_parse(const std::string& file, const std::string& sentence, bool dump_chart,
              std::size_t state_cap, std::ostream& report) {
  TagGrammar g = parse_grammar_file(read_file(file));
  Recognizer rec(g, CompileOptions{state_cap});
  TokenString w = tokens_of(g, sentence);
  bool ok = rec.recognize(w);
  if (dump_chart) {
    Chart chart = rec.chart(w);
    for (const auto& [span, states] : chart.cells) {
      report << "cell " << span.first << ' ' << span.second << ':';
      for (const std::string& q : states) report << ' ' << q;
      report << "\n";
    }
  }
  report << (ok ? "accepted" : "rejected") << "\n";
  return ok ? 0 : 1;
}

int cmd_enumerate(const std::string& file, std::size_t max_nodes, std::uint64_t max_steps,
                  bool regular_only, bool completed_only, std::ostream& report) {
  TagGrammar g = parse_grammar_file(read_file(file));
  DerivationBudget b{max_nodes, max_steps};
  Enumeration e = regular_only ? enumerate_regular(g, b, completed_only)
                               : enumerate_derived(g, b, completed_only);
  for (const Tree& t : e.trees) report << render_tree(t) << "\n";
  if (e.partial) {
    report << "warning: step budget exhausted; enumeration incomplete\n";
    return 3;
  }
  return 0;
}

int cmd_compile(const std::string& file, const std::string& out, std::size_t state_cap,
                std::ostream& report) {
  TagGrammar g = parse_grammar_file(read_file(file));
  TreeAutomaton a = compile_regular_tag(g, CompileOptions{state_cap});
  std::string text = render_automaton(a);
  if (out.empty()) {
    report << text;
  } else {
    write_file(out, text);
    report << "wrote " << out << " (" << a.states.size() << " states)\n";
  }
  return 0;
}

int cmd_graph(const std::string& file, bool dot, std::ostream& report) {
  TagGrammar g = parse_grammar_file(read_file(file));
  SpineGraph sg = build_spine_graph(g);
  if (dot) {
    report << to_dot(sg);
    return 0;
  }
  report << "spine graph: " << sg.vertices.size() << " vertices, " << sg.edges.size()
         << " edges\n";
  for (const SpineEdge& e : sg.edges) {
    report << e.label.aux_name << ':' << e.label.index << "  " << e.src.name << " -> "
           << e.dst.name << "  segment " << render_tree(e.label.segment) << "\n";
  }
  return 0;
}

int cmd_oracle(const std::string& file, std::size_t max_nodes, std::uint64_t max_steps,
               std::size_t state_cap, std::ostream& report) {
  TagGrammar g = parse_grammar_file(read_file(file));
  DerivationBudget b{max_nodes, max_steps};

  auto [rf, witnesses] = check_regular_form(g);
  report << "regular form: " << (rf ? "yes" : "no") << "\n";

  Enumeration all = enumerate_derived(g, b, false);
  Enumeration reg = enumerate_regular(g, b, false);
  bool partial = all.partial || reg.partial;
  bool closure_equal = all.trees == reg.trees;
  report << "T' vs T'_R at max-nodes " << max_nodes << ": "
         << (closure_equal ? "equal" : "differ") << " (" << reg.trees.size() << " regular vs "
         << all.trees.size() << " unrestricted trees)\n";

  bool consistent = !(rf && !closure_equal);

  if (rf) {
    TreeAutomaton a = compile_regular_tag(g, CompileOptions{state_cap});
    std::set<Tree> accepted = enumerate_accepted(a, max_nodes);
    Enumeration completed = enumerate_derived(g, b, true);
    partial = partial || completed.partial;
    bool automaton_equal = accepted == completed.trees;
    report << "automaton vs enumeration at max-nodes " << max_nodes << ": "
           << (automaton_equal ? "equal" : "differ") << " (" << accepted.size() << " trees)\n";
    consistent = consistent && automaton_equal;

    LanguageSample sample = sample_language(g, b);
    partial = partial || sample.partial;
    Recognizer rec(g, CompileOptions{state_cap});
    std::size_t checked = 0;
    bool parser_agrees = true;
    std::size_t len_cap = max_nodes >= 3 ? (max_nodes - 3) / 3 : 0;
    for (const auto& s : sample.strings) {
      if (s.size() > len_cap) continue;
      TokenString w;
      for (const std::string& tok : s) w.tokens.push_back(Symbol::terminal(tok));
      ++checked;
      if (!rec.recognize(w)) parser_agrees = false;
    }
    report << "recognizer vs language sample (yield length <= " << len_cap << "): "
           << (parser_agrees ? "agree" : "DISAGREE") << " (" << checked << " strings)\n";
    consistent = consistent && parser_agrees;
  } else {
    report << "automaton vs enumeration: skipped (not in regular form)\n";
    report << "recognizer vs language sample: skipped (not in regular form)\n";
  }

  report << "verdict: " << (consistent ? "consistent" : "INCONSISTENT") << "\n";
  if (partial) {
    report << "warning: step budget exhausted; comparisons incomplete\n";
    return 3;
  }
  return consistent ? 0 : 1;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  std::ostringstream report;
  int code = 0;

  CLI::App app{"regular-form toolkit for tree adjoining grammars"};
  app.require_subcommand(1);

  std::string file, out, sentence, strategy = "leftmost";
  std::size_t max_nodes = 12;
  std::uint64_t max_steps = 1000000;
  std::size_t state_cap = 100000;
  bool regular_only = false, completed_only = false, lexicalized = false, close_subst = false;
  bool dump_chart = false, dot = false;

  CLI::App* check = app.add_subcommand("check", "decide whether a grammar is in regular form");
  check->add_option("grammar", file)->required();
  check->callback([&] { code = cmd_check(file, report); });

  CLI::App* extend = app.add_subcommand("extend", "extend a grammar to regular form");
  extend->add_option("grammar", file)->required();
  extend->add_option("-o,--output", out);
  extend->callback([&] { code = cmd_extend(file, out, report); });

  CLI::App* lexicalize = app.add_subcommand("lexicalize", "turn a CFG into a regular-form TAG");
  lexicalize->add_option("cfg", file)->required();
  lexicalize->add_option("--strategy", strategy)->check(CLI::IsMember({"leftmost", "rightmost"}));
  lexicalize->add_flag("--lexicalized", lexicalized);
  lexicalize->add_flag("--close-substitution", close_subst);
  lexicalize->add_option("-o,--output", out);
  lexicalize->callback(
      [&] { code = cmd_lexicalize(file, strategy, lexicalized, close_subst, out, report); });

  CLI::App* parse = app.add_subcommand("parse", "recognize a sentence (cubic time)");
  parse->add_option("grammar", file)->required();
  parse->add_option("sentence", sentence);
  parse->add_flag("--chart", dump_chart);
  parse->add_option("--state-cap", state_cap);
  parse->callback([&] { code = cmd_parse(file, sentence, dump_chart, state_cap, report); });

  CLI::App* enumerate = app.add_subcommand("enumerate", "list derivable trees up to a node budget");
  enumerate->add_option("grammar", file)->required();
  enumerate->add_option("--max-nodes", max_nodes);
  enumerate->add_option("--max-steps", max_steps);
  enumerate->add_flag("--regular-only", regular_only);
  enumerate->add_flag("--completed-only", completed_only);
  enumerate->callback(
      [&] { code = cmd_enumerate(file, max_nodes, max_steps, regular_only, completed_only, report); });

  CLI::App* compile = app.add_subcommand("compile", "compile a regular-form grammar to a tree automaton");
  compile->add_option("grammar", file)->required();
  compile->add_option("-o,--output", out);
  compile->add_option("--state-cap", state_cap);
  compile->callback([&] { code = cmd_compile(file, out, state_cap, report); });

  CLI::App* graph = app.add_subcommand("graph", "show the spine graph (--dot for DOT output)");
  graph->add_option("grammar", file)->required();
  graph->add_flag("--dot", dot);
  graph->callback([&] { code = cmd_graph(file, dot, report); });

  CLI::App* oracle = app.add_subcommand("oracle", "cross-check decisions against brute-force enumeration");
  oracle->add_option("grammar", file)->required();
  oracle->add_option("--max-nodes", max_nodes);
  oracle->add_option("--max-steps", max_steps);
  oracle->add_option("--state-cap", state_cap);
  oracle->callback([&] { code = cmd_oracle(file, max_nodes, max_steps, state_cap, report); });

  std::vector<const char*> argv;
  argv.push_back("rftag");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    return {0, app.help()};
  } catch (const CLI::ParseError& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  } catch (const TagError& e) {
    return {errc_exit_code(e.code()), std::string("error: ") + e.what() + "\n"};
  }
  return {code, report.str()};
}

}  // namespace rftag
