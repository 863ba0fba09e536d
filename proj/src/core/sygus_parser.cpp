#include "sygus_parser.hpp"

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace mgs {
namespace {

struct Tok {
  enum Kind { LParen, RParen, Symbol, Numeral, BitLit } kind;
  std::string text;
  int line = 1;
  int col = 1;
};

bool symbol_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c)))
    return true;
  return std::string("~!@$%^&*_-+=<>.?/").find(c) != std::string::npos;
}

std::vector<Tok> tokenize(const std::string &text) {
  std::vector<Tok> toks;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ';') {
      while (i < text.size() && text[i] != '\n')
        advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int tl = line, tc = col;
    if (c == '(') {
      toks.push_back({Tok::LParen, "(", tl, tc});
      advance(1);
      continue;
    }
    if (c == ')') {
      toks.push_back({Tok::RParen, ")", tl, tc});
      advance(1);
      continue;
    }
    if (c == '#') {
      if (i + 1 < text.size() && (text[i + 1] == 'b' || text[i + 1] == 'x')) {
        char base = text[i + 1];
        std::size_t j = i + 2;
        auto digit_ok = [&](char d) {
          return base == 'b' ? (d == '0' || d == '1')
                             : std::isxdigit(static_cast<unsigned char>(d));
        };
        while (j < text.size() && digit_ok(text[j]))
          ++j;
        if (j == i + 2)
          throw ParseError("empty bit-vector literal", tl, tc);
        toks.push_back({Tok::BitLit, text.substr(i, j - i), tl, tc});
        advance(j - i);
        continue;
      }
      throw ParseError("unexpected character '#'", tl, tc);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      if (j < text.size() && symbol_char(text[j]))
        throw ParseError("malformed numeral", tl, tc);
      toks.push_back({Tok::Numeral, text.substr(i, j - i), tl, tc});
      advance(j - i);
      continue;
    }
    if (symbol_char(c)) {
      std::size_t j = i;
      while (j < text.size() && symbol_char(text[j]))
        ++j;
      toks.push_back({Tok::Symbol, text.substr(i, j - i), tl, tc});
      advance(j - i);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
  }
  return toks;
}

struct SExpr {
  bool is_atom = false;
  Tok atom;
  std::vector<SExpr> items;
  int line = 1;
  int col = 1;
};

SExpr read_sexpr(const std::vector<Tok> &toks, std::size_t &pos) {
  const Tok &t = toks[pos];
  if (t.kind == Tok::RParen)
    throw ParseError("unexpected ')'", t.line, t.col);
  if (t.kind != Tok::LParen) {
    ++pos;
    return SExpr{true, t, {}, t.line, t.col};
  }
  SExpr list;
  list.line = t.line;
  list.col = t.col;
  ++pos;
  while (true) {
    if (pos >= toks.size())
      throw ParseError("unbalanced '('", t.line, t.col);
    if (toks[pos].kind == Tok::RParen) {
      ++pos;
      return list;
    }
    list.items.push_back(read_sexpr(toks, pos));
  }
}

bool atom_is(const SExpr &e, const std::string &s) {
  return e.is_atom && e.atom.kind == Tok::Symbol && e.atom.text == s;
}

std::string expect_symbol(const SExpr &e, const std::string &what) {
  if (!e.is_atom || e.atom.kind != Tok::Symbol)
    throw ParseError("expected " + what, e.line, e.col);
  return e.atom.text;
}

Sort parse_sort(const SExpr &e) {
  if (e.is_atom && e.atom.kind == Tok::Symbol) {
    if (e.atom.text == "Bool")
      return Sort::boolean();
    if (e.atom.text == "Int")
      return Sort::integer();
    throw ParseError("unknown sort '" + e.atom.text + "'", e.line, e.col);
  }
  if (!e.is_atom && e.items.size() == 3 && atom_is(e.items[0], "_") &&
      atom_is(e.items[1], "BitVec") && e.items[2].is_atom &&
      e.items[2].atom.kind == Tok::Numeral) {
    long w = std::stol(e.items[2].atom.text);
    if (w < 1 || w > 64)
      throw ParseError("unsupported bit-vector width " +
                           e.items[2].atom.text + " (1..64 supported)",
                       e.line, e.col);
    return Sort::bitvec(static_cast<unsigned>(w));
  }
  throw ParseError("expected a sort", e.line, e.col);
}

void check_sort_in_logic(const Sort &s, const std::string &logic) {
  bool ok = s.kind == Sort::Kind::Bool ||
            (logic == "LIA" && s.kind == Sort::Kind::Int) ||
            (logic == "BV" && s.kind == Sort::Kind::BitVec);
  if (!ok)
    throw SortError("sort " + s.str() + " is not available in logic " + logic);
}

std::vector<std::pair<std::string, Sort>>
parse_params(const SExpr &e, const std::string &logic) {
  if (e.is_atom)
    throw ParseError("expected a parameter list", e.line, e.col);
  std::vector<std::pair<std::string, Sort>> params;
  std::set<std::string> seen;
  for (const auto &p : e.items) {
    if (p.is_atom || p.items.size() != 2)
      throw ParseError("expected (name Sort)", p.line, p.col);
    std::string name = expect_symbol(p.items[0], "a parameter name");
    if (!seen.insert(name).second)
      throw ParseError("duplicate parameter '" + name + "'", p.line, p.col);
    Sort s = parse_sort(p.items[1]);
    check_sort_in_logic(s, logic);
    params.emplace_back(name, s);
  }
  return params;
}

Value parse_bitlit(const Tok &t) {
  bool hex = t.text[1] == 'x';
  std::string digits = t.text.substr(2);
  unsigned width = static_cast<unsigned>(digits.size() * (hex ? 4 : 1));
  if (width > 64)
    throw ParseError("unsupported bit-vector width " + std::to_string(width) +
                         " (1..64 supported)",
                     t.line, t.col);
  std::uint64_t bits = 0;
  for (char d : digits) {
    if (hex) {
      bits <<= 4;
      if (d >= '0' && d <= '9')
        bits |= static_cast<std::uint64_t>(d - '0');
      else
        bits |= static_cast<std::uint64_t>(std::tolower(d) - 'a' + 10);
    } else {
      bits = (bits << 1) | static_cast<std::uint64_t>(d - '0');
    }
  }
  return Value::bitvec_of(width, bits);
}

TermPtr parse_term(const SExpr &e, const std::map<std::string, Sort> &env) {
  if (e.is_atom) {
    const Tok &t = e.atom;
    if (t.kind == Tok::Numeral)
      return Term::constant(Value::integer_of(Integer(t.text)));
    if (t.kind == Tok::BitLit)
      return Term::constant(parse_bitlit(t));
    if (t.text == "true")
      return Term::constant(Value::boolean_of(true));
    if (t.text == "false")
      return Term::constant(Value::boolean_of(false));
    if (auto it = env.find(t.text); it != env.end())
      return Term::variable(t.text, it->second);
    // Anything else is a zero-arity application; sort checking decides
    // whether such a function exists.
    return Term::apply(t.text, {});
  }
  if (e.items.empty())
    throw ParseError("empty term", e.line, e.col);
  std::string op = expect_symbol(e.items[0], "an operator");
  std::vector<TermPtr> args;
  for (std::size_t i = 1; i < e.items.size(); ++i)
    args.push_back(parse_term(e.items[i], env));
  // Fold (- <numeral>) into a negative integer constant so printing and
  // re-parsing reach a fixpoint.
  if (op == "-" && args.size() == 1 &&
      args[0]->kind() == Term::Kind::Constant &&
      args[0]->value().sort.kind == Sort::Kind::Int)
    return Term::constant(Value::integer_of(-args[0]->value().i));
  return Term::apply(op, std::move(args));
}

Grammar parse_grammar(const SExpr &predecl, const SExpr &grouped,
                      const std::vector<std::pair<std::string, Sort>> &params,
                      const std::string &logic) {
  if (predecl.is_atom || grouped.is_atom)
    throw ParseError("expected a grammar", predecl.line, predecl.col);
  Grammar g;
  std::set<std::string> seen;
  for (const auto &d : predecl.items) {
    if (d.is_atom || d.items.size() != 2)
      throw ParseError("expected (NonTerminal Sort)", d.line, d.col);
    std::string name = expect_symbol(d.items[0], "a non-terminal name");
    if (!seen.insert(name).second)
      throw ParseError("duplicate non-terminal '" + name + "'", d.line, d.col);
    Sort s = parse_sort(d.items[1]);
    check_sort_in_logic(s, logic);
    g.nonterminals.push_back({name, s});
  }
  if (g.nonterminals.empty())
    throw ParseError("grammar has no non-terminals", predecl.line, predecl.col);
  if (grouped.items.size() != g.nonterminals.size())
    throw ParseError("grammar rule groups do not match the pre-declaration",
                     grouped.line, grouped.col);
  std::map<std::string, Sort> env;
  for (const auto &[n, s] : params)
    env.emplace(n, s);
  for (const auto &nt : g.nonterminals)
    env.emplace(nt.name, nt.sort);
  for (std::size_t i = 0; i < grouped.items.size(); ++i) {
    const SExpr &grp = grouped.items[i];
    if (grp.is_atom || grp.items.size() != 3 || grp.items[2].is_atom)
      throw ParseError("expected (NonTerminal Sort (term ...))", grp.line,
                       grp.col);
    std::string name = expect_symbol(grp.items[0], "a non-terminal name");
    Sort s = parse_sort(grp.items[1]);
    if (name != g.nonterminals[i].name || !(s == g.nonterminals[i].sort))
      throw ParseError("grammar rule group '" + name +
                           "' does not match the pre-declaration",
                       grp.line, grp.col);
    if (grp.items[2].items.empty())
      throw ParseError("non-terminal '" + name + "' has no rules", grp.line,
                       grp.col);
    std::vector<TermPtr> rules;
    for (const auto &r : grp.items[2].items) {
      if (!r.is_atom && !r.items.empty() &&
          (atom_is(r.items[0], "Constant") || atom_is(r.items[0], "Variable")))
        throw ParseError("unsupported grammar term '" +
                             r.items[0].atom.text + "'",
                         r.line, r.col);
      rules.push_back(parse_term(r, env));
    }
    g.rules.push_back(std::move(rules));
  }
  return g;
}

} // namespace

Benchmark parse_benchmark(const std::string &text,
                          const std::string &source_id) {
  std::vector<Tok> toks = tokenize(text);
  std::vector<SExpr> cmds;
  std::size_t pos = 0;
  while (pos < toks.size())
    cmds.push_back(read_sexpr(toks, pos));

  Benchmark b;
  b.source_id = source_id;
  bool have_logic = false, have_synth = false, have_check = false;
  std::set<std::string> global_names;

  for (const auto &cmd : cmds) {
    if (cmd.is_atom || cmd.items.empty())
      throw ParseError("expected a command", cmd.line, cmd.col);
    std::string head = expect_symbol(cmd.items[0], "a command");
    if (have_check)
      throw ParseError("command after check-synth", cmd.line, cmd.col);
    if (head == "set-logic") {
      if (have_logic)
        throw ParseError("duplicate set-logic", cmd.line, cmd.col);
      if (cmd.items.size() != 2)
        throw ParseError("malformed set-logic", cmd.line, cmd.col);
      std::string logic = expect_symbol(cmd.items[1], "a logic name");
      if (logic != "LIA" && logic != "BV")
        throw ParseError("unsupported logic '" + logic +
                             "' (supported: LIA, BV)",
                         cmd.items[1].line, cmd.items[1].col);
      b.logic = logic;
      have_logic = true;
      continue;
    }
    if (!have_logic)
      throw ParseError("set-logic must come first", cmd.line, cmd.col);
    if (head == "synth-fun") {
      if (have_synth)
        throw ParseError("multiple synth-fun commands", cmd.line, cmd.col);
      if (cmd.items.size() != 4 && cmd.items.size() != 6)
        throw ParseError("malformed synth-fun", cmd.line, cmd.col);
      b.synth_fun.name = expect_symbol(cmd.items[1], "a function name");
      if (!global_names.insert(b.synth_fun.name).second)
        throw ParseError("name '" + b.synth_fun.name + "' already in use",
                         cmd.items[1].line, cmd.items[1].col);
      b.synth_fun.params = parse_params(cmd.items[2], b.logic);
      b.synth_fun.ret = parse_sort(cmd.items[3]);
      check_sort_in_logic(b.synth_fun.ret, b.logic);
      if (cmd.items.size() == 6) {
        Grammar g =
            parse_grammar(cmd.items[4], cmd.items[5], b.synth_fun.params,
                          b.logic);
        if (!(g.start().sort == b.synth_fun.ret))
          throw SortError("grammar start symbol '" + g.start().name +
                          "' has sort " + g.start().sort.str() +
                          " but the synthesized function returns " +
                          b.synth_fun.ret.str());
        std::map<std::string, Sort> terminal_env;
        for (const auto &[n, s] : b.synth_fun.params)
          terminal_env.emplace(n, s);
        check_grammar(g, terminal_env, b.function_sigs(false));
        b.provided_grammar = std::move(g);
      }
      have_synth = true;
      continue;
    }
    if (head == "declare-var") {
      if (cmd.items.size() != 3)
        throw ParseError("malformed declare-var", cmd.line, cmd.col);
      std::string name = expect_symbol(cmd.items[1], "a variable name");
      if (!global_names.insert(name).second)
        throw ParseError("name '" + name + "' already in use",
                         cmd.items[1].line, cmd.items[1].col);
      Sort s = parse_sort(cmd.items[2]);
      check_sort_in_logic(s, b.logic);
      b.declared_vars.emplace_back(name, s);
      continue;
    }
    if (head == "define-fun") {
      if (cmd.items.size() != 5)
        throw ParseError("malformed define-fun", cmd.line, cmd.col);
      Helper h;
      h.name = expect_symbol(cmd.items[1], "a function name");
      if (!global_names.insert(h.name).second)
        throw ParseError("name '" + h.name + "' already in use",
                         cmd.items[1].line, cmd.items[1].col);
      h.params = parse_params(cmd.items[2], b.logic);
      h.ret = parse_sort(cmd.items[3]);
      check_sort_in_logic(h.ret, b.logic);
      std::map<std::string, Sort> env;
      for (const auto &[n, s] : h.params)
        env.emplace(n, s);
      h.body = parse_term(cmd.items[4], env);
      Sort got = sort_of(h.body, env, b.function_sigs(false));
      if (!(got == h.ret))
        throw SortError("body of '" + h.name + "' has sort " + got.str() +
                        " but " + h.ret.str() + " was declared");
      b.helpers.push_back(std::move(h));
      continue;
    }
    if (head == "constraint") {
      if (cmd.items.size() != 2)
        throw ParseError("malformed constraint", cmd.line, cmd.col);
      if (!have_synth)
        throw ParseError("constraint before synth-fun", cmd.line, cmd.col);
      TermPtr t = parse_term(cmd.items[1], b.var_env());
      Sort got = sort_of(t, b.var_env(), b.function_sigs(true));
      if (got.kind != Sort::Kind::Bool)
        throw SortError("constraint has sort " + got.str() +
                        " where Bool is required");
      b.constraints.push_back(std::move(t));
      continue;
    }
    if (head == "check-synth") {
      if (cmd.items.size() != 1)
        throw ParseError("malformed check-synth", cmd.line, cmd.col);
      if (!have_synth)
        throw ParseError("check-synth without synth-fun", cmd.line, cmd.col);
      have_check = true;
      continue;
    }
    throw ParseError("unsupported command '" + head + "'", cmd.line, cmd.col);
  }
  if (!have_check)
    throw ParseError("missing check-synth",
                     cmds.empty() ? 1 : cmds.back().line,
                     cmds.empty() ? 1 : cmds.back().col);
  return b;
}

Benchmark parse_benchmark_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open benchmark file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_benchmark(ss.str(), path);
}

namespace {

TermPtr rename_vars(const TermPtr &t,
                    const std::map<std::string, std::string> &renames) {
  if (t->kind() == Term::Kind::Variable) {
    auto it = renames.find(t->name());
    return it == renames.end() ? t : Term::variable(it->second, t->var_sort());
  }
  if (t->kind() == Term::Kind::Apply) {
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    for (const auto &a : t->args())
      args.push_back(rename_vars(a, renames));
    return Term::apply(t->name(), std::move(args));
  }
  return t;
}

} // namespace

TermPtr parse_solution_output(const std::string &text, const Benchmark &b) {
  std::vector<Tok> toks = tokenize(text);
  std::size_t pos = 0;
  while (pos < toks.size()) {
    SExpr e = read_sexpr(toks, pos);
    if (e.is_atom)
      continue; // status line like "unsat"
    if (e.items.empty() || !atom_is(e.items[0], "define-fun"))
      throw ParseError("expected a define-fun", e.line, e.col);
    if (e.items.size() != 5)
      throw ParseError("malformed define-fun", e.line, e.col);
    auto params = parse_params(e.items[2], b.logic);
    if (params.size() != b.synth_fun.params.size())
      throw SortError("solution takes " + std::to_string(params.size()) +
                      " parameters but the synthesized function takes " +
                      std::to_string(b.synth_fun.params.size()));
    std::map<std::string, std::string> renames;
    for (std::size_t k = 0; k < params.size(); ++k) {
      if (!(params[k].second == b.synth_fun.params[k].second))
        throw SortError("solution parameter " + std::to_string(k + 1) +
                        " has sort " + params[k].second.str() + " but " +
                        b.synth_fun.params[k].second.str() + " was expected");
      renames.emplace(params[k].first, b.synth_fun.params[k].first);
    }
    Sort ret = parse_sort(e.items[3]);
    if (!(ret == b.synth_fun.ret))
      throw SortError("solution returns " + ret.str() + " but " +
                      b.synth_fun.ret.str() + " was expected");
    std::map<std::string, Sort> env;
    for (const auto &[n, s] : params)
      env.emplace(n, s);
    TermPtr body = rename_vars(parse_term(e.items[4], env), renames);
    std::map<std::string, Sort> bench_env;
    for (const auto &[n, s] : b.synth_fun.params)
      bench_env.emplace(n, s);
    Sort got = sort_of(body, bench_env, b.function_sigs(false));
    if (!(got == b.synth_fun.ret))
      throw SortError("solution body has sort " + got.str() + " but " +
                      b.synth_fun.ret.str() + " was expected");
    return body;
  }
  throw ParseError("no define-fun in solver output", 1, 1);
}

} // namespace mgs
