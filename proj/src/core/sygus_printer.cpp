#include "sygus_printer.hpp"

#include <sstream>

#include "errors.hpp"

namespace mgs {
namespace {

void print_params(std::ostringstream &out,
                  const std::vector<std::pair<std::string, Sort>> &params) {
  out << '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i)
      out << ' ';
    out << '(' << params[i].first << ' ' << params[i].second.str() << ')';
  }
  out << ')';
}

void print_grammar(std::ostringstream &out, const Grammar &g) {
  out << '(';
  for (std::size_t i = 0; i < g.nonterminals.size(); ++i) {
    if (i)
      out << ' ';
    out << '(' << g.nonterminals[i].name << ' '
        << g.nonterminals[i].sort.str() << ')';
  }
  out << ") (";
  for (std::size_t i = 0; i < g.nonterminals.size(); ++i) {
    if (i)
      out << ' ';
    out << '(' << g.nonterminals[i].name << ' '
        << g.nonterminals[i].sort.str() << " (";
    const auto &rules = g.rules[i];
    if (rules.empty())
      throw ConfigError("non-terminal '" + g.nonterminals[i].name +
                        "' has no rules; prune the grammar before printing");
    for (std::size_t j = 0; j < rules.size(); ++j) {
      if (j)
        out << ' ';
      out << rules[j]->str();
    }
    out << "))";
  }
  out << ')';
}

std::string print_with(const Benchmark &b, const Grammar *g) {
  std::ostringstream out;
  out << "(set-logic " << b.logic << ")\n";
  out << "(synth-fun " << b.synth_fun.name << ' ';
  print_params(out, b.synth_fun.params);
  out << ' ' << b.synth_fun.ret.str();
  if (g) {
    out << ' ';
    print_grammar(out, *g);
  }
  out << ")\n";
  for (const auto &[n, s] : b.declared_vars)
    out << "(declare-var " << n << ' ' << s.str() << ")\n";
  for (const auto &h : b.helpers) {
    out << "(define-fun " << h.name << ' ';
    print_params(out, h.params);
    out << ' ' << h.ret.str() << ' ' << h.body->str() << ")\n";
  }
  for (const auto &c : b.constraints)
    out << "(constraint " << c->str() << ")\n";
  out << "(check-synth)\n";
  return out.str();
}

} // namespace

std::string print_benchmark(const Benchmark &b) {
  return print_with(b, b.provided_grammar ? &*b.provided_grammar : nullptr);
}

std::string emit_benchmark_with_grammar(const Benchmark &b, const Grammar &g) {
  return print_with(b, &g);
}

std::string print_solution(const SynthFun &f, const TermPtr &body) {
  std::ostringstream out;
  out << "(define-fun " << f.name << ' ';
  print_params(out, f.params);
  out << ' ' << f.ret.str() << ' ' << body->str() << ')';
  return out.str();
}

} // namespace mgs
