#ifndef MGS_CORE_GRAMMAR_HPP
#define MGS_CORE_GRAMMAR_HPP

#include "term.hpp"
#include "theory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mgs {

struct GrammarNonTerminal {
  std::string name;
  Sort sort;

  bool operator==(const GrammarNonTerminal &o) const {
    return name == o.name && sort == o.sort;
  }
};

// A context-free grammar over terms. Right-hand sides are term templates in
// which a Variable whose name matches a non-terminal is a placeholder for
// that non-terminal; every other leaf is a terminal symbol. The start symbol
// is always non-terminal 0.
struct Grammar {
  std::vector<GrammarNonTerminal> nonterminals;
  std::vector<std::vector<TermPtr>> rules; // parallel to nonterminals

  int nt_index(const std::string &name) const {
    for (std::size_t k = 0; k < nonterminals.size(); ++k)
      if (nonterminals[k].name == name)
        return static_cast<int>(k);
    return -1;
  }

  const GrammarNonTerminal &start() const { return nonterminals.front(); }

  bool operator==(const Grammar &o) const;

  // Terminal variable names referenced by any rule (the V of the grammar,
  // restricted to variables).
  std::vector<std::string> terminal_variables() const;
};

// Remove unproductive non-terminals (and rules mentioning them), then
// non-terminals unreachable from the start symbol. Returns nullopt when the
// start symbol itself is unproductive (the empty grammar).
std::optional<Grammar> prune(const Grammar &g);

// Whether `t` is derivable from `g`'s non-terminal `nt` (by index). Used to
// confirm that a reported solution lies in the language it was searched in.
bool derivable(const Grammar &g, const TermPtr &t, std::size_t nt = 0);

// Sort-check every rule right-hand side against its non-terminal, treating
// placeholders as variables of their non-terminal's sort. Throws SortError.
void check_grammar(const Grammar &g, const std::map<std::string, Sort> &terminal_env,
                   const FunctionSigs &funcs);

} // namespace mgs

#endif
