#ifndef MGS_CORE_BENCHMARK_HPP
#define MGS_CORE_BENCHMARK_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grammar.hpp"
#include "term.hpp"
#include "theory.hpp"

namespace mgs {

struct SynthFun {
  std::string name;
  std::vector<std::pair<std::string, Sort>> params;
  Sort ret = Sort::boolean();

  bool operator==(const SynthFun &o) const {
    return name == o.name && params == o.params && ret == o.ret;
  }
};

struct Helper {
  std::string name;
  std::vector<std::pair<std::string, Sort>> params;
  Sort ret = Sort::boolean();
  TermPtr body;

  bool operator==(const Helper &o) const {
    return name == o.name && params == o.params && ret == o.ret &&
           term_eq(body, o.body);
  }
};

// One parsed SyGuS problem. source_id identifies where it came from (a file
// path or synthetic label) and is excluded from structural equality.
struct Benchmark {
  std::string logic;
  SynthFun synth_fun;
  std::optional<Grammar> provided_grammar;
  std::vector<std::pair<std::string, Sort>> declared_vars;
  std::vector<Helper> helpers;
  std::vector<TermPtr> constraints;
  std::string source_id;

  // Environment for sort-checking constraints: universally quantified
  // variables only. synth-fun parameters are scoped to the grammar, not here.
  std::map<std::string, Sort> var_env() const {
    std::map<std::string, Sort> env;
    for (const auto &[n, s] : declared_vars)
      env.emplace(n, s);
    return env;
  }

  FunctionSigs function_sigs(bool include_synth_fun) const {
    FunctionSigs sigs;
    for (const auto &h : helpers) {
      std::vector<Sort> ps;
      for (const auto &[n, s] : h.params)
        ps.push_back(s);
      sigs.emplace(h.name, FunctionSig{ps, h.ret});
    }
    if (include_synth_fun) {
      std::vector<Sort> ps;
      for (const auto &[n, s] : synth_fun.params)
        ps.push_back(s);
      sigs.emplace(synth_fun.name, FunctionSig{ps, synth_fun.ret});
    }
    return sigs;
  }

  bool operator==(const Benchmark &o) const {
    if (logic != o.logic || !(synth_fun == o.synth_fun) ||
        declared_vars != o.declared_vars || helpers != o.helpers)
      return false;
    if (provided_grammar.has_value() != o.provided_grammar.has_value())
      return false;
    if (provided_grammar && !(*provided_grammar == *o.provided_grammar))
      return false;
    if (constraints.size() != o.constraints.size())
      return false;
    for (std::size_t i = 0; i < constraints.size(); ++i)
      if (!term_eq(constraints[i], o.constraints[i]))
        return false;
    return true;
  }
};

} // namespace mgs

#endif
