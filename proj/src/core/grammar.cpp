#include "grammar.hpp"

#include "errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace mgs {

bool Grammar::operator==(const Grammar &o) const {
  if (nonterminals != o.nonterminals || rules.size() != o.rules.size())
    return false;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].size() != o.rules[i].size())
      return false;
    for (std::size_t j = 0; j < rules[i].size(); ++j)
      if (!term_eq(rules[i][j], o.rules[i][j]))
        return false;
  }
  return true;
}

namespace {

void collect_vars(const TermPtr &t, std::set<std::string> &out) {
  if (t->kind() == Term::Kind::Variable)
    out.insert(t->name());
  for (const auto &a : t->args())
    collect_vars(a, out);
}

// Placeholder indices referenced by a template, in no particular order.
void collect_placeholders(const Grammar &g, const TermPtr &t, std::set<int> &out) {
  if (t->kind() == Term::Kind::Variable) {
    int k = g.nt_index(t->name());
    if (k >= 0)
      out.insert(k);
  }
  for (const auto &a : t->args())
    collect_placeholders(g, a, out);
}

} // namespace

std::vector<std::string> Grammar::terminal_variables() const {
  std::set<std::string> vars;
  for (const auto &rhss : rules)
    for (const auto &rhs : rhss)
      collect_vars(rhs, vars);
  std::vector<std::string> out;
  for (const auto &v : vars)
    if (nt_index(v) < 0)
      out.push_back(v);
  return out;
}

std::optional<Grammar> prune(const Grammar &g) {
  const std::size_t n = g.nonterminals.size();

  // least fixed point: a non-terminal is productive once some rule's
  // placeholders are all productive
  std::vector<bool> productive(n, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (productive[i])
        continue;
      for (const auto &rhs : g.rules[i]) {
        std::set<int> ph;
        collect_placeholders(g, rhs, ph);
        bool ok = true;
        for (int k : ph)
          if (!productive[static_cast<std::size_t>(k)]) {
            ok = false;
            break;
          }
        if (ok) {
          productive[i] = true;
          changed = true;
          break;
        }
      }
    }
  }

  if (!productive[0])
    return std::nullopt;

  // drop rules that mention an unproductive non-terminal
  auto rule_ok = [&](const TermPtr &rhs) {
    std::set<int> ph;
    collect_placeholders(g, rhs, ph);
    for (int k : ph)
      if (!productive[static_cast<std::size_t>(k)])
        return false;
    return true;
  };

  // reachability from the start symbol over surviving rules
  std::vector<bool> reachable(n, false);
  reachable[0] = true;
  changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!reachable[i] || !productive[i])
        continue;
      for (const auto &rhs : g.rules[i]) {
        if (!rule_ok(rhs))
          continue;
        std::set<int> ph;
        collect_placeholders(g, rhs, ph);
        for (int k : ph)
          if (!reachable[static_cast<std::size_t>(k)]) {
            reachable[static_cast<std::size_t>(k)] = true;
            changed = true;
          }
      }
    }
  }

  Grammar out;
  std::vector<int> remap(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (productive[i] && reachable[i]) {
      remap[i] = static_cast<int>(out.nonterminals.size());
      out.nonterminals.push_back(g.nonterminals[i]);
    }
  }
  out.rules.resize(out.nonterminals.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (remap[i] < 0)
      continue;
    for (const auto &rhs : g.rules[i])
      if (rule_ok(rhs))
        out.rules[static_cast<std::size_t>(remap[i])].push_back(rhs);
  }
  return out;
}

namespace {

// A rule whose right-hand side is a bare non-terminal placeholder derives
// nothing by itself; close over such unit rules up front so the matcher only
// ever recurses into strictly smaller terms.
std::vector<std::vector<bool>> unit_closure(const Grammar &g) {
  const std::size_t n = g.nonterminals.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    reach[i][i] = true;
    for (const auto &rhs : g.rules[i])
      if (rhs->kind() == Term::Kind::Variable) {
        int k = g.nt_index(rhs->name());
        if (k >= 0)
          reach[i][static_cast<std::size_t>(k)] = true;
      }
  }
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][m])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[m][j])
            reach[i][j] = true;
  return reach;
}

struct DeriveCtx {
  const Grammar &g;
  std::vector<std::vector<bool>> units;
  std::map<std::pair<int, const Term *>, bool> memo;
};

bool derives(DeriveCtx &ctx, std::size_t nt, const TermPtr &t);

bool match_template(DeriveCtx &ctx, const TermPtr &tmpl, const TermPtr &t) {
  if (tmpl->kind() == Term::Kind::Variable) {
    int k = ctx.g.nt_index(tmpl->name());
    if (k >= 0)
      return derives(ctx, static_cast<std::size_t>(k), t);
    return term_eq(tmpl, t);
  }
  if (tmpl->kind() == Term::Kind::Constant)
    return term_eq(tmpl, t);
  if (t->kind() != Term::Kind::Apply || t->name() != tmpl->name() ||
      t->args().size() != tmpl->args().size())
    return false;
  for (std::size_t k = 0; k < tmpl->args().size(); ++k)
    if (!match_template(ctx, tmpl->args()[k], t->args()[k]))
      return false;
  return true;
}

bool derives(DeriveCtx &ctx, std::size_t nt, const TermPtr &t) {
  auto key = std::make_pair(static_cast<int>(nt), t.get());
  if (auto it = ctx.memo.find(key); it != ctx.memo.end())
    return it->second;
  bool ok = false;
  for (std::size_t other = 0; other < ctx.g.nonterminals.size() && !ok; ++other) {
    if (!ctx.units[nt][other])
      continue;
    for (const auto &rhs : ctx.g.rules[other]) {
      if (rhs->kind() == Term::Kind::Variable && ctx.g.nt_index(rhs->name()) >= 0)
        continue; // unit rule, already in the closure
      if (match_template(ctx, rhs, t)) {
        ok = true;
        break;
      }
    }
  }
  ctx.memo[key] = ok;
  return ok;
}

} // namespace

bool derivable(const Grammar &g, const TermPtr &t, std::size_t nt) {
  DeriveCtx ctx{g, unit_closure(g), {}};
  return derives(ctx, nt, t);
}

void check_grammar(const Grammar &g, const std::map<std::string, Sort> &terminal_env,
                   const FunctionSigs &funcs) {
  std::map<std::string, Sort> env = terminal_env;
  for (const auto &nt : g.nonterminals) {
    if (terminal_env.count(nt.name))
      throw SortError("non-terminal '" + nt.name + "' shadows a terminal symbol");
    env[nt.name] = nt.sort;
  }
  for (std::size_t i = 0; i < g.nonterminals.size(); ++i) {
    for (const auto &rhs : g.rules[i]) {
      Sort s = sort_of(rhs, env, funcs);
      if (s != g.nonterminals[i].sort)
        throw SortError("rule for '" + g.nonterminals[i].name + "' produces " + s.str() +
                        ", expected " + g.nonterminals[i].sort.str());
    }
  }
}

} // namespace mgs
