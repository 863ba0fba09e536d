#include "cegis.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "enumeration.hpp"
#include "errors.hpp"

namespace mgs {

std::string status_name(SolveStatus s) {
  switch (s) {
  case SolveStatus::Solved:
    return "Solved";
  case SolveStatus::Unsolved:
    return "Unsolved";
  case SolveStatus::Timeout:
    return "Timeout";
  case SolveStatus::Infeasible:
  default:
    return "Infeasible";
  }
}

namespace {

bool contains_fun(const TermPtr &t, const std::string &name) {
  if (t->kind() != Term::Kind::Apply)
    return false;
  if (t->name() == name)
    return true;
  for (const auto &a : t->args())
    if (contains_fun(a, name))
      return true;
  return false;
}

// True when some application of `name` has `name` inside an argument, which
// makes argument values depend on the candidate.
bool has_nested_application(const TermPtr &t, const std::string &name) {
  if (t->kind() != Term::Kind::Apply)
    return false;
  if (t->name() == name)
    for (const auto &a : t->args())
      if (contains_fun(a, name))
        return true;
  for (const auto &a : t->args())
    if (has_nested_application(a, name))
      return true;
  return false;
}

using ParamPoint = std::vector<Value>;

void collect_points(const TermPtr &t, const std::string &fname,
                    const Valuation &v, const EvalContext &ctx,
                    std::vector<ParamPoint> &out) {
  if (t->kind() != Term::Kind::Apply)
    return;
  if (t->name() == fname) {
    ParamPoint pt;
    pt.reserve(t->args().size());
    for (const auto &a : t->args())
      pt.push_back(evaluate(a, v, ctx));
    if (std::find(out.begin(), out.end(), pt) == out.end())
      out.push_back(std::move(pt));
  }
  for (const auto &a : t->args())
    collect_points(a, fname, v, ctx, out);
}

} // namespace

SolveResult synthesize(const Benchmark &b, const Grammar &g,
                       const CegisLimits &limits) {
  SolveResult res;
  const std::uint64_t deadline =
      static_cast<std::uint64_t>(limits.timeout_seconds * UNITS_PER_SECOND);
  std::uint64_t units = 0;

  auto finish = [&](SolveStatus st, const std::string &diag) {
    res.status = st;
    res.diagnostics = res.diagnostics.empty() ? diag
                      : diag.empty()          ? res.diagnostics
                                              : res.diagnostics + "; " + diag;
    if (st == SolveStatus::Timeout)
      res.wall_time = limits.timeout_seconds;
    else
      res.wall_time =
          std::min(static_cast<double>(units) / UNITS_PER_SECOND,
                   limits.timeout_seconds);
    return res;
  };

  if (g.rules.empty() || g.rules[0].empty())
    return finish(SolveStatus::Unsolved, "empty grammar");
  if (deadline == 0)
    return finish(SolveStatus::Timeout, "zero timeout");

  EvalContext base_ctx = EvalContext::for_benchmark(b);
  Helper candidate_fun{b.synth_fun.name, b.synth_fun.params, b.synth_fun.ret,
                       nullptr};
  EvalContext cand_ctx = base_ctx;
  cand_ctx.bind(candidate_fun);

  bool nested = false;
  for (const auto &c : b.constraints)
    if (has_nested_application(c, b.synth_fun.name)) {
      nested = true;
      break;
    }
  const bool use_oe = limits.observational_equivalence && !nested;

  VerifyBounds verify = limits.verify;

  std::vector<Valuation> examples; // the counterexample set I
  std::vector<Valuation> point_envs; // param bindings induced by I
  bool bounded = false;

  auto rebuild_points = [&]() {
    std::vector<ParamPoint> points;
    for (const auto &v : examples)
      for (const auto &c : b.constraints)
        collect_points(c, b.synth_fun.name, v, base_ctx, points);
    units += examples.size() * b.constraints.size();
    point_envs.clear();
    for (const auto &pt : points) {
      Valuation env;
      for (std::size_t k = 0; k < b.synth_fun.params.size(); ++k)
        env.emplace(b.synth_fun.params[k].first, pt[k]);
      point_envs.push_back(std::move(env));
    }
  };

  auto make_enumerator = [&]() {
    // Candidates range over the synth-fun parameters only, so they are
    // closed under the point valuations.
    const bool keyed = use_oe && !point_envs.empty();
    return std::make_unique<Enumerator>(g, keyed ? &point_envs : nullptr,
                                        keyed ? &base_ctx : nullptr);
  };

  std::unique_ptr<Enumerator> en = make_enumerator();
  std::size_t scan_size = 1, scan_idx = 0;

  while (true) {
    // pull candidate terms, growing banks as needed
    while (scan_size > en->filled() ||
           scan_idx >= en->start_bank(scan_size).size()) {
      if (scan_size <= en->filled()) {
        ++scan_size;
        scan_idx = 0;
        continue;
      }
      if (en->exhausted())
        return finish(SolveStatus::Unsolved, "grammar language exhausted");
      if (en->filled() >= limits.max_term_size)
        return finish(SolveStatus::Unsolved, "term size limit reached");
      // the enumerator counts its own cumulative units; let it spend
      // whatever remains of the global deadline
      std::uint64_t before = en->units();
      std::uint64_t remaining = deadline > units ? deadline - units : 0;
      bool ok = en->advance(before + remaining);
      units += en->units() - before;
      if (!ok || units >= deadline)
        return finish(SolveStatus::Timeout, "");
    }

    const TermPtr &cand = en->start_bank(scan_size)[scan_idx];
    ++res.candidates_enumerated;
    ++scan_idx;
    if (res.candidates_enumerated > limits.max_candidates)
      return finish(SolveStatus::Unsolved, "candidate limit reached");

    candidate_fun.body = cand;
    bool pass = true;
    for (const auto &v : examples) {
      for (const auto &c : b.constraints) {
        ++units;
        if (!evaluate(c, v, cand_ctx).b) {
          pass = false;
          break;
        }
      }
      if (!pass)
        break;
    }
    if (units >= deadline)
      return finish(SolveStatus::Timeout, "");
    if (!pass)
      continue;

    ValidationResult vr = validate_solution(b, cand, verify, &units);
    bounded = bounded || vr.bounded;
    if (vr.confirmed) {
      if (units >= deadline)
        return finish(SolveStatus::Timeout, "");
      res.solution = cand;
      return finish(SolveStatus::Solved, bounded ? "bounded verification" : "");
    }
    if (units >= deadline)
      return finish(SolveStatus::Timeout, "");
    examples.push_back(*vr.counterexample);
    if (use_oe) {
      rebuild_points();
      en = make_enumerator();
      scan_size = 1;
      scan_idx = 0;
    }
  }
}

} // namespace mgs
