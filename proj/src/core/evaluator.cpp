#include "evaluator.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "errors.hpp"
#include "rng.hpp"

namespace mgs {

EvalContext EvalContext::for_benchmark(const Benchmark &b) {
  EvalContext ctx;
  for (const auto &h : b.helpers)
    ctx.funs[h.name] = &h;
  return ctx;
}

namespace {

std::uint64_t bv_mask(unsigned w) {
  return w >= 64 ? ~0ULL : (1ULL << w) - 1;
}

Value eval_bv_op(const std::string &op, const std::vector<Value> &a) {
  const unsigned w = a[0].sort.width;
  const std::uint64_t mask = bv_mask(w);
  auto out = [&](std::uint64_t bits) { return Value::bitvec_of(w, bits); };
  const std::uint64_t x = a[0].bits;
  const std::uint64_t y = a.size() > 1 ? a[1].bits : 0;
  if (op == "bvadd")
    return out(x + y);
  if (op == "bvsub")
    return out(x - y);
  if (op == "bvmul")
    return out(x * y);
  if (op == "bvand")
    return out(x & y);
  if (op == "bvor")
    return out(x | y);
  if (op == "bvxor")
    return out(x ^ y);
  if (op == "bvnot")
    return out(~x);
  if (op == "bvneg")
    return out(~x + 1);
  if (op == "bvudiv")
    return out(y == 0 ? mask : x / y);
  if (op == "bvurem")
    return out(y == 0 ? x : x % y);
  if (op == "bvshl")
    return out(y >= w ? 0 : x << y);
  if (op == "bvlshr")
    return out(y >= w ? 0 : x >> y);
  if (op == "bvashr") {
    bool msb = (x >> (w - 1)) & 1;
    if (y >= w)
      return out(msb ? mask : 0);
    std::uint64_t r = x >> y;
    if (msb)
      r |= mask & ~(mask >> y);
    return out(r);
  }
  if (op == "bvule")
    return Value::boolean_of(x <= y);
  if (op == "bvult")
    return Value::boolean_of(x < y);
  if (op == "bvuge")
    return Value::boolean_of(x >= y);
  if (op == "bvugt")
    return Value::boolean_of(x > y);
  throw InfrastructureError("no evaluation rule for operator '" + op + "'");
}

} // namespace

Value apply_op(const std::string &op, const std::vector<Value> &a) {
  if (op == "ite")
    return a[0].b ? a[1] : a[2];
  if (op == "and") {
    for (const auto &v : a)
      if (!v.b)
        return Value::boolean_of(false);
    return Value::boolean_of(true);
  }
  if (op == "or") {
    for (const auto &v : a)
      if (v.b)
        return Value::boolean_of(true);
    return Value::boolean_of(false);
  }
  if (op == "not")
    return Value::boolean_of(!a[0].b);
  if (op == "=>") {
    // right-associative chain: all but the last are antecedents
    for (std::size_t k = 0; k + 1 < a.size(); ++k)
      if (!a[k].b)
        return Value::boolean_of(true);
    return a.back();
  }
  if (op == "=")
    return Value::boolean_of(a[0] == a[1]);
  if (op == "+") {
    Integer sum = 0;
    for (const auto &val : a)
      sum += val.i;
    return Value::integer_of(sum);
  }
  if (op == "-") {
    if (a.size() == 1)
      return Value::integer_of(-a[0].i);
    return Value::integer_of(a[0].i - a[1].i);
  }
  if (op == ">=")
    return Value::boolean_of(a[0].i >= a[1].i);
  if (op == "<=")
    return Value::boolean_of(a[0].i <= a[1].i);
  if (op == ">")
    return Value::boolean_of(a[0].i > a[1].i);
  if (op == "<")
    return Value::boolean_of(a[0].i < a[1].i);
  if (!a.empty() && a[0].sort.kind == Sort::Kind::BitVec)
    return eval_bv_op(op, a);
  throw InfrastructureError("no evaluation rule for operator '" + op + "'");
}

Value evaluate(const TermPtr &t, const Valuation &v, const EvalContext &ctx) {
  switch (t->kind()) {
  case Term::Kind::Constant:
    return t->value();
  case Term::Kind::Variable: {
    auto it = v.find(t->name());
    if (it == v.end())
      throw InfrastructureError("unbound variable '" + t->name() +
                                "' during evaluation");
    return it->second;
  }
  case Term::Kind::Apply:
    break;
  }
  const std::string &op = t->name();
  const auto &args = t->args();

  if (auto it = ctx.funs.find(op); it != ctx.funs.end()) {
    const Helper &h = *it->second;
    assert(args.size() == h.params.size());
    Valuation bound;
    for (std::size_t k = 0; k < args.size(); ++k)
      bound.emplace(h.params[k].first, evaluate(args[k], v, ctx));
    return evaluate(h.body, bound, ctx);
  }
  if (op == "ite")
    return evaluate(args[0], v, ctx).b ? evaluate(args[1], v, ctx)
                                       : evaluate(args[2], v, ctx);
  if (op == "and") {
    for (const auto &a : args)
      if (!evaluate(a, v, ctx).b)
        return Value::boolean_of(false);
    return Value::boolean_of(true);
  }
  if (op == "or") {
    for (const auto &a : args)
      if (evaluate(a, v, ctx).b)
        return Value::boolean_of(true);
    return Value::boolean_of(false);
  }
  if (op == "not")
    return Value::boolean_of(!evaluate(args[0], v, ctx).b);
  if (op == "=>") {
    // right-associative chain: all but the last are antecedents
    for (std::size_t k = 0; k + 1 < args.size(); ++k)
      if (!evaluate(args[k], v, ctx).b)
        return Value::boolean_of(true);
    return evaluate(args.back(), v, ctx);
  }

  std::vector<Value> vals;
  vals.reserve(args.size());
  for (const auto &a : args)
    vals.push_back(evaluate(a, v, ctx));
  return apply_op(op, vals);
}

namespace {

void free_vars(const TermPtr &t, std::set<std::string> &out) {
  if (t->kind() == Term::Kind::Variable) {
    out.insert(t->name());
    return;
  }
  if (t->kind() == Term::Kind::Apply)
    for (const auto &a : t->args())
      free_vars(a, out);
}

// Domain of one quantified variable, in the order verification visits it.
// Small values come first so counterexamples stay small.
struct Domain {
  const Sort sort;
  const Integer int_bound;
  bool sampled = false;

  std::size_t size() const {
    switch (sort.kind) {
    case Sort::Kind::Bool:
      return 2;
    case Sort::Kind::Int: {
      Integer n = 2 * int_bound + 1;
      return n.convert_to<std::size_t>();
    }
    case Sort::Kind::BitVec:
    default:
      return static_cast<std::size_t>(1ULL << sort.width);
    }
  }

  Value at(std::size_t k) const {
    switch (sort.kind) {
    case Sort::Kind::Bool:
      return Value::boolean_of(k == 1);
    case Sort::Kind::Int: {
      // 0, 1, -1, 2, -2, ...
      Integer idx(static_cast<long long>(k));
      Integer val = (idx + 1) / 2;
      if (k % 2 == 0)
        val = -val;
      return Value::integer_of(val);
    }
    case Sort::Kind::BitVec:
    default:
      return Value::bitvec_of(sort.width, static_cast<std::uint64_t>(k));
    }
  }

  Value sample(Rng &rng) const {
    switch (sort.kind) {
    case Sort::Kind::Bool:
      return Value::boolean_of(rng.coin());
    case Sort::Kind::Int: {
      Integer n = 2 * int_bound + 1;
      return at(static_cast<std::size_t>(rng.below(n.convert_to<std::uint64_t>())));
    }
    case Sort::Kind::BitVec:
    default:
      return Value::bitvec_of(sort.width, rng.next());
    }
  }

  Value smallest() const { return at(0); }
};

} // namespace

ValidationResult validate_solution(const Benchmark &b, const TermPtr &candidate,
                                   const VerifyBounds &bounds,
                                   std::uint64_t *work_units) {
  Helper bound_fun{b.synth_fun.name, b.synth_fun.params, b.synth_fun.ret,
                   candidate};
  EvalContext ctx = EvalContext::for_benchmark(b);
  ctx.bind(bound_fun);

  std::map<std::string, Sort> declared;
  for (const auto &[n, s] : b.declared_vars)
    declared.emplace(n, s);

  ValidationResult res;
  auto tick = [&work_units] {
    if (work_units)
      ++*work_units;
  };
  auto full_counterexample = [&](const Valuation &partial) {
    Valuation full;
    for (const auto &[n, s] : b.declared_vars) {
      auto it = partial.find(n);
      full.emplace(n, it != partial.end()
                          ? it->second
                          : Domain{s, bounds.int_bound}.smallest());
    }
    return full;
  };

  for (const auto &constraint : b.constraints) {
    std::set<std::string> fv;
    free_vars(constraint, fv);
    std::vector<std::string> names;
    std::vector<Domain> domains;
    for (const auto &n : fv)
      if (auto it = declared.find(n); it != declared.end()) {
        names.push_back(n);
        domains.push_back(Domain{it->second, bounds.int_bound});
      }

    if (names.empty()) {
      tick();
      if (!evaluate(constraint, {}, ctx).b) {
        res.counterexample = full_counterexample({});
        return res;
      }
      continue;
    }

    bool sample = false;
    std::size_t product = 1;
    for (auto &d : domains) {
      if (d.sort.kind == Sort::Kind::BitVec &&
          d.sort.width > bounds.bv_exhaustive_width)
        sample = true;
      if (d.sort.kind == Sort::Kind::Int && d.int_bound > 1000000)
        sample = true;
      if (!sample) {
        std::size_t sz = d.size();
        if (product > bounds.max_exhaustive / sz)
          sample = true;
        else
          product *= sz;
      }
    }

    if (!sample) {
      std::vector<std::size_t> odo(names.size(), 0);
      Valuation v;
      for (std::size_t k = 0; k < names.size(); ++k)
        v[names[k]] = domains[k].at(0);
      while (true) {
        tick();
        if (!evaluate(constraint, v, ctx).b) {
          res.counterexample = full_counterexample(v);
          return res;
        }
        // odometer, last variable fastest
        std::size_t k = names.size();
        while (k > 0) {
          --k;
          if (++odo[k] < domains[k].size()) {
            v[names[k]] = domains[k].at(odo[k]);
            break;
          }
          odo[k] = 0;
          v[names[k]] = domains[k].at(0);
          if (k == 0)
            goto constraint_done;
        }
      }
    constraint_done:;
      continue;
    }

    res.bounded = true;
    Rng rng = derived_rng(bounds.seed, stream::verification,
                          hash_str(constraint->str()));
    for (std::size_t trial = 0; trial < bounds.sample_count; ++trial) {
      Valuation v;
      for (std::size_t k = 0; k < names.size(); ++k)
        v[names[k]] = domains[k].sample(rng);
      tick();
      if (!evaluate(constraint, v, ctx).b) {
        res.counterexample = full_counterexample(v);
        return res;
      }
    }
  }
  res.confirmed = true;
  return res;
}

} // namespace mgs
