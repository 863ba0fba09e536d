#include "enumeration.hpp"

#include <algorithm>
#include <cassert>

namespace mgs {

namespace {

void collect_slots(const Grammar &g, const TermPtr &tmpl,
                   std::vector<std::size_t> &slots) {
  if (tmpl->kind() == Term::Kind::Variable) {
    int k = g.nt_index(tmpl->name());
    if (k >= 0)
      slots.push_back(static_cast<std::size_t>(k));
    return;
  }
  if (tmpl->kind() == Term::Kind::Apply)
    for (const auto &a : tmpl->args())
      collect_slots(g, a, slots);
}

bool all_args_placeholders(const Grammar &g, const TermPtr &tmpl) {
  if (tmpl->kind() != Term::Kind::Apply || tmpl->args().empty())
    return false;
  for (const auto &a : tmpl->args())
    if (a->kind() != Term::Kind::Variable || g.nt_index(a->name()) < 0)
      return false;
  return true;
}

} // namespace

Enumerator::Enumerator(const Grammar &g, const std::vector<Valuation> *oe_points,
                       const EvalContext *oe_ctx)
    : g_(g), oe_points_(oe_points), oe_ctx_(oe_ctx) {
  const std::size_t n = g.nonterminals.size();
  rules_.resize(n);
  banks_.assign(n, {{}});
  vals_.assign(n, {{}});
  seen_.resize(n);
  keys_seen_.resize(n);
  for (std::size_t nt = 0; nt < n; ++nt)
    for (const auto &rhs : g.rules[nt]) {
      CompiledRule r;
      r.tmpl = rhs;
      collect_slots(g, rhs, r.slots);
      r.fixed = rhs->size() - r.slots.size();
      if (oe() && all_args_placeholders(g, rhs)) {
        r.flat = true;
        if (auto it = oe_ctx_->funs.find(rhs->name()); it != oe_ctx_->funs.end())
          r.helper = it->second;
      }
      rules_[nt].push_back(std::move(r));
    }
}

const std::vector<TermPtr> &Enumerator::bank(std::size_t nt,
                                             std::size_t size) const {
  static const std::vector<TermPtr> empty;
  if (nt >= banks_.size() || size >= banks_[nt].size())
    return empty;
  return banks_[nt][size];
}

const std::vector<std::vector<Value>> &Enumerator::vals(std::size_t nt,
                                                        std::size_t size) const {
  static const std::vector<std::vector<Value>> empty;
  if (nt >= vals_.size() || size >= vals_[nt].size())
    return empty;
  return vals_[nt][size];
}

TermPtr Enumerator::substitute(const TermPtr &tmpl,
                               const std::vector<TermPtr> &subs,
                               std::size_t &cursor) const {
  if (tmpl->kind() == Term::Kind::Variable && g_.nt_index(tmpl->name()) >= 0)
    return subs[cursor++];
  if (tmpl->kind() == Term::Kind::Apply) {
    std::vector<TermPtr> args;
    args.reserve(tmpl->args().size());
    for (const auto &a : tmpl->args())
      args.push_back(substitute(a, subs, cursor));
    return Term::apply(tmpl->name(), std::move(args));
  }
  return tmpl;
}

bool Enumerator::try_add(std::size_t nt, const TermPtr &t) {
  ++units_;
  if (!seen_[nt].insert(t).second)
    return false;
  banks_[nt].back().push_back(t);
  return true;
}

void Enumerator::eval_full(const TermPtr &t) {
  row_.clear();
  key_.clear();
  for (const auto &env : *oe_points_) {
    Value v = evaluate(t, env, *oe_ctx_);
    v.encode(key_);
    row_.push_back(std::move(v));
  }
}

void Enumerator::compose_flat(const CompiledRule &r) {
  row_.clear();
  key_.clear();
  args_.resize(sv_.size());
  const std::size_t npts = oe_points_->size();
  for (std::size_t pt = 0; pt < npts; ++pt) {
    for (std::size_t s = 0; s < sv_.size(); ++s)
      args_[s] = (*sv_[s])[pt];
    Value out;
    if (r.helper) {
      Valuation bound;
      for (std::size_t s = 0; s < args_.size(); ++s)
        bound.emplace(r.helper->params[s].first, args_[s]);
      out = evaluate(r.helper->body, bound, *oe_ctx_);
    } else {
      out = apply_op(r.tmpl->name(), args_);
    }
    out.encode(key_);
    row_.push_back(std::move(out));
  }
}

void Enumerator::add_valued(std::size_t nt, TermPtr t) {
  banks_[nt].back().push_back(std::move(t));
  vals_[nt].back().push_back(row_);
}

bool Enumerator::advance(std::uint64_t unit_budget) {
  const std::size_t k = filled_ + 1;
  for (auto &b : banks_)
    b.emplace_back();
  for (auto &v : vals_)
    v.emplace_back();

  // Operator and fixed rules read strictly smaller banks; one pass suffices.
  for (std::size_t nt = 0; nt < rules_.size(); ++nt) {
    for (const auto &r : rules_[nt]) {
      if (units_ > unit_budget)
        return false;
      if (r.slots.empty()) {
        if (r.tmpl->size() == k) {
          if (oe()) {
            units_ += 2; // consideration + signature evaluation
            eval_full(r.tmpl);
            if (keys_seen_[nt].insert(key_).second)
              add_valued(nt, r.tmpl);
          } else {
            try_add(nt, r.tmpl);
          }
        }
        continue;
      }
      if (r.fixed == 0)
        continue; // unit rule, closed below
      if (k < r.fixed + r.slots.size())
        continue;
      const std::size_t budget = k - r.fixed;
      const std::size_t p = r.slots.size();
      // operand sizes: compositions of `budget` into p parts >= 1, in
      // lexicographic order starting from (1, ..., 1, budget-p+1)
      std::vector<std::size_t> part(p, 1);
      part[p - 1] = budget - (p - 1);
      auto next_composition = [&part, p]() {
        std::size_t tail = 0;
        for (std::size_t s = p; s-- > 1;) {
          tail += part[s];
          if (tail > p - s) {
            ++part[s - 1];
            for (std::size_t q = s; q < p; ++q)
              part[q] = 1;
            part[p - 1] = tail - 1 - (p - 1 - s);
            return true;
          }
        }
        return false;
      };
      do {
        bool feasible = true;
        for (std::size_t s = 0; s < p && feasible; ++s)
          if (bank(r.slots[s], part[s]).empty())
            feasible = false;
        if (!feasible)
          continue;
        std::vector<std::size_t> idx(p, 0);
        bool more = true;
        while (more) {
          if (units_ > unit_budget)
            return false;
          if (oe()) {
            units_ += 2; // consideration + signature evaluation
            if (r.flat) {
              sv_.resize(p);
              for (std::size_t s = 0; s < p; ++s)
                sv_[s] = &vals(r.slots[s], part[s])[idx[s]];
              compose_flat(r);
              if (keys_seen_[nt].insert(key_).second) {
                // fresh signature: only now build the term
                std::vector<TermPtr> subs(p);
                for (std::size_t s = 0; s < p; ++s)
                  subs[s] = bank(r.slots[s], part[s])[idx[s]];
                std::size_t cursor = 0;
                add_valued(nt, substitute(r.tmpl, subs, cursor));
              }
            } else {
              std::vector<TermPtr> subs(p);
              for (std::size_t s = 0; s < p; ++s)
                subs[s] = bank(r.slots[s], part[s])[idx[s]];
              std::size_t cursor = 0;
              TermPtr t = substitute(r.tmpl, subs, cursor);
              eval_full(t);
              if (keys_seen_[nt].insert(key_).second)
                add_valued(nt, std::move(t));
            }
          } else {
            std::vector<TermPtr> subs(p);
            for (std::size_t s = 0; s < p; ++s)
              subs[s] = bank(r.slots[s], part[s])[idx[s]];
            std::size_t cursor = 0;
            try_add(nt, substitute(r.tmpl, subs, cursor));
          }
          // odometer over operand indices, last fastest
          more = false;
          for (std::size_t s = p; s-- > 0;) {
            if (++idx[s] < bank(r.slots[s], part[s]).size()) {
              more = true;
              break;
            }
            idx[s] = 0;
          }
        }
      } while (next_composition());
    }
  }

  // Close unit rules within this size until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t nt = 0; nt < rules_.size(); ++nt)
      for (const auto &r : rules_[nt]) {
        if (!(r.fixed == 0 && r.slots.size() == 1))
          continue;
        if (units_ > unit_budget)
          return false;
        const auto &src = bank(r.slots[0], k);
        if (oe()) {
          // values carry over from the source bank; no fresh evaluation
          const auto &srcv = vals(r.slots[0], k);
          for (std::size_t q = 0; q < src.size(); ++q) {
            ++units_;
            key_.clear();
            for (const Value &val : srcv[q])
              val.encode(key_);
            if (keys_seen_[nt].insert(key_).second) {
              row_ = srcv[q];
              add_valued(nt, src[q]);
              changed = true;
            }
          }
        } else {
          for (std::size_t q = 0; q < src.size(); ++q)
            if (try_add(nt, src[q]))
              changed = true;
        }
      }
  }

  filled_ = k;
  return true;
}

bool Enumerator::exhausted() const {
  // Largest size any rule could produce from current banks.
  std::size_t reach = 0;
  for (std::size_t nt = 0; nt < rules_.size(); ++nt)
    for (const auto &r : rules_[nt]) {
      if (r.slots.empty()) {
        reach = std::max(reach, r.tmpl->size());
        continue;
      }
      std::size_t total = r.fixed;
      bool ok = true;
      for (std::size_t s : r.slots) {
        std::size_t best = 0;
        for (std::size_t sz = filled_; sz >= 1; --sz)
          if (!bank(s, sz).empty()) {
            best = sz;
            break;
          }
        if (best == 0) {
          ok = false;
          break;
        }
        total += best;
      }
      if (ok)
        reach = std::max(reach, total);
    }
  return reach <= filled_;
}

} // namespace mgs
