#ifndef MGS_CORE_ENUMERATION_HPP
#define MGS_CORE_ENUMERATION_HPP

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "evaluator.hpp"
#include "grammar.hpp"

namespace mgs {

// Bottom-up term banks per non-terminal, indexed by term size (node count).
// Within one size, terms appear in rule-index order, operand indices
// lexicographic with the last operand fastest; unit rules (bare
// non-terminal right-hand sides) are closed afterwards. Banks never hold
// structural duplicates.
//
// When observational-equivalence points are given, each banked term also
// carries its value at every point, candidate values are composed from
// operand values before the term is built, and only the first term per
// value signature survives (the smallest, by enumeration order). Terms must
// then be closed over `oe_ctx` and the point valuations, or evaluation
// throws. Both pointers must outlive the enumerator.
class Enumerator {
public:
  explicit Enumerator(const Grammar &g,
                      const std::vector<Valuation> *oe_points = nullptr,
                      const EvalContext *oe_ctx = nullptr);

  // Fills banks for the next size. Work units are cumulative across calls
  // and compared with units(); returns false when the budget ran out
  // mid-size.
  bool advance(std::uint64_t unit_budget);

  std::size_t filled() const { return filled_; }
  // True when no rule can produce a term larger than what is banked.
  bool exhausted() const;

  const std::vector<TermPtr> &bank(std::size_t nt, std::size_t size) const;
  const std::vector<TermPtr> &start_bank(std::size_t size) const {
    return bank(0, size);
  }

  // Work units consumed so far: one per candidate considered plus one per
  // signature evaluation.
  std::uint64_t units() const { return units_; }

private:
  struct CompiledRule {
    TermPtr tmpl;
    std::vector<std::size_t> slots; // placeholder targets, left to right
    std::size_t fixed = 0;          // template nodes minus placeholders
    // Signature fast path: the RHS is one application whose arguments are
    // all placeholders, so operand values compose without a term walk.
    bool flat = false;
    const Helper *helper = nullptr; // set when a flat head names a helper
  };

  bool oe() const { return oe_points_ != nullptr; }
  bool try_add(std::size_t nt, const TermPtr &t);
  TermPtr substitute(const TermPtr &tmpl, const std::vector<TermPtr> &subs,
                     std::size_t &cursor) const;
  const std::vector<std::vector<Value>> &vals(std::size_t nt,
                                              std::size_t size) const;
  // Fill row_/key_ with t's value at each point.
  void eval_full(const TermPtr &t);
  // Fill row_/key_ by applying r's head to operand values in sv_.
  void compose_flat(const CompiledRule &r);
  void add_valued(std::size_t nt, TermPtr t);

  const Grammar &g_;
  const std::vector<Valuation> *oe_points_;
  const EvalContext *oe_ctx_;
  std::vector<std::vector<CompiledRule>> rules_;
  // banks_[nt][size] with index 0 unused; vals_ parallel when oe()
  std::vector<std::vector<std::vector<TermPtr>>> banks_;
  std::vector<std::vector<std::vector<std::vector<Value>>>> vals_;
  std::vector<std::unordered_set<TermPtr, TermPtrHash, TermPtrEq>> seen_;
  std::vector<std::unordered_set<std::string>> keys_seen_;
  std::size_t filled_ = 0;
  std::uint64_t units_ = 0;
  // per-candidate scratch
  std::string key_;
  std::vector<Value> row_;
  std::vector<Value> args_;
  std::vector<const std::vector<Value> *> sv_;
};

} // namespace mgs

#endif
