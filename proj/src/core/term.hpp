#ifndef MGS_CORE_TERM_HPP
#define MGS_CORE_TERM_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace mgs {

// Arbitrary-precision with 128 bits of inline storage: toy-scale values
// never touch the heap, larger ones still work.
using Integer = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<128>>;

struct Sort {
  enum class Kind { Bool, Int, BitVec };

  Kind kind = Kind::Bool;
  unsigned width = 0; // BitVec only, >= 1

  static Sort boolean() { return {Kind::Bool, 0}; }
  static Sort integer() { return {Kind::Int, 0}; }
  static Sort bitvec(unsigned w) { return {Kind::BitVec, w}; }

  bool is_bool() const { return kind == Kind::Bool; }
  bool is_int() const { return kind == Kind::Int; }
  bool is_bitvec() const { return kind == Kind::BitVec; }

  bool operator==(const Sort &o) const { return kind == o.kind && width == o.width; }
  bool operator!=(const Sort &o) const { return !(*this == o); }

  std::string str() const;
};

// A concrete Bool/Int/BitVec value. BitVec payloads are kept in a uint64,
// which caps supported widths at 64; the parser rejects wider sorts.
struct Value {
  Sort sort;
  bool b = false;
  Integer i;
  std::uint64_t bits = 0;

  static Value boolean_of(bool v);
  static Value integer_of(Integer v);
  static Value bitvec_of(unsigned width, std::uint64_t pattern);

  bool operator==(const Value &o) const;
  bool operator!=(const Value &o) const { return !(*this == o); }

  std::string str() const; // SyGuS-IF literal text

  // Compact exact bytes for observational-equivalence signatures; two
  // same-sort values encode equal iff they are equal.
  void encode(std::string &out) const;
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable term tree: constants, variables, and operator/function
// applications. Non-terminal placeholders inside grammar rule templates are
// ordinary variables whose names are resolved against the grammar.
class Term {
public:
  enum class Kind { Constant, Variable, Apply };

  static TermPtr constant(Value v);
  static TermPtr variable(std::string name, Sort sort);
  static TermPtr apply(std::string op, std::vector<TermPtr> args);

  Kind kind() const { return kind_; }
  const Value &value() const { return value_; }
  const std::string &name() const { return name_; } // variable name or operator
  const std::vector<TermPtr> &args() const { return args_; }
  Sort var_sort() const { return var_sort_; }

  std::size_t size() const { return size_; } // node count

  bool equals(const Term &o) const;
  std::uint64_t hash() const { return hash_; }

  std::string str() const; // SyGuS-IF text

private:
  Term() = default;

  Kind kind_ = Kind::Constant;
  Value value_;
  std::string name_;
  std::vector<TermPtr> args_;
  Sort var_sort_;
  std::size_t size_ = 1;
  std::uint64_t hash_ = 0;
};

bool term_eq(const TermPtr &a, const TermPtr &b);

struct TermPtrHash {
  std::size_t operator()(const TermPtr &t) const { return static_cast<std::size_t>(t->hash()); }
};
struct TermPtrEq {
  bool operator()(const TermPtr &a, const TermPtr &b) const { return term_eq(a, b); }
};

} // namespace mgs

#endif
