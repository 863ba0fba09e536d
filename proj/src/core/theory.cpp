#include "theory.hpp"

#include "errors.hpp"

#include <set>

namespace mgs {

namespace {

const std::set<std::string> kIntOps = {"+", "-"};
const std::set<std::string> kIntCmpOps = {">=", "<=", ">", "<"};
const std::set<std::string> kBoolVariadicOps = {"and", "or", "=>"};
const std::set<std::string> kBvBinOps = {"bvadd", "bvsub", "bvand", "bvor",
                                         "bvxor", "bvshl", "bvlshr", "bvashr",
                                         "bvmul", "bvudiv", "bvurem"};
const std::set<std::string> kBvUnOps = {"bvnot", "bvneg"};
const std::set<std::string> kBvCmpOps = {"bvule", "bvult", "bvuge", "bvugt"};

[[noreturn]] void fail(const std::string &msg) { throw SortError(msg); }

void need_arity(const std::string &op, std::size_t got, std::size_t want) {
  if (got != want)
    fail("operator '" + op + "' expects " + std::to_string(want) + " operands, got " +
         std::to_string(got));
}

void need_sort(const std::string &op, const Sort &got, const Sort &want) {
  if (got != want)
    fail("operand sort mismatch for '" + op + "': " + got.str() + " where " + want.str() +
         " required");
}

} // namespace

bool is_theory_op(const std::string &name) {
  return name == "ite" || name == "=" || name == "not" || kIntOps.count(name) ||
         kIntCmpOps.count(name) || kBoolVariadicOps.count(name) || kBvBinOps.count(name) ||
         kBvUnOps.count(name) || kBvCmpOps.count(name);
}

Sort sort_of(const TermPtr &term, const std::map<std::string, Sort> &env,
             const FunctionSigs &funcs) {
  switch (term->kind()) {
  case Term::Kind::Constant:
    return term->value().sort;
  case Term::Kind::Variable: {
    auto it = env.find(term->name());
    if (it == env.end())
      fail("unbound symbol '" + term->name() + "'");
    return it->second;
  }
  case Term::Kind::Apply:
    break;
  }

  const std::string &op = term->name();
  std::vector<Sort> args;
  args.reserve(term->args().size());
  for (const auto &a : term->args())
    args.push_back(sort_of(a, env, funcs));

  if (auto it = funcs.find(op); it != funcs.end()) {
    const FunctionSig &sig = it->second;
    need_arity(op, args.size(), sig.params.size());
    for (std::size_t k = 0; k < args.size(); ++k)
      need_sort(op, args[k], sig.params[k]);
    return sig.ret;
  }

  if (op == "ite") {
    need_arity(op, args.size(), 3);
    need_sort(op, args[0], Sort::boolean());
    if (args[1] != args[2])
      fail("ite branches disagree: " + args[1].str() + " vs " + args[2].str());
    return args[1];
  }
  if (op == "=") {
    need_arity(op, args.size(), 2);
    if (args[0] != args[1])
      fail("'=' operands disagree: " + args[0].str() + " vs " + args[1].str());
    return Sort::boolean();
  }
  if (op == "not") {
    need_arity(op, args.size(), 1);
    need_sort(op, args[0], Sort::boolean());
    return Sort::boolean();
  }
  if (kBoolVariadicOps.count(op)) {
    if (args.size() < 2)
      fail("operator '" + op + "' expects at least 2 operands");
    for (const Sort &s : args)
      need_sort(op, s, Sort::boolean());
    return Sort::boolean();
  }
  if (op == "+") {
    if (args.size() < 2)
      fail("operator '+' expects at least 2 operands");
    for (const Sort &s : args)
      need_sort(op, s, Sort::integer());
    return Sort::integer();
  }
  if (op == "-") {
    // unary negation or binary subtraction
    if (args.size() != 1 && args.size() != 2)
      fail("operator '-' expects 1 or 2 operands, got " + std::to_string(args.size()));
    for (const Sort &s : args)
      need_sort(op, s, Sort::integer());
    return Sort::integer();
  }
  if (kIntCmpOps.count(op)) {
    need_arity(op, args.size(), 2);
    need_sort(op, args[0], Sort::integer());
    need_sort(op, args[1], Sort::integer());
    return Sort::boolean();
  }
  if (kBvBinOps.count(op)) {
    need_arity(op, args.size(), 2);
    if (!args[0].is_bitvec())
      fail("operand sort mismatch for '" + op + "': " + args[0].str() +
           " where a bitvector is required");
    need_sort(op, args[1], args[0]);
    return args[0];
  }
  if (kBvUnOps.count(op)) {
    need_arity(op, args.size(), 1);
    if (!args[0].is_bitvec())
      fail("operand sort mismatch for '" + op + "': " + args[0].str() +
           " where a bitvector is required");
    return args[0];
  }
  if (kBvCmpOps.count(op)) {
    need_arity(op, args.size(), 2);
    if (!args[0].is_bitvec())
      fail("operand sort mismatch for '" + op + "': " + args[0].str() +
           " where a bitvector is required");
    need_sort(op, args[1], args[0]);
    return Sort::boolean();
  }

  fail("unknown operator '" + op + "'");
}

const std::vector<TheoryOp> &theory_ops(const std::string &logic) {
  // V = the theory's value sort, B = Bool. Value-producing rules first, then
  // predicates and connectives; this is also the matrix column order.
  static const std::vector<TheoryOp> lia = {
      {"+", {true, true}, true},
      {"-", {true, true}, true},
      {"ite", {false, true, true}, true},
      {">=", {true, true}, false},
      {"<=", {true, true}, false},
      {"=", {true, true}, false},
      {">", {true, true}, false},
      {"<", {true, true}, false},
      {"and", {false, false}, false},
      {"or", {false, false}, false},
      {"not", {false}, false},
      {"=>", {false, false}, false},
  };
  static const std::vector<TheoryOp> bv = {
      {"bvadd", {true, true}, true},
      {"bvsub", {true, true}, true},
      {"bvand", {true, true}, true},
      {"bvor", {true, true}, true},
      {"bvxor", {true, true}, true},
      {"bvnot", {true}, true},
      {"bvneg", {true}, true},
      {"bvshl", {true, true}, true},
      {"bvlshr", {true, true}, true},
      {"bvashr", {true, true}, true},
      {"bvmul", {true, true}, true},
      {"bvudiv", {true, true}, true},
      {"bvurem", {true, true}, true},
      {"ite", {false, true, true}, true},
      {"bvule", {true, true}, false},
      {"bvult", {true, true}, false},
      {"bvuge", {true, true}, false},
      {"bvugt", {true, true}, false},
      {"=", {true, true}, false},
      {"and", {false, false}, false},
      {"or", {false, false}, false},
      {"not", {false}, false},
      {"=>", {false, false}, false},
  };
  if (logic == "LIA")
    return lia;
  if (logic == "BV")
    return bv;
  throw ConfigError("unsupported logic '" + logic + "' (supported: LIA, BV)");
}

bool logic_supported(const std::string &logic) { return logic == "LIA" || logic == "BV"; }

} // namespace mgs
