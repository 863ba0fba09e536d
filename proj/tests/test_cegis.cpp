#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "core/cegis.hpp"
#include "core/enumeration.hpp"
#include "core/matrix.hpp"
#include "core/sygus_parser.hpp"

using namespace mgs;

namespace {

Grammar plus_grammar(bool with_one) {
  Grammar g;
  g.nonterminals.push_back({"Start", Sort::integer()});
  auto sref = Term::variable("Start", Sort::integer());
  std::vector<TermPtr> rules = {Term::variable("x", Sort::integer()),
                                Term::constant(Value::integer_of(0))};
  if (with_one)
    rules.push_back(Term::constant(Value::integer_of(1)));
  rules.push_back(Term::apply("+", {sref, sref}));
  g.rules.push_back(rules);
  return g;
}

std::multiset<std::string> bank_strings(const Enumerator &en, std::size_t size) {
  std::multiset<std::string> out;
  for (const auto &t : en.start_bank(size))
    out.insert(t->str());
  return out;
}

Benchmark max2_pbe() {
  return parse_benchmark(
      "(set-logic LIA)(synth-fun f ((x Int) (y Int)) Int)"
      "(constraint (= (f 1 2) 2))(constraint (= (f 2 1) 2))"
      "(constraint (= (f 0 0) 0))(constraint (= (f (- 1) (- 2)) (- 1)))"
      "(check-synth)");
}

Grammar max2_grammar() {
  Grammar g;
  g.nonterminals.push_back({"Start", Sort::integer()});
  g.nonterminals.push_back({"B", Sort::boolean()});
  auto sref = Term::variable("Start", Sort::integer());
  auto bref = Term::variable("B", Sort::boolean());
  g.rules.push_back({Term::variable("x", Sort::integer()),
                     Term::variable("y", Sort::integer()),
                     Term::constant(Value::integer_of(0)),
                     Term::constant(Value::integer_of(1)),
                     Term::apply("ite", {bref, sref, sref})});
  g.rules.push_back({Term::apply(">=", {sref, sref})});
  return g;
}

} // namespace

TEST_CASE("banks enumerate exactly the size-classed expansions") {
  Grammar g = plus_grammar(false);
  Enumerator en(g);
  while (en.filled() < 3 && en.advance(1u << 20))
    ;
  REQUIRE(en.filled() >= 3);

  CHECK(bank_strings(en, 1) == std::multiset<std::string>{"x", "0"});
  CHECK(bank_strings(en, 2).empty());
  CHECK(bank_strings(en, 3) ==
        std::multiset<std::string>{"(+ x x)", "(+ x 0)", "(+ 0 x)", "(+ 0 0)"});
}

TEST_CASE("single-rule grammars exhaust") {
  Grammar g;
  g.nonterminals.push_back({"Start", Sort::integer()});
  g.rules.push_back({Term::variable("x", Sort::integer())});
  Enumerator en(g);
  while (en.advance(1000) && en.filled() < 4)
    ;
  CHECK(en.exhausted());
  CHECK(bank_strings(en, 1) == std::multiset<std::string>{"x"});
  CHECK(en.bank(0, 2).empty());
}

TEST_CASE("adding a rule never shrinks a bank") {
  Grammar smaller = plus_grammar(false);
  Grammar larger = plus_grammar(true);
  Enumerator a(smaller), b(larger);
  while (a.filled() < 5 && a.advance(1u << 22))
    ;
  while (b.filled() < 5 && b.advance(1u << 22))
    ;
  for (std::size_t size = 1; size <= 5; ++size)
    CHECK(b.start_bank(size).size() >= a.start_bank(size).size());
}

TEST_CASE("evaluation follows SMT semantics") {
  Valuation v{{"x", Value::integer_of(3)}, {"y", Value::integer_of(7)}};
  EvalContext ctx;
  auto one = Term::constant(Value::integer_of(1));
  CHECK(evaluate(Term::apply("+", {one, one}), {}, ctx).i == 2);

  auto b15 = Term::constant(Value::bitvec_of(4, 0xf));
  auto b1 = Term::constant(Value::bitvec_of(4, 1));
  Value wrap = evaluate(Term::apply("bvadd", {b15, b1}), {}, ctx);
  CHECK(wrap.bits == 0); // modulo 2^4
  CHECK(wrap.sort == Sort::bitvec(4));

  auto x = Term::variable("x", Sort::integer());
  auto y = Term::variable("y", Sort::integer());
  auto pick = Term::apply("ite", {Term::apply(">=", {x, y}), x, y});
  CHECK(evaluate(pick, v, ctx).i == 7);

  // total division semantics
  auto z = Term::constant(Value::bitvec_of(4, 0));
  auto six = Term::constant(Value::bitvec_of(4, 6));
  CHECK(evaluate(Term::apply("bvudiv", {six, z}), {}, ctx).bits == 0xf);
  CHECK(evaluate(Term::apply("bvurem", {six, z}), {}, ctx).bits == 6);

  // operator application on pre-evaluated arguments agrees
  CHECK(apply_op("+", {Value::integer_of(2), Value::integer_of(5)}).i == 7);
  CHECK(apply_op("=>", {Value::boolean_of(false), Value::boolean_of(false)}).b);
}

TEST_CASE("value encodings collide only on equal values") {
  auto enc = [](const Value &v) {
    std::string s;
    v.encode(s);
    return s;
  };
  CHECK(enc(Value::integer_of(5)) == enc(Value::integer_of(5)));
  CHECK(enc(Value::integer_of(5)) != enc(Value::integer_of(-5)));
  CHECK(enc(Value::boolean_of(true)) != enc(Value::boolean_of(false)));
  CHECK(enc(Value::bitvec_of(8, 3)) != enc(Value::bitvec_of(8, 4)));

  Integer big = Integer(1) << 70;
  CHECK(enc(Value::integer_of(big)) == enc(Value::integer_of(big)));
  CHECK(enc(Value::integer_of(big)) != enc(Value::integer_of(big + 1)));

  // concatenated rows must stay uniquely decodable
  std::string a, b;
  Value::integer_of(1).encode(a);
  Value::integer_of(2).encode(a);
  Value::integer_of(Integer("36893488147419103232")).encode(b); // 2^65
  CHECK(a != b);
}

TEST_CASE("validation confirms, refutes with the smallest witness, and flags sampling") {
  Benchmark ident = parse_benchmark(
      "(set-logic LIA)(synth-fun id ((x Int)) Int)"
      "(declare-var a Int)(constraint (= (id a) a))(check-synth)");
  VerifyBounds bounds;
  bounds.int_bound = 8;

  auto xvar = Term::variable("x", Sort::integer());
  ValidationResult ok = validate_solution(ident, xvar, bounds);
  CHECK(ok.confirmed);
  CHECK_FALSE(ok.bounded);

  ValidationResult bad =
      validate_solution(ident, Term::constant(Value::integer_of(0)), bounds);
  REQUIRE_FALSE(bad.confirmed);
  REQUIRE(bad.counterexample.has_value());
  CHECK(bad.counterexample->at("a").i == 1); // domain order 0, 1, -1, 2, ...

  Benchmark b = max2_pbe();
  auto x = Term::variable("x", Sort::integer());
  auto y = Term::variable("y", Sort::integer());
  auto cand = Term::apply("ite", {Term::apply(">=", {x, y}), x, y});
  CHECK(validate_solution(b, cand).confirmed);

  // wide bitvector domains are sampled, and say so
  Benchmark wide = parse_benchmark(
      "(set-logic BV)(synth-fun f ((x (_ BitVec 16))) (_ BitVec 16))"
      "(declare-var a (_ BitVec 16))(constraint (= (f a) a))(check-synth)");
  ValidationResult sampled =
      validate_solution(wide, Term::variable("x", Sort::bitvec(16)));
  CHECK(sampled.confirmed);
  CHECK(sampled.bounded);
}

TEST_CASE("trivial grammar solves at the first candidate") {
  Benchmark ident = parse_benchmark(
      "(set-logic LIA)(synth-fun id ((x Int)) Int)"
      "(declare-var a Int)(constraint (= (id a) a))(check-synth)");
  Grammar g;
  g.nonterminals.push_back({"Start", Sort::integer()});
  g.rules.push_back({Term::variable("x", Sort::integer())});
  CegisLimits limits;
  SolveResult r = synthesize(ident, g, limits);
  REQUIRE(r.status == SolveStatus::Solved);
  CHECK(r.solution->str() == "x");
  CHECK(r.candidates_enumerated == 1);
  CHECK(r.wall_time < 0.1);
}

TEST_CASE("pbe max2 synthesizes a witness consistent with every example") {
  Benchmark b = max2_pbe();
  CegisLimits limits;
  SolveResult r = synthesize(b, max2_grammar(), limits);
  REQUIRE(r.status == SolveStatus::Solved);

  EvalContext ctx;
  Helper f{"f", b.synth_fun.params, b.synth_fun.ret, r.solution};
  ctx.bind(f);
  auto call = [&](long long x, long long y) {
    TermPtr app = Term::apply("f", {Term::constant(Value::integer_of(x)),
                                    Term::constant(Value::integer_of(y))});
    return evaluate(app, {}, ctx).i;
  };
  CHECK(call(1, 2) == 2);
  CHECK(call(2, 1) == 2);
  CHECK(call(0, 0) == 0);
  CHECK(call(-1, -2) == -1);
}

TEST_CASE("insufficient finite language reports exhaustion") {
  Benchmark b = parse_benchmark(
      "(set-logic LIA)(synth-fun f () Int)"
      "(constraint (= (f) 2))(check-synth)");
  Grammar g;
  g.nonterminals.push_back({"Start", Sort::integer()});
  g.rules.push_back({Term::constant(Value::integer_of(0)),
                     Term::constant(Value::integer_of(1))});
  SolveResult r = synthesize(b, g, {});
  CHECK(r.status == SolveStatus::Unsolved);
  CHECK(r.diagnostics.find("exhausted") != std::string::npos);
}

TEST_CASE("zero timeout classifies as timeout") {
  Benchmark ident = parse_benchmark(
      "(set-logic LIA)(synth-fun id ((x Int)) Int)"
      "(declare-var a Int)(constraint (= (id a) a))(check-synth)");
  CegisLimits limits;
  limits.timeout_seconds = 0.0;
  Grammar g;
  g.nonterminals.push_back({"Start", Sort::integer()});
  g.rules.push_back({Term::variable("x", Sort::integer())});
  CHECK(synthesize(ident, g, limits).status == SolveStatus::Timeout);
}

TEST_CASE("solve times and counts are deterministic work, not wall time") {
  Benchmark b = max2_pbe();
  SolveResult r1 = synthesize(b, max2_grammar(), {});
  SolveResult r2 = synthesize(b, max2_grammar(), {});
  CHECK(r1.wall_time == r2.wall_time);
  CHECK(r1.candidates_enumerated == r2.candidates_enumerated);
}

TEST_CASE("observational equivalence changes cost, never soundness") {
  Benchmark b = max2_pbe();
  CegisLimits with, without;
  without.observational_equivalence = false;
  SolveResult fast = synthesize(b, max2_grammar(), with);
  SolveResult slow = synthesize(b, max2_grammar(), without);
  REQUIRE(fast.status == SolveStatus::Solved);
  REQUIRE(slow.status == SolveStatus::Solved);
  CHECK(validate_solution(b, fast.solution).confirmed);
  CHECK(validate_solution(b, slow.solution).confirmed);
  CHECK(fast.candidates_enumerated <= slow.candidates_enumerated);
}

TEST_CASE("a leaner grammar solving the same benchmark enumerates less") {
  Benchmark b =
      parse_benchmark_file(std::string(MGS_SOURCE_DIR) + "/benchmarks/lia_max2.sl");
  MatrixStructure s = build_structure(b, WiringPolicy::SameIndex);
  Grammar full = instantiate(s, full_instance(s));

  MatrixInstance lean = MatrixInstance::zeros(s);
  auto set = [&](std::size_t row, const char *label) {
    for (std::size_t j = 0; j < s.cols.size(); ++j)
      if (s.cols[j].label == label)
        lean.bits[row][j] = 1;
  };
  set(0, "ite");
  set(0, "a");
  set(0, "b");
  std::size_t bool_row = static_cast<std::size_t>(s.row_of(Sort::boolean(), 1));
  set(bool_row, ">=");
  Grammar sub = *prune(instantiate(s, lean));

  SolveResult with_full = synthesize(b, *prune(full), {});
  SolveResult with_sub = synthesize(b, sub, {});
  REQUIRE(with_full.status == SolveStatus::Solved);
  REQUIRE(with_sub.status == SolveStatus::Solved);
  CHECK(with_sub.candidates_enumerated <= with_full.candidates_enumerated);
  CHECK(with_sub.wall_time <= with_full.wall_time);
}
