#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/errors.hpp"
#include "core/sygus_parser.hpp"
#include "core/sygus_printer.hpp"
#include "core/theory.hpp"

using namespace mgs;

namespace {

const char *kIdentity =
    "(set-logic LIA)(synth-fun id ((x Int)) Int)"
    "(declare-var a Int)(constraint (= (id a) a))(check-synth)";

} // namespace

TEST_CASE("minimal benchmark parses into its parts") {
  Benchmark b = parse_benchmark(kIdentity);
  CHECK(b.logic == "LIA");
  CHECK(b.synth_fun.name == "id");
  REQUIRE(b.synth_fun.params.size() == 1);
  CHECK(b.synth_fun.params[0].first == "x");
  CHECK(b.synth_fun.params[0].second == Sort::integer());
  CHECK(b.synth_fun.ret == Sort::integer());
  CHECK_FALSE(b.provided_grammar.has_value());
  CHECK(b.declared_vars.size() == 1);
  CHECK(b.constraints.size() == 1);
}

TEST_CASE("misspelled command is a positioned syntax error") {
  const char *text = "(set-logic LIA)\n(synth-fun id ((x Int)) Int)\n"
                     "(constrant (= 1 1))\n(check-synth)";
  try {
    parse_benchmark(text);
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
    CHECK(e.column() >= 1);
    CHECK(std::string(e.what()).find("constrant") != std::string::npos);
  }
}

TEST_CASE("negative numerals fold to integer constants") {
  Benchmark b = parse_benchmark(
      "(set-logic LIA)(synth-fun f () Int)"
      "(constraint (= (f) (- 5)))(check-synth)");
  const TermPtr &eq = b.constraints[0];
  REQUIRE(eq->args().size() == 2);
  const TermPtr &rhs = eq->args()[1];
  REQUIRE(rhs->kind() == Term::Kind::Constant);
  CHECK(rhs->value().i == -5);
  CHECK(rhs->str() == "(- 5)");
  // binary minus stays an application
  Benchmark b2 = parse_benchmark(
      "(set-logic LIA)(synth-fun f () Int)"
      "(constraint (= (f) (- 5 3)))(check-synth)");
  CHECK(b2.constraints[0]->args()[1]->kind() == Term::Kind::Apply);
}

TEST_CASE("helpers parse, sort-check, and survive a print round trip") {
  const char *text =
      "(set-logic LIA)(synth-fun g ((x Int)) Int)"
      "(define-fun inc ((x Int)) Int (+ x 1))"
      "(declare-var a Int)(constraint (= (g a) (inc a)))(check-synth)";
  Benchmark b = parse_benchmark(text);
  REQUIRE(b.helpers.size() == 1);
  CHECK(b.helpers[0].name == "inc");
  CHECK(b.helpers[0].ret == Sort::integer());

  std::string once = print_benchmark(b);
  Benchmark again = parse_benchmark(once);
  CHECK(again == b);
  CHECK(print_benchmark(again) == once);
}

TEST_CASE("sort checking follows the fixed operator signatures") {
  std::map<std::string, Sort> env{{"x", Sort::integer()},
                                  {"p", Sort::boolean()},
                                  {"u", Sort::bitvec(4)},
                                  {"v", Sort::bitvec(4)}};
  auto i1 = Term::constant(Value::integer_of(1));
  auto x = Term::variable("x", Sort::integer());
  CHECK(sort_of(Term::apply("+", {x, i1}), env) == Sort::integer());

  auto p = Term::variable("p", Sort::boolean());
  CHECK_THROWS_AS(sort_of(Term::apply("and", {p, i1}), env), SortError);

  auto u = Term::variable("u", Sort::bitvec(4));
  auto v = Term::variable("v", Sort::bitvec(4));
  CHECK(sort_of(Term::apply("bvadd", {u, v}), env) == Sort::bitvec(4));
  // width mismatch across operands
  auto w8 = Term::constant(Value::bitvec_of(8, 3));
  CHECK_THROWS_AS(sort_of(Term::apply("bvadd", {u, w8}), env), SortError);
  // no Int multiplication in the table
  CHECK_THROWS_AS(sort_of(Term::apply("*", {x, x}), env), SortError);
}

TEST_CASE("bitvector literals parse in binary and hex") {
  Benchmark b = parse_benchmark(
      "(set-logic BV)(synth-fun f ((x (_ BitVec 8))) (_ BitVec 8))"
      "(declare-var a (_ BitVec 8))"
      "(constraint (= (f a) (bvor a #b00001111)))"
      "(constraint (= (f a) (bvor a #x0f)))(check-synth)");
  const TermPtr &c0 = b.constraints[0]->args()[1]->args()[1];
  const TermPtr &c1 = b.constraints[1]->args()[1]->args()[1];
  REQUIRE(c0->kind() == Term::Kind::Constant);
  CHECK(c0->value().bits == 0x0f);
  CHECK(c0->value().sort == Sort::bitvec(8));
  CHECK(c1->value().bits == 0x0f);
}

TEST_CASE("grammar-injected emission prints the expected synth-fun") {
  Benchmark b = parse_benchmark(kIdentity);
  Grammar g;
  g.nonterminals.push_back({"S", Sort::integer()});
  g.rules.push_back({Term::variable("x", Sort::integer()),
                     Term::constant(Value::integer_of(0)),
                     Term::constant(Value::integer_of(1))});
  std::string text = emit_benchmark_with_grammar(b, g);
  CHECK(text.find("(synth-fun id ((x Int)) Int ((S Int)) ((S Int (x 0 1))))") !=
        std::string::npos);

  Benchmark back = parse_benchmark(text);
  CHECK(back.constraints.size() == b.constraints.size());
  REQUIRE(back.provided_grammar.has_value());
  CHECK(back.provided_grammar->nonterminals.size() == 1);
  CHECK(back.provided_grammar->rules[0].size() == 3);
}

TEST_CASE("emitted non-terminal list preserves order, start first") {
  Grammar g;
  g.nonterminals.push_back({"Start", Sort::integer()});
  g.nonterminals.push_back({"A", Sort::integer()});
  auto sref = Term::variable("Start", Sort::integer());
  auto aref = Term::variable("A", Sort::integer());
  g.rules.push_back({Term::apply("+", {aref, sref}),
                     Term::variable("x", Sort::integer())});
  g.rules.push_back({Term::constant(Value::integer_of(0))});
  Benchmark b = parse_benchmark(kIdentity);
  std::string text = emit_benchmark_with_grammar(b, g);
  auto start_at = text.find("(Start Int");
  auto a_at = text.find("(A Int");
  REQUIRE(start_at != std::string::npos);
  REQUIRE(a_at != std::string::npos);
  CHECK(start_at < a_at);
  Benchmark back = parse_benchmark(text);
  CHECK(back.provided_grammar->nonterminals[0].name == "Start");
  CHECK(back.provided_grammar->nonterminals[1].name == "A");
}

TEST_CASE("solution output maps solver parameter names positionally") {
  Benchmark b = parse_benchmark(
      "(set-logic LIA)(synth-fun f ((a Int) (b Int)) Int)"
      "(declare-var x Int)(constraint (= (f x x) (+ x x)))(check-synth)");
  TermPtr body = parse_solution_output(
      "unsat\n(define-fun f ((p Int) (q Int)) Int (+ p q))\n", b);
  CHECK(body->str() == "(+ a b)");

  // arity mismatch against the synth-fun signature
  CHECK_THROWS_AS(
      parse_solution_output("(define-fun f ((p Int)) Int p)", b), SortError);
  // ill-sorted body
  CHECK_THROWS_AS(parse_solution_output(
                      "(define-fun f ((p Int) (q Int)) Int (and p q))", b),
                  SortError);
  // no define-fun at all
  CHECK_THROWS_AS(parse_solution_output("infeasible\n", b), ParseError);
}

TEST_CASE("corpus files parse and admit a printer fixpoint") {
  for (const char *name : {"/benchmarks/lia_max2.sl", "/benchmarks/bv_avg.sl"}) {
    Benchmark b = parse_benchmark_file(std::string(MGS_SOURCE_DIR) + name);
    std::string once = print_benchmark(b);
    CHECK(print_benchmark(parse_benchmark(once)) == once);
  }
  CHECK_THROWS_AS(parse_benchmark_file("/nonexistent/path.sl"), ConfigError);
}

TEST_CASE("unsupported logic is rejected at parse time") {
  CHECK_THROWS_WITH_AS(parse_benchmark("(set-logic NIA)(synth-fun f () Int)"
                                       "(check-synth)"),
                       doctest::Contains("NIA"), ParseError);
}
