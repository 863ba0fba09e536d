#ifndef MGS_CORE_SYGUS_PRINTER_HPP
#define MGS_CORE_SYGUS_PRINTER_HPP

#include <string>

#include "benchmark.hpp"

namespace mgs {

// Canonical printing: one command per line, single spaces, commands ordered
// set-logic, synth-fun, declare-var*, define-fun*, constraint*, check-synth.
// print_benchmark(parse_benchmark(text)) is a fixpoint of parse/print.
std::string print_benchmark(const Benchmark &b);

// Prints the benchmark with `g` attached to the synth-fun, replacing any
// grammar the benchmark already carries. This is the form handed to external
// solvers. Every non-terminal must have at least one rule; prune first.
std::string emit_benchmark_with_grammar(const Benchmark &b, const Grammar &g);

// One define-fun command for a solved synth-fun.
std::string print_solution(const SynthFun &f, const TermPtr &body);

} // namespace mgs

#endif
