#ifndef MGS_CORE_SYGUS_PARSER_HPP
#define MGS_CORE_SYGUS_PARSER_HPP

#include <string>

#include "benchmark.hpp"

namespace mgs {

// Parses the supported SyGuS-IF v2.1 subset: set-logic, synth-fun (with an
// optional grammar), declare-var, define-fun, constraint, check-synth.
// Throws ParseError for syntax problems (with line/column) and SortError for
// well-formed input that does not sort-check.
Benchmark parse_benchmark(const std::string &text,
                          const std::string &source_id = "<memory>");

// Reads and parses a .sl file. Throws ConfigError if the file cannot be read.
Benchmark parse_benchmark_file(const std::string &path);

// Extracts the synthesized body from solver output containing a define-fun
// for b's synth-fun (leading status atoms such as "unsat" are skipped). The
// solver's parameter names are mapped positionally onto b's, the signature
// must match b's synth-fun, and the renamed body must sort-check. Throws
// ParseError/SortError on anything else.
TermPtr parse_solution_output(const std::string &text, const Benchmark &b);

} // namespace mgs

#endif
