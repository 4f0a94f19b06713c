// DIMACS CNF reading/writing and SAT-competition result rendering.
#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phasesat/core.hpp"

namespace phasesat {

class DimacsError : public std::runtime_error {
 public:
  DimacsError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParseWarning {
  std::size_t line;
  std::string message;
};

struct ParseDiagnostics {
  std::vector<ParseWarning> warnings;
  std::size_t declaredClauseCount = 0;
  std::size_t actualClauseCount = 0;  // clauses read, including dropped tautologies
};

struct ParseOptions {
  bool strict = false;  // header/clause count mismatch becomes an error
};

struct ParsedFormula {
  Formula formula;
  ParseDiagnostics diagnostics;
};

/// Throws DimacsError on malformed input. A line starting with '%' ends the
/// clause section (SATLIB convention).
ParsedFormula parseDimacs(std::istream& in, ParseOptions options = {});
ParsedFormula parseDimacs(std::string_view text, ParseOptions options = {});
/// Throws std::runtime_error if the file cannot be opened.
ParsedFormula readDimacsFile(const std::filesystem::path& path, ParseOptions options = {});

std::string writeDimacs(const Formula& f);

/// "s SATISFIABLE" + v-lines, "s UNSATISFIABLE" or "s UNKNOWN".
std::string renderResult(const SolveResult& r);

/// SAT-competition exit code: 10 sat, 20 unsat, 0 unknown.
int exitCodeFor(Verdict v);

/// Reads a model from "v"-lines (or bare integers); "s" and "c" lines are
/// skipped. Values are stored by variable; unmentioned variables are reported
/// through `missing`. Throws DimacsError on a malformed token.
std::vector<bool> parseModel(std::string_view text, std::uint32_t variableCount,
                             std::vector<std::uint32_t>* missing = nullptr);

}  // namespace phasesat
