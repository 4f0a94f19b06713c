#include "phasesat/dimacs.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace phasesat {

namespace {

bool isSpace(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

std::vector<std::string_view> splitTokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && isSpace(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !isSpace(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parseInt(std::string_view tok, std::int64_t& value) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

ParsedFormula parseDimacs(std::istream& in, ParseOptions options) {
  ParsedFormula out;
  auto& diag = out.diagnostics;
  bool haveHeader = false;
  std::uint32_t nVars = 0;
  std::vector<Lit> pending;
  std::size_t pendingStartLine = 0;
  std::size_t lineNo = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++lineNo;
    std::string_view view(line);
    std::size_t first = 0;
    while (first < view.size() && isSpace(view[first])) ++first;
    view.remove_prefix(first);
    if (view.empty() || view.front() == 'c') continue;
    if (view.front() == '%') break;

    if (view.front() == 'p') {
      if (haveHeader) throw DimacsError(lineNo, "duplicate problem header");
      auto toks = splitTokens(view);
      std::int64_t v = 0, c = 0;
      if (toks.size() != 4 || toks[0] != "p" || toks[1] != "cnf" || !parseInt(toks[2], v) ||
          !parseInt(toks[3], c) || v < 0 || c < 0 || v > std::numeric_limits<std::uint32_t>::max() / 2) {
        throw DimacsError(lineNo, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      haveHeader = true;
      nVars = static_cast<std::uint32_t>(v);
      diag.declaredClauseCount = static_cast<std::size_t>(c);
      out.formula = Formula(nVars);
      continue;
    }

    if (!haveHeader) throw DimacsError(lineNo, "clause data before 'p cnf' header");

    for (std::string_view tok : splitTokens(view)) {
      std::int64_t k = 0;
      if (!parseInt(tok, k)) throw DimacsError(lineNo, "non-integer token '" + std::string(tok) + "'");
      if (k == 0) {
        ++diag.actualClauseCount;
        auto clause = Clause::make(std::move(pending));
        if (clause) {
          out.formula.addClause(std::move(*clause));
        } else {
          diag.warnings.push_back({pendingStartLine ? pendingStartLine : lineNo, "tautological clause dropped"});
        }
        pending.clear();
        pendingStartLine = 0;
        continue;
      }
      if (static_cast<std::uint64_t>(std::llabs(k)) > nVars) {
        throw DimacsError(lineNo, "literal " + std::string(tok) + " exceeds declared variable count " +
                                      std::to_string(nVars));
      }
      if (pending.empty()) pendingStartLine = lineNo;
      pending.push_back(Lit::fromDimacs(k));
    }
  }

  if (!haveHeader) throw DimacsError(lineNo, "missing 'p cnf' header");
  if (!pending.empty()) throw DimacsError(lineNo, "missing terminating 0 at end of input");
  if (diag.declaredClauseCount != diag.actualClauseCount) {
    std::string msg = "header declares " + std::to_string(diag.declaredClauseCount) + " clauses, found " +
                      std::to_string(diag.actualClauseCount);
    if (options.strict) throw DimacsError(lineNo, msg);
    diag.warnings.push_back({lineNo, std::move(msg)});
  }
  return out;
}

ParsedFormula parseDimacs(std::string_view text, ParseOptions options) {
  std::istringstream in{std::string(text)};
  return parseDimacs(in, options);
}

ParsedFormula readDimacsFile(const std::filesystem::path& path, ParseOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parseDimacs(in, options);
}

std::string writeDimacs(const Formula& f) {
  std::string out = "p cnf " + std::to_string(f.variableCount()) + " " + std::to_string(f.clauses().size()) + "\n";
  for (const Clause& c : f.clauses()) {
    for (Lit l : c.literals()) {
      out += std::to_string(l.toDimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

std::string renderResult(const SolveResult& r) {
  switch (r.verdict) {
    case Verdict::Unsat: return "s UNSATISFIABLE\n";
    case Verdict::Unknown: return "s UNKNOWN\n";
    case Verdict::Sat: break;
  }
  constexpr std::size_t kMaxLine = 4096;
  std::string out = "s SATISFIABLE\n";
  std::string line = "v";
  auto append = [&](const std::string& tok) {
    if (line.size() + 1 + tok.size() > kMaxLine) {
      out += line;
      out += '\n';
      line = "v";
    }
    line += ' ';
    line += tok;
  };
  for (std::size_t i = 0; i < r.model.size(); ++i) {
    const auto k = static_cast<std::int64_t>(i) + 1;
    append(std::to_string(r.model[i] ? k : -k));
  }
  append("0");
  out += line;
  out += '\n';
  return out;
}

int exitCodeFor(Verdict v) {
  switch (v) {
    case Verdict::Sat: return 10;
    case Verdict::Unsat: return 20;
    case Verdict::Unknown: return 0;
  }
  return 0;
}

std::vector<bool> parseModel(std::string_view text, std::uint32_t variableCount,
                             std::vector<std::uint32_t>* missing) {
  std::vector<bool> model(variableCount, false);
  std::vector<bool> seen(variableCount, false);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    auto toks = splitTokens(line);
    if (toks.empty()) continue;
    std::size_t start = 0;
    if (toks[0] == "s" || toks[0] == "c" || toks[0].front() == 'c') continue;
    if (toks[0] == "v") start = 1;
    for (std::size_t i = start; i < toks.size(); ++i) {
      std::int64_t k = 0;
      if (!parseInt(toks[i], k)) throw DimacsError(lineNo, "non-integer model token '" + std::string(toks[i]) + "'");
      if (k == 0) continue;
      const auto idx = static_cast<std::uint64_t>(std::llabs(k)) - 1;
      if (idx >= variableCount) throw DimacsError(lineNo, "model literal " + std::string(toks[i]) + " out of range");
      model[idx] = k > 0;
      seen[idx] = true;
    }
  }
  if (missing) {
    missing->clear();
    for (std::uint32_t v = 0; v < variableCount; ++v)
      if (!seen[v]) missing->push_back(v);
  }
  return model;
}

}  // namespace phasesat
