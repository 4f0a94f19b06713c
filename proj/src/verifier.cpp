#include "phasesat/verifier.hpp"

#include <stdexcept>
#include <string>

namespace phasesat {

bool checkModel(const Formula& f, const std::vector<bool>& model) {
  if (model.size() != f.variableCount()) {
    throw std::invalid_argument("model has " + std::to_string(model.size()) + " entries, formula has " +
                                std::to_string(f.variableCount()) + " variables");
  }
  for (const Clause& c : f.clauses()) {
    bool sat = false;
    for (Lit l : c.literals()) {
      if (model[l.var().index] == l.positive()) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

SolveResult bruteForceSolve(const Formula& f) {
  const std::uint32_t n = f.variableCount();
  if (n > kBruteForceMaxVars) {
    throw std::invalid_argument("brute force limited to " + std::to_string(kBruteForceMaxVars) + " variables, got " +
                                std::to_string(n));
  }
  // Variable i lives at bit (n-1-i) so that counting upward is lexicographic.
  struct Masks {
    std::uint32_t pos = 0, neg = 0;
  };
  std::vector<Masks> masks;
  masks.reserve(f.clauses().size());
  for (const Clause& c : f.clauses()) {
    Masks m;
    for (Lit l : c.literals()) {
      const std::uint32_t bit = 1u << (n - 1 - l.var().index);
      (l.positive() ? m.pos : m.neg) |= bit;
    }
    masks.push_back(m);
  }

  SolveResult out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < total; ++a) {
    const auto bits = static_cast<std::uint32_t>(a);
    bool all = true;
    for (const Masks& m : masks) {
      if (((bits & m.pos) | (~bits & m.neg)) == 0) {
        all = false;
        break;
      }
    }
    if (all) {
      out.verdict = Verdict::Sat;
      out.model.resize(n);
      for (std::uint32_t i = 0; i < n; ++i) out.model[i] = ((bits >> (n - 1 - i)) & 1u) != 0;
      return out;
    }
  }
  out.verdict = Verdict::Unsat;
  return out;
}

}  // namespace phasesat
