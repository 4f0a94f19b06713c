#include "phasesat/generators.hpp"

#include <random>
#include <stdexcept>

namespace phasesat {

Formula randomKCnf(std::uint32_t variables, std::uint32_t clauses, std::uint32_t k, std::uint64_t seed) {
  if (k == 0 || k > variables) throw std::invalid_argument("clause width must be in [1, variables]");
  std::mt19937_64 rng(seed);
  Formula f(variables);
  std::vector<Lit> lits;
  while (f.clauses().size() < clauses) {
    lits.clear();
    while (lits.size() < k) {
      const Var v{static_cast<std::uint32_t>(rng() % variables)};
      bool dup = false;
      for (Lit l : lits) dup = dup || l.var() == v;
      if (!dup) lits.emplace_back(v, (rng() >> 63) != 0);
    }
    f.addClause(lits);
  }
  return f;
}

Formula pigeonhole(std::uint32_t pigeons, std::uint32_t holes) {
  Formula f(pigeons * holes);
  auto x = [holes](std::uint32_t p, std::uint32_t h) { return Var{p * holes + h}; };
  for (std::uint32_t p = 0; p < pigeons; ++p) {
    std::vector<Lit> some;
    for (std::uint32_t h = 0; h < holes; ++h) some.emplace_back(x(p, h), true);
    f.addClause(some);
  }
  for (std::uint32_t h = 0; h < holes; ++h)
    for (std::uint32_t p = 0; p < pigeons; ++p)
      for (std::uint32_t q = p + 1; q < pigeons; ++q)
        f.addClause({Lit(x(p, h), false), Lit(x(q, h), false)});
  return f;
}

Formula deepCoreInstance(std::uint32_t fillers, std::uint32_t holes) {
  if (fillers == 0) throw std::invalid_argument("need at least one filler variable");
  const Formula core = pigeonhole(holes + 1, holes);
  Formula f(fillers + core.variableCount());
  const Lit guard(Var{0}, true);
  for (const Clause& c : core.clauses()) {
    std::vector<Lit> lits{guard};
    for (Lit l : c.literals()) lits.emplace_back(Var{l.var().index + fillers}, l.positive());
    f.addClause(lits);
  }
  return f;
}

}  // namespace phasesat
