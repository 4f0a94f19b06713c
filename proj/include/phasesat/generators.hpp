// Formula generators for corpora and tests.
#pragma once

#include <cstdint>

#include "phasesat/core.hpp"

namespace phasesat {

/// Uniform random k-CNF: each clause picks k distinct variables and random
/// signs. Deterministic for a given seed.
Formula randomKCnf(std::uint32_t variables, std::uint32_t clauses, std::uint32_t k, std::uint64_t seed);

/// Pigeonhole PHP(pigeons, holes): variable p*holes+h means pigeon p sits in
/// hole h. Unsatisfiable iff pigeons > holes.
Formula pigeonhole(std::uint32_t pigeons, std::uint32_t holes);

/// `fillers` unconstrained variables followed by PHP(holes+1, holes) whose
/// every clause is weakened by the positive first filler. Initial branching
/// order puts the weakening variable at level 1 and the remaining fillers
/// above it, so refuting the core under it forces a long backjump.
Formula deepCoreInstance(std::uint32_t fillers, std::uint32_t holes);

}  // namespace phasesat
