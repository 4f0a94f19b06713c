// Independent correctness oracles: model checking and exhaustive search.
#pragma once

#include <cstdint>
#include <vector>

#include "phasesat/core.hpp"

namespace phasesat {

inline constexpr std::uint32_t kBruteForceMaxVars = 26;

/// True iff every clause has a literal true under `model`. Throws
/// std::invalid_argument when model.size() != f.variableCount().
bool checkModel(const Formula& f, const std::vector<bool>& model);

/// Enumerates assignments in lexicographic order (variable 0 most
/// significant, false before true) and returns the first model found.
/// Throws std::invalid_argument above kBruteForceMaxVars variables.
SolveResult bruteForceSolve(const Formula& f);

}  // namespace phasesat
