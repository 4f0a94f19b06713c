#include "phasesat/backtrack.hpp"

#include <algorithm>

namespace phasesat {

BacktrackDecision chooseBacktrackLevel(int currentLevel, int analysisLevel, std::uint64_t conflicts,
                                       const SolverConfig& cfg) {
  assert(analysisLevel < currentLevel && currentLevel >= 1);
  if (conflicts < cfg.cbMinConflictsC) return {analysisLevel, BacktrackKind::NonChronological};
  const auto gap = static_cast<std::int64_t>(currentLevel) - analysisLevel;
  if (gap > static_cast<std::int64_t>(cfg.cbThresholdT)) return {currentLevel - 1, BacktrackKind::Chronological};
  return {analysisLevel, BacktrackKind::NonChronological};
}

int Trail::maxLevelOnTrail() const {
  int m = 0;
  for (Lit l : lits_) m = std::max(m, level_[l.var().index]);
  return m;
}

}  // namespace phasesat
