// Chronological / non-chronological backtracking policy and the level-aware
// trail it operates on.
#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "phasesat/core.hpp"

namespace phasesat {

using ClauseRef = std::uint32_t;
inline constexpr ClauseRef kNoClause = std::numeric_limits<ClauseRef>::max();

enum class BacktrackKind : std::uint8_t { Chronological, NonChronological };

struct BacktrackDecision {
  int targetLevel = 0;
  BacktrackKind kind = BacktrackKind::NonChronological;

  bool operator==(const BacktrackDecision&) const = default;
};

/// CB-state means the most recent conflict backtrack was chronological.
struct SolverMode {
  BacktrackKind lastBacktrackKind = BacktrackKind::NonChronological;
  std::uint64_t totalConflicts = 0;

  bool inCbState() const { return lastBacktrackKind == BacktrackKind::Chronological; }
};

/// The T/C rule. `currentLevel` is the level of the conflict, `analysisLevel`
/// the asserting level of the learnt clause, `conflicts` the global conflict
/// count so far.
///
///   conflicts < C                   -> non-chronological
///   currentLevel - analysisLevel > T -> chronological to currentLevel - 1
///   otherwise                        -> non-chronological
BacktrackDecision chooseBacktrackLevel(int currentLevel, int analysisLevel, std::uint64_t conflicts,
                                       const SolverConfig& cfg);

struct TrailEntry {
  Lit literal;
  int level = 0;
  ClauseRef reason = kNoClause;
};

/// The ordered partial assignment. Levels along the trail need not be
/// monotonic: chronological backtracking can leave lower-level implications
/// above higher-level decisions.
class Trail {
 public:
  void resize(std::uint32_t numVars) {
    value_.resize(2 * static_cast<std::size_t>(numVars), LBool::Undef);
    level_.resize(numVars, 0);
    reason_.resize(numVars, kNoClause);
  }
  std::uint32_t numVars() const { return static_cast<std::uint32_t>(level_.size()); }

  LBool value(Lit l) const { return value_[l.code()]; }
  LBool value(Var v) const { return value_[Lit(v, true).code()]; }
  bool assigned(Var v) const { return value(v) != LBool::Undef; }
  int level(Var v) const { return level_[v.index]; }
  ClauseRef reason(Var v) const { return reason_[v.index]; }

  int decisionLevel() const { return static_cast<int>(levelStart_.size()); }
  std::size_t size() const { return lits_.size(); }
  Lit operator[](std::size_t i) const { return lits_[i]; }
  std::span<const Lit> literals() const { return lits_; }
  TrailEntry entry(std::size_t i) const {
    const Lit l = lits_[i];
    return {l, level_[l.var().index], reason_[l.var().index]};
  }
  /// Position where decision level `level` (>= 1) began.
  std::size_t levelStart(int level) const { return levelStart_[static_cast<std::size_t>(level - 1)]; }

  void newDecisionLevel() { levelStart_.push_back(lits_.size()); }

  void assign(Lit l, int level, ClauseRef reason) {
    assert(value(l) == LBool::Undef);
    value_[l.code()] = LBool::True;
    value_[(~l).code()] = LBool::False;
    level_[l.var().index] = level;
    reason_[l.var().index] = reason;
    lits_.push_back(l);
  }

  bool hasPending() const { return qhead_ < lits_.size(); }
  Lit nextPending() { return lits_[qhead_++]; }
  void skipPending() { qhead_ = lits_.size(); }

  /// Removes exactly the entries with level > target, wherever they sit on the
  /// trail; survivors keep their relative order. `onErased(var, polarity)`
  /// fires once per removed entry, most recent first. Surviving entries placed
  /// after the start of level target+1 are queued for propagation again.
  template <class OnErased>
  void backtrackTo(int target, OnErased&& onErased) {
    if (target >= decisionLevel()) return;
    const std::size_t start = levelStart_[static_cast<std::size_t>(target)];
    kept_.clear();
    for (std::size_t i = lits_.size(); i-- > start;) {
      const Lit l = lits_[i];
      const Var v = l.var();
      if (level_[v.index] <= target) {
        kept_.push_back(l);
        continue;
      }
      value_[l.code()] = LBool::Undef;
      value_[(~l).code()] = LBool::Undef;
      reason_[v.index] = kNoClause;
      onErased(v, l.positive());
    }
    lits_.resize(start);
    for (std::size_t i = kept_.size(); i-- > 0;) lits_.push_back(kept_[i]);
    levelStart_.resize(static_cast<std::size_t>(target));
    qhead_ = std::min(qhead_, start);
  }

  /// Highest level of any entry currently on the trail.
  int maxLevelOnTrail() const;

 private:
  std::vector<Lit> lits_;
  std::vector<LBool> value_;  // indexed by literal code
  std::vector<int> level_;
  std::vector<ClauseRef> reason_;
  std::vector<std::size_t> levelStart_;
  std::vector<Lit> kept_;
  std::size_t qhead_ = 0;
};

}  // namespace phasesat
