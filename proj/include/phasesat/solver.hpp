// CDCL search: two-watched-literal propagation, first-UIP learning, EVSIDS
// branching, restarts and learnt clause reduction. Backtrack targets come
// from the T/C policy and decision polarities from PhaseSelector.
#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "phasesat/backtrack.hpp"
#include "phasesat/core.hpp"
#include "phasesat/phase.hpp"
#include "phasesat/vsids.hpp"

namespace phasesat {

struct ConflictAnalysisResult {
  std::vector<Lit> learntClause;  // [0] asserting literal, [1] highest remaining level
  int analysisBacktrackLevel = 0;
  std::uint32_t lbd = 1;
  int conflictLevel = 0;
};

/// Observer for every decision: variable, chosen polarity, whether the solver
/// was in CB-state when the polarity was chosen.
using DecisionObserver = std::function<void(Var, bool phase, bool inCbState)>;

class Solver {
 public:
  explicit Solver(SolverConfig cfg = {});

  /// Installs the formula. Returns false when it is trivially unsatisfiable
  /// (empty clause or contradictory units); solve() then reports Unsat.
  bool load(const Formula& f);

  SolveResult solve();

  // -- Search steps. solve() composes these; they are public so individual
  //    mechanics can be driven directly.

  /// Opens a new decision level and assigns `l` there.
  void decide(Lit l);
  /// Unit propagation to fixpoint; returns the first conflicting clause.
  std::optional<ClauseRef> propagate();
  /// First-UIP analysis of a clause falsified by the trail. The conflict
  /// level is the highest level in the clause and must be > 0.
  ConflictAnalysisResult analyzeConflict(ClauseRef conflict);
  /// Removes the chosen variable from the order heap.
  std::optional<Var> pickBranchVariable();
  /// Trail removal above `level`; fires the phase erase hook for each entry
  /// and returns variables to the order heap. `kind` updates the CB/NCB-state
  /// when given.
  void backtrackTo(int level, std::optional<BacktrackKind> kind = std::nullopt);
  /// Stores and watches a learnt clause (size >= 2). Positions 0 and 1 are
  /// watched.
  ClauseRef addLearntClause(std::vector<Lit> lits, std::uint32_t lbd);
  void reduceClauseDb();
  bool shouldRestart() const;
  /// Backtracks to level 0 without touching CB/NCB-state or saved phases.
  void restart();

  void bumpVariable(Var v) { vsids_.bump(v); }
  void decayVariableActivities() { vsids_.decay(); }
  void rescaleVariableActivities() { vsids_.rescale(); }

  // -- Inspection.
  const SolverConfig& config() const { return cfg_; }
  const Trail& trail() const { return trail_; }
  const SolverMode& mode() const { return mode_; }
  const SolverStats& stats() const { return stats_; }
  PhaseSelector& phases() { return phases_; }
  const PhaseSelector& phases() const { return phases_; }
  VsidsState& vsids() { return vsids_; }
  std::uint32_t numVars() const { return numVars_; }

  std::span<const Lit> clauseLiterals(ClauseRef r) const { return clauses_[r].lits; }
  bool isLearnt(ClauseRef r) const { return clauses_[r].learnt; }
  bool isDeleted(ClauseRef r) const { return clauses_[r].deleted; }
  std::uint32_t lbd(ClauseRef r) const { return clauses_[r].lbd; }
  std::span<const ClauseRef> learntClauses() const { return learnts_; }
  /// The clause is the recorded reason of a current assignment.
  bool isLocked(ClauseRef r) const;

  /// Full scan: every live clause is watched at positions 0 and 1, and a false
  /// watched literal is covered by a true literal at no higher level unless
  /// the clause is unit or conflicting.
  bool watchInvariantHolds() const;

  void setDecisionObserver(DecisionObserver obs) { observer_ = std::move(obs); }
  /// Full invariant scans after every propagation fixpoint and backtrack;
  /// violations throw std::logic_error.
  void setDebugChecks(bool on) { debugChecks_ = on; }

 private:
  struct StoredClause {
    std::vector<Lit> lits;
    double activity = 0.0;
    std::uint32_t lbd = 0;
    bool learnt = false;
    bool deleted = false;
  };
  struct Watcher {
    ClauseRef cref;
    Lit blocker;
  };

  ClauseRef storeClause(std::vector<Lit> lits, bool learnt, std::uint32_t lbd);
  void attach(ClauseRef r);
  void detachWatch(Lit watched, ClauseRef r);
  void rebuildWatches();
  /// Moves the two highest-level literals of a conflict clause to the watched
  /// positions; returns the conflict level.
  int orderConflictClause(ClauseRef r);
  void bumpClause(StoredClause& c);
  void recordLbd(std::uint32_t lbd);
  bool deadlinePassed();
  void checkInvariantsOrThrow(const char* where) const;
  SolveResult finish(Verdict v);

  SolverConfig cfg_;
  std::uint32_t numVars_ = 0;
  Formula original_;
  bool ok_ = true;

  std::vector<StoredClause> clauses_;
  std::vector<ClauseRef> freeSlots_;
  std::vector<ClauseRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;     // long clauses, by code of the falsifying literal
  std::vector<std::vector<Watcher>> binWatches_;  // binary clauses, blocker = other literal

  Trail trail_;
  VsidsState vsids_;
  PhaseSelector phases_;
  SolverMode mode_;
  SolverStats stats_;

  std::vector<char> seen_;
  std::vector<std::uint64_t> levelStamp_;
  std::uint64_t stampCounter_ = 0;

  double clauseInc_ = 1.0;
  std::uint64_t reduceLimit_ = 0;

  std::uint64_t restartIndex_ = 1;
  std::uint64_t conflictsSinceRestart_ = 0;
  std::deque<std::uint32_t> recentLbd_;
  double recentLbdSum_ = 0.0;
  double totalLbdSum_ = 0.0;

  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t propagationsSinceCheck_ = 0;

  DecisionObserver observer_;
  bool debugChecks_ = false;
};

/// Fresh solver, load, solve.
SolveResult solve(const Formula& f, const SolverConfig& cfg = {});

}  // namespace phasesat
