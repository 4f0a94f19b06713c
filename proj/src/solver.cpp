#include "phasesat/solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "phasesat/verifier.hpp"

namespace phasesat {

namespace {

constexpr double kClauseDecay = 0.999;
constexpr double kClauseRescaleLimit = 1e20;
constexpr std::uint64_t kDeadlineCheckInterval = 1u << 12;

}  // namespace

Solver::Solver(SolverConfig cfg) : cfg_(std::move(cfg)), vsids_(cfg_.varDecay) {
  cfg_.validate();
  phases_ = PhaseSelector(0, cfg_);
  reduceLimit_ = cfg_.clauseDbPolicy.firstLimit;
}

bool Solver::load(const Formula& f) {
  original_ = f;
  numVars_ = f.variableCount();
  trail_.resize(numVars_);
  vsids_.resize(numVars_);
  phases_.resize(numVars_);
  seen_.assign(numVars_, 0);
  levelStamp_.assign(numVars_ + 1, 0);
  watches_.assign(2 * static_cast<std::size_t>(numVars_), {});
  binWatches_.assign(2 * static_cast<std::size_t>(numVars_), {});

  for (const Clause& c : f.clauses()) {
    if (!ok_) break;
    const auto lits = c.literals();
    if (lits.empty()) {
      ok_ = false;
    } else if (lits.size() == 1) {
      const LBool v = trail_.value(lits[0]);
      if (v == LBool::False) ok_ = false;
      else if (v == LBool::Undef) trail_.assign(lits[0], 0, kNoClause);
    } else {
      attach(storeClause({lits.begin(), lits.end()}, false, 0));
    }
  }
  return ok_;
}

ClauseRef Solver::storeClause(std::vector<Lit> lits, bool learnt, std::uint32_t lbd) {
  StoredClause c{std::move(lits), 0.0, lbd, learnt, false};
  ClauseRef r;
  if (!freeSlots_.empty()) {
    r = freeSlots_.back();
    freeSlots_.pop_back();
    clauses_[r] = std::move(c);
  } else {
    r = static_cast<ClauseRef>(clauses_.size());
    clauses_.push_back(std::move(c));
  }
  if (learnt) learnts_.push_back(r);
  return r;
}

void Solver::attach(ClauseRef r) {
  const auto& lits = clauses_[r].lits;
  assert(lits.size() >= 2);
  auto& lists = lits.size() == 2 ? binWatches_ : watches_;
  lists[(~lits[0]).code()].push_back({r, lits[1]});
  lists[(~lits[1]).code()].push_back({r, lits[0]});
}

void Solver::detachWatch(Lit watched, ClauseRef r) {
  auto& ws = watches_[(~watched).code()];
  auto it = std::find_if(ws.begin(), ws.end(), [r](const Watcher& w) { return w.cref == r; });
  assert(it != ws.end());
  ws.erase(it);
}

void Solver::rebuildWatches() {
  for (auto& ws : watches_) ws.clear();
  for (auto& ws : binWatches_) ws.clear();
  for (ClauseRef r = 0; r < clauses_.size(); ++r)
    if (!clauses_[r].deleted && clauses_[r].lits.size() >= 2) attach(r);
}

ClauseRef Solver::addLearntClause(std::vector<Lit> lits, std::uint32_t lbd) {
  const ClauseRef r = storeClause(std::move(lits), true, std::max<std::uint32_t>(lbd, 1));
  attach(r);
  bumpClause(clauses_[r]);
  return r;
}

void Solver::decide(Lit l) {
  trail_.newDecisionLevel();
  trail_.assign(l, trail_.decisionLevel(), kNoClause);
}

std::optional<ClauseRef> Solver::propagate() {
  while (trail_.hasPending()) {
    const Lit p = trail_.nextPending();
    const int pLevel = trail_.level(p.var());
    ++stats_.propagations;
    ++propagationsSinceCheck_;

    for (const Watcher& w : binWatches_[p.code()]) {
      const LBool v = trail_.value(w.blocker);
      if (v == LBool::False) {
        trail_.skipPending();
        return w.cref;
      }
      if (v == LBool::Undef) trail_.assign(w.blocker, pLevel, w.cref);
    }

    auto& ws = watches_[p.code()];
    const Lit falseLit = ~p;
    std::size_t i = 0, j = 0;
    const std::size_t end = ws.size();
    while (i < end) {
      // A true literal only satisfies the clause for as long as the false
      // watch stays assigned if it sits at no higher level.
      const Lit blocker = ws[i].blocker;
      if (trail_.value(blocker) == LBool::True && trail_.level(blocker.var()) <= pLevel) {
        ws[j++] = ws[i++];
        continue;
      }
      const ClauseRef cr = ws[i].cref;
      auto& c = clauses_[cr].lits;
      if (c[0] == falseLit) std::swap(c[0], c[1]);
      assert(c[1] == falseLit);
      ++i;

      const Lit first = c[0];
      const Watcher w{cr, first};
      if (trail_.value(first) == LBool::True && trail_.level(first.var()) <= pLevel) {
        ws[j++] = w;
        continue;
      }

      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (trail_.value(c[k]) != LBool::False) {
          c[1] = c[k];
          c[k] = falseLit;
          watches_[(~c[1]).code()].push_back(w);
          moved = true;
          break;
        }
      }
      if (moved) continue;

      // Unit, conflicting, or satisfied only above the falsified literals.
      ws[j++] = w;
      if (trail_.value(first) == LBool::False) {
        while (i < end) ws[j++] = ws[i++];
        ws.resize(j);
        trail_.skipPending();
        return cr;
      }

      // The implied literal takes the highest level among the falsified
      // literals, and that literal is kept in the second watch position. A
      // first literal that is already true keeps its level.
      int implied = pLevel;
      if (pLevel != trail_.decisionLevel()) {
        std::size_t maxIdx = 1;
        for (std::size_t k = 2; k < c.size(); ++k) {
          const int lv = trail_.level(c[k].var());
          if (lv > implied) {
            implied = lv;
            maxIdx = k;
          }
        }
        if (maxIdx != 1) {
          std::swap(c[1], c[maxIdx]);
          --j;
          watches_[(~c[1]).code()].push_back(w);
        }
      }
      if (trail_.value(first) == LBool::Undef) trail_.assign(first, implied, cr);
    }
    ws.resize(j);
  }
  if (debugChecks_) checkInvariantsOrThrow("propagate");
  return std::nullopt;
}

int Solver::orderConflictClause(ClauseRef r) {
  auto& c = clauses_[r].lits;
  const bool binary = c.size() == 2;
  auto moveTo = [&](std::size_t pos, std::size_t from) {
    if (from == pos) return;
    if (!binary && from >= 2) {
      // c[pos] leaves the watched positions, c[from] enters.
      detachWatch(c[pos], r);
      watches_[(~c[from]).code()].push_back({r, c[pos == 0 ? 1 : 0]});
    }
    std::swap(c[pos], c[from]);
  };
  auto highestFrom = [&](std::size_t start) {
    std::size_t best = start;
    for (std::size_t k = start + 1; k < c.size(); ++k)
      if (trail_.level(c[k].var()) > trail_.level(c[best].var())) best = k;
    return best;
  };
  moveTo(0, highestFrom(0));
  moveTo(1, highestFrom(1));
  return trail_.level(c[0].var());
}

void Solver::bumpClause(StoredClause& c) {
  c.activity += clauseInc_;
  if (c.activity > kClauseRescaleLimit) {
    for (ClauseRef r : learnts_) clauses_[r].activity *= 1.0 / kClauseRescaleLimit;
    clauseInc_ *= 1.0 / kClauseRescaleLimit;
  }
}

ConflictAnalysisResult Solver::analyzeConflict(ClauseRef conflict) {
  ConflictAnalysisResult out;
  int conflictLevel = 0;
  for (Lit l : clauses_[conflict].lits) conflictLevel = std::max(conflictLevel, trail_.level(l.var()));
  assert(conflictLevel > 0);
  out.conflictLevel = conflictLevel;

  auto& learnt = out.learntClause;
  learnt.push_back(Lit{});  // asserting literal goes here
  std::vector<Var> toClear;

  int pathCount = 0;
  std::optional<Lit> p;
  std::size_t index = trail_.size();
  ClauseRef reason = conflict;

  do {
    assert(reason != kNoClause);
    StoredClause& c = clauses_[reason];
    if (c.learnt) bumpClause(c);
    for (Lit q : c.lits) {
      const Var v = q.var();
      if (p && v == p->var()) continue;
      if (seen_[v.index] || trail_.level(v) == 0) continue;
      vsids_.bump(v);
      seen_[v.index] = 1;
      toClear.push_back(v);
      if (trail_.level(v) >= conflictLevel) ++pathCount;
      else learnt.push_back(q);
    }
    // Next seen literal of the conflict level, walking the trail backwards.
    do {
      do {
        --index;
      } while (!seen_[trail_[index].var().index]);
    } while (trail_.level(trail_[index].var()) < conflictLevel);
    p = trail_[index];
    reason = trail_.reason(p->var());
    seen_[p->var().index] = 0;
    --pathCount;
  } while (pathCount > 0);
  learnt[0] = ~*p;

  // Local self-subsumption: drop a literal whose reason's other literals are
  // all already in the clause or fixed at level 0.
  std::size_t keep = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    const Var x = learnt[i].var();
    const ClauseRef r = trail_.reason(x);
    bool redundant = r != kNoClause;
    if (redundant) {
      for (Lit k : clauses_[r].lits) {
        const Var kv = k.var();
        if (kv == x) continue;
        if (!seen_[kv.index] && trail_.level(kv) > 0) {
          redundant = false;
          break;
        }
      }
    }
    if (!redundant) learnt[keep++] = learnt[i];
  }
  learnt.resize(keep);
  for (Var v : toClear) seen_[v.index] = 0;

  if (learnt.size() == 1) {
    out.analysisBacktrackLevel = 0;
  } else {
    std::size_t maxIdx = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i)
      if (trail_.level(learnt[i].var()) > trail_.level(learnt[maxIdx].var())) maxIdx = i;
    std::swap(learnt[1], learnt[maxIdx]);
    out.analysisBacktrackLevel = trail_.level(learnt[1].var());
  }

  ++stampCounter_;
  std::uint32_t lbd = 0;
  for (Lit l : learnt) {
    const int lv = trail_.level(l.var());
    if (levelStamp_[static_cast<std::size_t>(lv)] != stampCounter_) {
      levelStamp_[static_cast<std::size_t>(lv)] = stampCounter_;
      ++lbd;
    }
  }
  out.lbd = lbd;
  return out;
}

std::optional<Var> Solver::pickBranchVariable() {
  auto& heap = vsids_.heap();
  while (!heap.empty()) {
    const Var v = heap.removeTop();
    if (!trail_.assigned(v)) return v;
  }
  return std::nullopt;
}

void Solver::backtrackTo(int level, std::optional<BacktrackKind> kind) {
  trail_.backtrackTo(level, [this](Var v, bool polarity) {
    phases_.onAssignmentErased(v, polarity);
    vsids_.heap().insert(v);
  });
  if (kind) {
    mode_.lastBacktrackKind = *kind;
    if (*kind == BacktrackKind::Chronological) ++stats_.cbBacktracks;
    else ++stats_.ncbBacktracks;
  }
  if (debugChecks_ && trail_.maxLevelOnTrail() > level)
    throw std::logic_error("trail holds an entry above the backtrack level");
}

bool Solver::isLocked(ClauseRef r) const {
  const auto& c = clauses_[r];
  if (c.deleted) return false;
  const std::size_t n = std::min<std::size_t>(2, c.lits.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Lit l = c.lits[i];
    if (trail_.value(l) == LBool::True && trail_.reason(l.var()) == r) return true;
  }
  return false;
}

void Solver::reduceClauseDb() {
  std::vector<ClauseRef> candidates;
  std::vector<ClauseRef> kept;
  for (ClauseRef r : learnts_) {
    const auto& c = clauses_[r];
    if (c.lbd <= cfg_.clauseDbPolicy.keepLbd || isLocked(r)) kept.push_back(r);
    else candidates.push_back(r);
  }
  std::sort(candidates.begin(), candidates.end(), [this](ClauseRef a, ClauseRef b) {
    const auto& x = clauses_[a];
    const auto& y = clauses_[b];
    if (x.lbd != y.lbd) return x.lbd < y.lbd;
    if (x.activity != y.activity) return x.activity > y.activity;
    return a < b;
  });
  const std::size_t survivors = candidates.size() - candidates.size() / 2;
  for (std::size_t i = survivors; i < candidates.size(); ++i) {
    auto& c = clauses_[candidates[i]];
    c.deleted = true;
    c.lits.clear();
    c.lits.shrink_to_fit();
    freeSlots_.push_back(candidates[i]);
  }
  candidates.resize(survivors);
  kept.insert(kept.end(), candidates.begin(), candidates.end());
  std::sort(kept.begin(), kept.end());
  learnts_ = std::move(kept);
  rebuildWatches();
}

bool Solver::shouldRestart() const {
  const auto& rp = cfg_.restartPolicy;
  if (rp.kind == RestartKind::Luby) return conflictsSinceRestart_ >= rp.lubyBase * lubyTerm(restartIndex_);
  if (recentLbd_.size() < rp.glucoseWindow || stats_.conflicts == 0) return false;
  const double recent = recentLbdSum_ / static_cast<double>(recentLbd_.size());
  const double global = totalLbdSum_ / static_cast<double>(stats_.conflicts);
  return recent * rp.glucoseK > global;
}

void Solver::recordLbd(std::uint32_t lbd) {
  totalLbdSum_ += lbd;
  recentLbd_.push_back(lbd);
  recentLbdSum_ += lbd;
  if (recentLbd_.size() > cfg_.restartPolicy.glucoseWindow) {
    recentLbdSum_ -= recentLbd_.front();
    recentLbd_.pop_front();
  }
}

void Solver::restart() {
  backtrackTo(0);
  ++stats_.restarts;
  ++restartIndex_;
  conflictsSinceRestart_ = 0;
  recentLbd_.clear();
  recentLbdSum_ = 0.0;
}

bool Solver::deadlinePassed() {
  if (!deadline_ || propagationsSinceCheck_ < kDeadlineCheckInterval) return false;
  propagationsSinceCheck_ = 0;
  return std::chrono::steady_clock::now() >= *deadline_;
}

bool Solver::watchInvariantHolds() const {
  auto listed = [&](const std::vector<std::vector<Watcher>>& lists, Lit watched, ClauseRef r) {
    const auto& ws = lists[(~watched).code()];
    return std::any_of(ws.begin(), ws.end(), [r](const Watcher& w) { return w.cref == r; });
  };
  for (ClauseRef r = 0; r < clauses_.size(); ++r) {
    const auto& c = clauses_[r];
    if (c.deleted || c.lits.size() < 2) continue;
    const auto& lists = c.lits.size() == 2 ? binWatches_ : watches_;
    if (!listed(lists, c.lits[0], r) || !listed(lists, c.lits[1], r)) return false;
    for (std::size_t w = 0; w < 2; ++w) {
      const Lit watched = c.lits[w];
      if (trail_.value(watched) != LBool::False) continue;
      const int falseLevel = trail_.level(watched.var());
      const bool covered = std::any_of(c.lits.begin(), c.lits.end(), [&](Lit l) {
        return trail_.value(l) == LBool::True && trail_.level(l.var()) <= falseLevel;
      });
      if (covered) continue;
      // Otherwise the clause must be unit or conflicting: everything but the
      // other watch is false.
      for (std::size_t k = 0; k < c.lits.size(); ++k)
        if (k != 1 - w && trail_.value(c.lits[k]) != LBool::False) return false;
    }
  }
  return true;
}

void Solver::checkInvariantsOrThrow(const char* where) const {
  if (!watchInvariantHolds()) throw std::logic_error(std::string("watched-literal invariant violated after ") + where);
}

SolveResult Solver::finish(Verdict v) {
  SolveResult out;
  out.verdict = v;
  stats_.lsidsDecisions = phases_.lsidsDecisions();
  stats_.lsidsDiffersFromSaved = phases_.lsidsDiffersFromSaved();
  if (v == Verdict::Sat) {
    out.model.resize(numVars_);
    for (std::uint32_t i = 0; i < numVars_; ++i) {
      const Var var{i};
      out.model[i] = trail_.assigned(var) ? trail_.value(var) == LBool::True
                                          : phases_.phaseOf(phases_.activeHeuristic(mode_), var);
    }
    if (!checkModel(original_, out.model)) throw std::logic_error("internal error: model does not satisfy formula");
  }
  out.stats = stats_;
  return out;
}

SolveResult Solver::solve() {
  const auto started = std::chrono::steady_clock::now();
  if (cfg_.timeLimitSeconds) {
    deadline_ = started + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(*cfg_.timeLimitSeconds));
  }
  auto done = [&](Verdict v) {
    stats_.wallTimeSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return finish(v);
  };
  if (!ok_) return done(Verdict::Unsat);

  for (;;) {
    const auto conflict = propagate();
    if (deadlinePassed()) return done(Verdict::Unknown);

    if (conflict) {
      const std::uint64_t priorConflicts = stats_.conflicts;
      ++stats_.conflicts;
      ++mode_.totalConflicts;
      ++conflictsSinceRestart_;

      const int conflictLevel = orderConflictClause(*conflict);
      if (conflictLevel == 0) {
        ok_ = false;
        return done(Verdict::Unsat);
      }
      const auto& cl = clauses_[*conflict].lits;
      if (trail_.level(cl[1].var()) < conflictLevel) {
        // Only one literal at the conflict level: the clause was missed as a
        // unit at a lower level. Step below the conflict level and assert it.
        const Lit unit = cl[0];
        const int lv = trail_.level(cl[1].var());
        backtrackTo(conflictLevel - 1);
        trail_.assign(unit, lv, *conflict);
        continue;
      }

      auto analysis = analyzeConflict(*conflict);
      const BacktrackDecision decision =
          chooseBacktrackLevel(conflictLevel, analysis.analysisBacktrackLevel, priorConflicts, cfg_);
      backtrackTo(decision.targetLevel, decision.kind);

      phases_.onClauseLearnt(analysis.learntClause);
      recordLbd(analysis.lbd);
      if (analysis.learntClause.size() == 1) {
        trail_.assign(analysis.learntClause[0], 0, kNoClause);
      } else {
        const Lit asserting = analysis.learntClause[0];
        const ClauseRef r = addLearntClause(std::move(analysis.learntClause), analysis.lbd);
        trail_.assign(asserting, analysis.analysisBacktrackLevel, r);
      }
      vsids_.decay();
      clauseInc_ *= 1.0 / kClauseDecay;
      continue;
    }

    if (shouldRestart()) {
      restart();
      continue;
    }
    if (learnts_.size() >= reduceLimit_) {
      reduceClauseDb();
      reduceLimit_ = learnts_.size() + cfg_.clauseDbPolicy.limitIncrement;
      reduceLimit_ = std::max<std::uint64_t>(reduceLimit_, cfg_.clauseDbPolicy.firstLimit);
    }

    const auto next = pickBranchVariable();
    if (!next) return done(Verdict::Sat);
    const bool phase = phases_.selectPhase(*next, mode_);
    if (observer_) observer_(*next, phase, mode_.inCbState());
    ++stats_.decisions;
    decide(Lit(*next, phase));
  }
}

SolveResult solve(const Formula& f, const SolverConfig& cfg) {
  Solver s(cfg);
  s.load(f);
  return s.solve();
}

}  // namespace phasesat
