// Phase (polarity) selection for decision variables.
//
// Six heuristics are available and the one consulted depends on whether the
// most recent backtrack was chronological (CB-state) or not (NCB-state):
//
//   saved     polarity held when the variable was last unassigned
//   random    fair coin from a seeded stream
//   false     always negative
//   opposite  negation of the saved polarity
//   dps       sign of the decaying polarity score, dps = pol + dec * dps
//   lsids     the polarity whose literal activity is strictly higher
//
// Saved phases, DPS scores and LSIDS activities are maintained on every
// erase and every learnt clause regardless of which heuristic is active.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "phasesat/backtrack.hpp"
#include "phasesat/core.hpp"

namespace phasesat {

/// Per-literal activity with additive bumps and a multiplicatively growing
/// increment, scaled down uniformly when any activity passes the limit.
class LsidsScores {
 public:
  static constexpr double kDecay = 0.95;            // inc grows by 1/kDecay per conflict
  static constexpr double kRescaleLimit = 1e100;
  static constexpr double kRescaleFactor = 1e-100;
  static constexpr double kReasonBump = 0.5;        // literals of a learnt clause
  static constexpr double kAssignmentBump = 2.0;    // a cancelled assignment

  void resize(std::uint32_t numVars) { activity_.resize(2 * static_cast<std::size_t>(numVars), 0.0); }

  void bump(Lit l, double mult) {
    double& a = activity_[l.code()];
    a += inc_ * mult;
    if (a > kRescaleLimit) rescore();
  }
  void decay() { inc_ *= 1.0 / kDecay; }
  void rescore();

  double activity(Lit l) const { return activity_[l.code()]; }
  double inc() const { return inc_; }
  /// Positive iff activity(v+) > activity(v-); ties pick negative.
  bool prefersPositive(Var v) const { return activity(Lit(v, true)) > activity(Lit(v, false)); }

  void setActivity(Lit l, double a) { activity_[l.code()] = a; }
  void setInc(double inc) { inc_ = inc; }
  std::span<const double> activities() const { return activity_; }

 private:
  std::vector<double> activity_;
  double inc_ = 1.0;
};

class PhaseSelector {
 public:
  PhaseSelector() = default;
  PhaseSelector(std::uint32_t numVars, const SolverConfig& cfg);

  void resize(std::uint32_t numVars);

  /// The heuristic consulted in the given solver mode.
  PhaseHeuristic activeHeuristic(const SolverMode& mode) const {
    return mode.inCbState() ? cbHeuristic_ : ncbHeuristic_;
  }

  /// Polarity for a freshly picked decision variable. Counts LSIDS usage.
  bool selectPhase(Var v, const SolverMode& mode);

  /// Polarity `h` would return for `v`; consumes randomness for Random.
  bool phaseOf(PhaseHeuristic h, Var v);

  /// Called once per trail entry removed by a backtrack.
  void onAssignmentErased(Var v, bool erasedPolarity) {
    saved_[v.index] = erasedPolarity;
    double& s = dps_[v.index];
    s = (erasedPolarity ? 1.0 : -1.0) + dpsDecay_ * s;
    lsids_.bump(Lit(v, erasedPolarity), LsidsScores::kAssignmentBump);
  }

  /// Reason-based bump of every literal of the final learnt clause, followed by
  /// the once-per-conflict increment growth.
  void onClauseLearnt(std::span<const Lit> learnt);

  bool savedPhase(Var v) const { return saved_[v.index]; }
  double dps(Var v) const { return dps_[v.index]; }
  double dpsDecay() const { return dpsDecay_; }
  LsidsScores& lsids() { return lsids_; }
  const LsidsScores& lsids() const { return lsids_; }

  void setDps(Var v, double s) { dps_[v.index] = s; }
  void setSavedPhase(Var v, bool p) { saved_[v.index] = p; }

  std::uint64_t lsidsDecisions() const { return lsidsDecisions_; }
  std::uint64_t lsidsDiffersFromSaved() const { return lsidsDiffersFromSaved_; }

 private:
  bool coin();

  PhaseHeuristic ncbHeuristic_ = PhaseHeuristic::Saved;
  PhaseHeuristic cbHeuristic_ = PhaseHeuristic::Lsids;
  double dpsDecay_ = 0.7;
  std::vector<bool> saved_;
  std::vector<double> dps_;
  LsidsScores lsids_;
  std::mt19937_64 rng_;
  std::uint64_t lsidsDecisions_ = 0;
  std::uint64_t lsidsDiffersFromSaved_ = 0;
};

}  // namespace phasesat
