#include "phasesat/phase.hpp"

namespace phasesat {

void LsidsScores::rescore() {
  for (double& a : activity_) a *= kRescaleFactor;
  inc_ *= kRescaleFactor;
}

PhaseSelector::PhaseSelector(std::uint32_t numVars, const SolverConfig& cfg)
    : ncbHeuristic_(cfg.ncbPhaseHeuristic),
      cbHeuristic_(cfg.cbPhaseHeuristic),
      dpsDecay_(cfg.dpsDecay),
      rng_(cfg.randomSeed) {
  resize(numVars);
}

void PhaseSelector::resize(std::uint32_t numVars) {
  saved_.resize(numVars, false);
  dps_.resize(numVars, 0.0);
  lsids_.resize(numVars);
}

bool PhaseSelector::coin() { return (rng_() >> 63) != 0; }

bool PhaseSelector::phaseOf(PhaseHeuristic h, Var v) {
  switch (h) {
    case PhaseHeuristic::Saved: return saved_[v.index];
    case PhaseHeuristic::Random: return coin();
    case PhaseHeuristic::AlwaysFalse: return false;
    case PhaseHeuristic::OppositeSaved: return !saved_[v.index];
    case PhaseHeuristic::Dps: return dps_[v.index] > 0.0;
    case PhaseHeuristic::Lsids: return lsids_.prefersPositive(v);
  }
  return false;
}

bool PhaseSelector::selectPhase(Var v, const SolverMode& mode) {
  const PhaseHeuristic h = activeHeuristic(mode);
  const bool phase = phaseOf(h, v);
  if (h == PhaseHeuristic::Lsids) {
    ++lsidsDecisions_;
    if (phase != saved_[v.index]) ++lsidsDiffersFromSaved_;
  }
  return phase;
}

void PhaseSelector::onClauseLearnt(std::span<const Lit> learnt) {
  for (Lit l : learnt) lsids_.bump(l, LsidsScores::kReasonBump);
  lsids_.decay();
}

}  // namespace phasesat
