#include "phasesat/core.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace phasesat {

std::optional<Clause> Clause::make(std::vector<Lit> lits, bool learnt, std::uint32_t lbd) {
  std::vector<Lit> kept;
  kept.reserve(lits.size());
  for (Lit l : lits) {
    bool duplicate = false;
    for (Lit k : kept) {
      if (k == ~l) return std::nullopt;
      if (k == l) duplicate = true;
    }
    if (!duplicate) kept.push_back(l);
  }
  Clause c;
  c.lits_ = std::move(kept);
  c.learnt_ = learnt;
  c.lbd_ = learnt ? std::max<std::uint32_t>(lbd, 1) : lbd;
  return c;
}

void Formula::addClause(Clause c) {
  for (Lit l : c.literals()) {
    if (l.var().index >= variableCount_) {
      throw std::out_of_range("literal " + std::to_string(l.toDimacs()) +
                              " exceeds variable count " + std::to_string(variableCount_));
    }
  }
  clauses_.push_back(std::move(c));
}

bool Formula::addClause(std::vector<Lit> lits) {
  auto c = Clause::make(std::move(lits));
  if (!c) return false;
  addClause(std::move(*c));
  return true;
}

namespace {

constexpr std::array<std::pair<PhaseHeuristic, std::string_view>, 6> kHeuristicNames{{
    {PhaseHeuristic::Saved, "saved"},
    {PhaseHeuristic::Random, "random"},
    {PhaseHeuristic::AlwaysFalse, "false"},
    {PhaseHeuristic::OppositeSaved, "opposite"},
    {PhaseHeuristic::Dps, "dps"},
    {PhaseHeuristic::Lsids, "lsids"},
}};

}  // namespace

std::string_view toString(PhaseHeuristic h) {
  for (auto [k, name] : kHeuristicNames)
    if (k == h) return name;
  return "?";
}

std::optional<PhaseHeuristic> parsePhaseHeuristic(std::string_view name) {
  for (auto [k, n] : kHeuristicNames)
    if (n == name) return k;
  return std::nullopt;
}

void SolverConfig::validate() const {
  if (!(dpsDecay > 0.0 && dpsDecay < 1.0))
    throw std::invalid_argument("dpsDecay must lie strictly inside (0,1)");
  if (!(varDecay > 0.0 && varDecay < 1.0))
    throw std::invalid_argument("varDecay must lie strictly inside (0,1)");
  if (restartPolicy.lubyBase == 0) throw std::invalid_argument("luby base must be positive");
  if (restartPolicy.glucoseWindow == 0) throw std::invalid_argument("glucose window must be positive");
  if (clauseDbPolicy.firstLimit == 0) throw std::invalid_argument("clause db limit must be positive");
  if (timeLimitSeconds && !(*timeLimitSeconds > 0.0))
    throw std::invalid_argument("time limit must be positive");
}

std::optional<Preset> parsePreset(std::string_view name) {
  if (name == "mldc-like") return Preset::MldcLike;
  if (name == "mldc-lsids-like") return Preset::MldcLsidsLike;
  return std::nullopt;
}

std::string_view toString(Preset p) {
  return p == Preset::MldcLike ? "mldc-like" : "mldc-lsids-like";
}

void applyPreset(SolverConfig& cfg, Preset p) {
  cfg.ncbPhaseHeuristic = PhaseHeuristic::Saved;
  cfg.cbPhaseHeuristic = p == Preset::MldcLike ? PhaseHeuristic::Saved : PhaseHeuristic::Lsids;
  cfg.cbThresholdT = 100;
  cfg.cbMinConflictsC = 4000;
}

std::string SolverStats::countersLine() const {
  std::ostringstream os;
  os << "conflicts=" << conflicts << " decisions=" << decisions << " propagations=" << propagations
     << " restarts=" << restarts << " cb_backtracks=" << cbBacktracks
     << " ncb_backtracks=" << ncbBacktracks << " lsids_decisions=" << lsidsDecisions
     << " lsids_differs_saved=" << lsidsDiffersFromSaved;
  return os.str();
}

std::string_view toString(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "SAT";
    case Verdict::Unsat: return "UNSAT";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

}  // namespace phasesat
