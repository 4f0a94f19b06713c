// Propositional data model and solver configuration shared by every module.
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phasesat {

/// A propositional variable, 0-based. DIMACS variable k maps to index k-1.
struct Var {
  std::uint32_t index = 0;

  constexpr auto operator<=>(const Var&) const = default;
};

/// A signed variable. Encoded as 2*index + (positive ? 0 : 1) so that
/// negation flips the low bit.
class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool positive) : code_(2 * v.index + (positive ? 0u : 1u)) {}

  static constexpr Lit fromCode(std::uint32_t code) {
    Lit l;
    l.code_ = code;
    return l;
  }
  /// DIMACS integer (nonzero) to literal.
  static constexpr Lit fromDimacs(std::int64_t k) {
    return k > 0 ? Lit(Var{static_cast<std::uint32_t>(k - 1)}, true)
                 : Lit(Var{static_cast<std::uint32_t>(-k - 1)}, false);
  }

  constexpr Var var() const { return Var{code_ >> 1}; }
  constexpr bool positive() const { return (code_ & 1u) == 0; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr std::int64_t toDimacs() const {
    const auto k = static_cast<std::int64_t>(var().index) + 1;
    return positive() ? k : -k;
  }

  constexpr Lit operator~() const { return fromCode(code_ ^ 1u); }
  constexpr auto operator<=>(const Lit&) const = default;

 private:
  std::uint32_t code_ = 0;
};

constexpr Lit negate(Lit l) { return ~l; }
constexpr std::uint32_t literalIndex(Lit l) { return l.code(); }

/// Three-valued assignment value.
enum class LBool : std::uint8_t { False = 0, True = 1, Undef = 2 };

constexpr LBool lboolOf(bool b) { return b ? LBool::True : LBool::False; }

/// A disjunction of literals. Construction removes duplicate literals and
/// refuses tautologies.
class Clause {
 public:
  /// Returns nullopt when `lits` holds a complementary pair. Duplicates are
  /// dropped keeping the first occurrence, so literal order is preserved.
  static std::optional<Clause> make(std::vector<Lit> lits, bool learnt = false,
                                    std::uint32_t lbd = 0);

  std::span<const Lit> literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool learnt() const { return learnt_; }
  std::uint32_t lbd() const { return lbd_; }
  double activity() const { return activity_; }
  void setActivity(double a) { activity_ = a; }

  bool operator==(const Clause& o) const { return lits_ == o.lits_ && learnt_ == o.learnt_; }

 private:
  Clause() = default;
  std::vector<Lit> lits_;
  bool learnt_ = false;
  std::uint32_t lbd_ = 0;
  double activity_ = 0.0;
};

/// A CNF formula over `variableCount` variables.
class Formula {
 public:
  Formula() = default;
  explicit Formula(std::uint32_t variableCount) : variableCount_(variableCount) {}

  std::uint32_t variableCount() const { return variableCount_; }
  std::span<const Clause> clauses() const { return clauses_; }

  /// Throws std::out_of_range if a literal names a variable >= variableCount.
  void addClause(Clause c);
  /// Convenience: builds the clause and adds it; returns false for a tautology
  /// (which is dropped).
  bool addClause(std::vector<Lit> lits);

  bool operator==(const Formula&) const = default;

 private:
  std::uint32_t variableCount_ = 0;
  std::vector<Clause> clauses_;
};

enum class PhaseHeuristic : std::uint8_t { Saved, Random, AlwaysFalse, OppositeSaved, Dps, Lsids };

/// CLI spelling: saved|random|false|opposite|dps|lsids.
std::string_view toString(PhaseHeuristic h);
std::optional<PhaseHeuristic> parsePhaseHeuristic(std::string_view name);

enum class RestartKind : std::uint8_t { Luby, Glucose };

struct RestartPolicy {
  RestartKind kind = RestartKind::Luby;
  std::uint32_t lubyBase = 100;
  // Glucose-style dynamic restarts.
  std::uint32_t glucoseWindow = 50;
  double glucoseK = 0.8;
};

struct ClauseDbPolicy {
  std::uint32_t firstLimit = 2000;  // learnt clauses before the first reduction
  std::uint32_t limitIncrement = 300;
  std::uint32_t keepLbd = 2;  // learnt clauses with lbd <= keepLbd are never deleted
};

/// Phase heuristics and backtracking thresholds with their defaults.
struct SolverConfig {
  static constexpr std::uint64_t kNeverChronological = std::numeric_limits<std::uint64_t>::max();

  std::uint32_t cbThresholdT = 100;
  std::uint64_t cbMinConflictsC = 4000;
  PhaseHeuristic ncbPhaseHeuristic = PhaseHeuristic::Saved;
  PhaseHeuristic cbPhaseHeuristic = PhaseHeuristic::Lsids;
  double dpsDecay = 0.7;
  std::uint64_t randomSeed = 91648253;
  double varDecay = 0.95;
  RestartPolicy restartPolicy{};
  ClauseDbPolicy clauseDbPolicy{};
  std::optional<double> timeLimitSeconds;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

enum class Preset : std::uint8_t {
  MldcLike,       // phase saving in both states
  MldcLsidsLike,  // phase saving in NCB-state, LSIDS in CB-state
};

std::optional<Preset> parsePreset(std::string_view name);
std::string_view toString(Preset p);
/// Overwrites the phase heuristics and T/C thresholds of `cfg`.
void applyPreset(SolverConfig& cfg, Preset p);

struct SolverStats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  std::uint64_t cbBacktracks = 0;
  std::uint64_t ncbBacktracks = 0;
  std::uint64_t lsidsDecisions = 0;
  std::uint64_t lsidsDiffersFromSaved = 0;
  double wallTimeSeconds = 0.0;

  /// Every counter, excluding wall time, as "name=value" pairs.
  std::string countersLine() const;
};

enum class Verdict : std::uint8_t { Sat, Unsat, Unknown };

std::string_view toString(Verdict v);

struct SolveResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<bool> model;  // one entry per variable when verdict == Sat
  SolverStats stats;
};

}  // namespace phasesat
