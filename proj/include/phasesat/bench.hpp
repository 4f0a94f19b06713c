// Suite runner with wall-clock limits, PAR-2 scoring and plot data export.
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "phasesat/core.hpp"

namespace phasesat {

enum class RunVerdict : std::uint8_t { Sat, Unsat, Unknown, Error };

std::string_view toString(RunVerdict v);

struct RunRecord {
  std::string instance;
  std::string configLabel;
  RunVerdict verdict = RunVerdict::Unknown;
  double wallTimeSeconds = 0.0;
  bool timedOut = false;
  SolverStats stats;
  std::string error;  // set for Error rows

  bool solved() const { return verdict == RunVerdict::Sat || verdict == RunVerdict::Unsat; }
};

struct SuiteReport {
  std::string configLabel;
  double timeLimitSeconds = 0.0;
  std::vector<RunRecord> records;  // sorted by instance path
  std::size_t satCount = 0;
  std::size_t unsatCount = 0;
  std::size_t solvedCount = 0;
  double par2 = 0.0;

  /// Mean over records with decisions of lsidsDecisions / decisions.
  double meanLsidsUsage() const;
  /// Mean over records with LSIDS decisions of lsidsDiffersFromSaved / lsidsDecisions.
  double meanLsidsDifference() const;
};

/// (sum of solved times + 2 * limit per unsolved record) / record count.
/// Unknown and Error rows are unsolved. Empty input scores 0.
double computePar2(std::span<const RunRecord> records, double timeLimitSeconds);

/// Runs one instance; parse failures become an Error record.
RunRecord runInstance(const std::filesystem::path& file, const SolverConfig& cfg, double timeLimitSeconds,
                      const std::string& label);

/// Every *.cnf file directly in `instanceDir`, sorted by path.
/// Throws std::invalid_argument if the directory has none.
std::vector<std::filesystem::path> listInstances(const std::filesystem::path& instanceDir);

/// Solves each instance on one of `workerCount` threads with its own solver.
SuiteReport runSuite(const std::filesystem::path& instanceDir, const SolverConfig& cfg, double timeLimitSeconds,
                     unsigned workerCount, std::string configLabel = "default");

/// Aggregates and sorts records into a report.
SuiteReport makeReport(std::vector<RunRecord> records, double timeLimitSeconds, std::string configLabel);

inline constexpr std::string_view kCsvHeader =
    "instance,configLabel,verdict,time_s,timed_out,conflicts,decisions,propagations,restarts,cb_backtracks,"
    "ncb_backtracks,lsids_decisions,lsids_differs_saved";

std::string emitCsv(const SuiteReport& report);
/// Rows config,rank,time_s over solved instances, times ascending per config.
std::string emitCactusData(std::span<const SuiteReport> reports);
/// Rows instance,time_a,time_b,timeout_a,timeout_b; unsolved times are
/// clamped to 2 * limit. Throws std::invalid_argument when instance sets differ.
std::string emitScatterData(const SuiteReport& a, const SuiteReport& b);
/// Human-readable totals.
std::string emitSummary(const SuiteReport& report);

}  // namespace phasesat
