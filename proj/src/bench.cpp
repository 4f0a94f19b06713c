#include "phasesat/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "phasesat/dimacs.hpp"
#include "phasesat/solver.hpp"

namespace phasesat {

namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double clampedTime(const RunRecord& r, double limit) { return r.solved() ? r.wallTimeSeconds : 2.0 * limit; }

}  // namespace

std::string_view toString(RunVerdict v) {
  switch (v) {
    case RunVerdict::Sat: return "SAT";
    case RunVerdict::Unsat: return "UNSAT";
    case RunVerdict::Unknown: return "UNKNOWN";
    case RunVerdict::Error: return "ERROR";
  }
  return "ERROR";
}

double SuiteReport::meanLsidsUsage() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    if (r.stats.decisions == 0) continue;
    sum += static_cast<double>(r.stats.lsidsDecisions) / static_cast<double>(r.stats.decisions);
    ++n;
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

double SuiteReport::meanLsidsDifference() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    if (r.stats.lsidsDecisions == 0) continue;
    sum += static_cast<double>(r.stats.lsidsDiffersFromSaved) / static_cast<double>(r.stats.lsidsDecisions);
    ++n;
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

double computePar2(std::span<const RunRecord> records, double timeLimitSeconds) {
  if (records.empty()) return 0.0;
  double total = 0.0;
  for (const auto& r : records) total += clampedTime(r, timeLimitSeconds);
  return total / static_cast<double>(records.size());
}

RunRecord runInstance(const std::filesystem::path& file, const SolverConfig& cfg, double timeLimitSeconds,
                      const std::string& label) {
  RunRecord rec;
  rec.instance = file.generic_string();
  rec.configLabel = label;
  const auto started = std::chrono::steady_clock::now();
  try {
    const auto parsed = readDimacsFile(file);
    SolverConfig local = cfg;
    local.timeLimitSeconds = timeLimitSeconds;
    const SolveResult res = solve(parsed.formula, local);
    rec.stats = res.stats;
    switch (res.verdict) {
      case Verdict::Sat: rec.verdict = RunVerdict::Sat; break;
      case Verdict::Unsat: rec.verdict = RunVerdict::Unsat; break;
      case Verdict::Unknown: rec.verdict = RunVerdict::Unknown; break;
    }
  } catch (const std::exception& e) {
    rec.verdict = RunVerdict::Error;
    rec.error = e.what();
  }
  rec.wallTimeSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (rec.verdict == RunVerdict::Unknown) {
    rec.timedOut = true;
    rec.wallTimeSeconds = std::max(rec.wallTimeSeconds, timeLimitSeconds);
  }
  return rec;
}

std::vector<std::filesystem::path> listInstances(const std::filesystem::path& instanceDir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(instanceDir, ec))
    throw std::invalid_argument("not a directory: " + instanceDir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(instanceDir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cnf") files.push_back(entry.path());
  }
  if (files.empty()) throw std::invalid_argument("no .cnf files in " + instanceDir.string());
  std::sort(files.begin(), files.end());
  return files;
}

SuiteReport makeReport(std::vector<RunRecord> records, double timeLimitSeconds, std::string configLabel) {
  SuiteReport rep;
  rep.configLabel = std::move(configLabel);
  rep.timeLimitSeconds = timeLimitSeconds;
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) { return a.instance < b.instance; });
  rep.records = std::move(records);
  for (const auto& r : rep.records) {
    if (r.verdict == RunVerdict::Sat) ++rep.satCount;
    if (r.verdict == RunVerdict::Unsat) ++rep.unsatCount;
  }
  rep.solvedCount = rep.satCount + rep.unsatCount;
  rep.par2 = computePar2(rep.records, timeLimitSeconds);
  return rep;
}

SuiteReport runSuite(const std::filesystem::path& instanceDir, const SolverConfig& cfg, double timeLimitSeconds,
                     unsigned workerCount, std::string configLabel) {
  if (!(timeLimitSeconds > 0.0)) throw std::invalid_argument("time limit must be positive");
  const auto files = listInstances(instanceDir);
  std::vector<RunRecord> records(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++)
      records[i] = runInstance(files[i], cfg, timeLimitSeconds, configLabel);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workerCount, static_cast<unsigned>(files.size())));
  std::vector<std::jthread> pool;
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
  pool.clear();  // join
  return makeReport(std::move(records), timeLimitSeconds, std::move(configLabel));
}

std::string emitCsv(const SuiteReport& report) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : report.records) {
    const auto& s = r.stats;
    out += r.instance + ',' + r.configLabel + ',' + std::string(toString(r.verdict)) + ',' + fixed(r.wallTimeSeconds) +
           ',' + (r.timedOut ? "1" : "0") + ',' + std::to_string(s.conflicts) + ',' + std::to_string(s.decisions) +
           ',' + std::to_string(s.propagations) + ',' + std::to_string(s.restarts) + ',' +
           std::to_string(s.cbBacktracks) + ',' + std::to_string(s.ncbBacktracks) + ',' +
           std::to_string(s.lsidsDecisions) + ',' + std::to_string(s.lsidsDiffersFromSaved) + '\n';
  }
  return out;
}

std::string emitCactusData(std::span<const SuiteReport> reports) {
  std::string out = "config,rank,time_s\n";
  for (const auto& rep : reports) {
    std::vector<double> times;
    for (const auto& r : rep.records)
      if (r.solved()) times.push_back(r.wallTimeSeconds);
    std::sort(times.begin(), times.end());
    for (std::size_t i = 0; i < times.size(); ++i)
      out += rep.configLabel + ',' + std::to_string(i + 1) + ',' + fixed(times[i]) + '\n';
  }
  return out;
}

std::string emitScatterData(const SuiteReport& a, const SuiteReport& b) {
  if (a.records.size() != b.records.size())
    throw std::invalid_argument("scatter requires identical instance sets");
  std::string out = "instance,time_a,time_b,timeout_a,timeout_b\n";
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& ra = a.records[i];
    const auto& rb = b.records[i];
    if (ra.instance != rb.instance) throw std::invalid_argument("scatter requires identical instance sets");
    out += ra.instance + ',' + fixed(clampedTime(ra, a.timeLimitSeconds)) + ',' +
           fixed(clampedTime(rb, b.timeLimitSeconds)) + ',' + (ra.solved() ? "0" : "1") + ',' +
           (rb.solved() ? "0" : "1") + '\n';
  }
  return out;
}

std::string emitSummary(const SuiteReport& report) {
  std::string out;
  out += "c config " + report.configLabel + "\n";
  out += "c instances " + std::to_string(report.records.size()) + " solved " + std::to_string(report.solvedCount) +
         " sat " + std::to_string(report.satCount) + " unsat " + std::to_string(report.unsatCount) + "\n";
  out += "c par2 " + fixed(report.par2, 4) + " limit " + fixed(report.timeLimitSeconds, 2) + "\n";
  out += "c lsids_usage " + fixed(report.meanLsidsUsage(), 6) + " lsids_differs_saved " +
         fixed(report.meanLsidsDifference(), 6) + "\n";
  return out;
}

}  // namespace phasesat
