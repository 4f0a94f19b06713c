// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "phasesat/backtrack.hpp"
#include "phasesat/bench.hpp"
#include "phasesat/cli.hpp"
#include "phasesat/dimacs.hpp"
#include "phasesat/generators.hpp"
#include "phasesat/phase.hpp"
#include "phasesat/solver.hpp"
#include "phasesat/verifier.hpp"
#include "test_util.hpp"

using namespace phasesat;
namespace fs = std::filesystem;

namespace {

constexpr double kExactTol = 1e-12;
constexpr double kMatrixBudgetSeconds = 600.0;
constexpr double kPerInstanceSeconds = 1.0;
constexpr double kPackBudgetSeconds = 120.0;
constexpr std::size_t kRandomInstances = 500;
constexpr std::uint64_t kCorpusSeed = 20190705;

const fs::path kSource = PHASESAT_SOURCE_DIR;
const fs::path kPack = kSource / "bench" / "pack-50-218";
const fs::path kDeepCore = kSource / "bench" / "deep-core";

struct Outcome {
  bool pass = true;
  std::string detail;
};

double secondsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool relClose(double a, double b) { return std::fabs(a - b) <= kExactTol * std::max(std::fabs(a), std::fabs(b)); }

const PhaseHeuristic kAllHeuristics[] = {PhaseHeuristic::Saved,         PhaseHeuristic::Random,
                                         PhaseHeuristic::AlwaysFalse,   PhaseHeuristic::OppositeSaved,
                                         PhaseHeuristic::Dps,           PhaseHeuristic::Lsids};

// Shared between criteria 1 and 2.
std::uint64_t gSatVerdicts = 0;
std::uint64_t gModelsChecked = 0;
std::uint64_t gModelsValid = 0;

Outcome oracleEquivalence() {
  struct Case {
    Formula f;
    Verdict truth;
    std::string name;
  };
  std::vector<Case> cases;
  std::size_t i = 0;
  for (auto& f : testing::random3CnfCorpus(kRandomInstances, kCorpusSeed)) {
    const Verdict truth = bruteForceSolve(f).verdict;
    cases.push_back({std::move(f), truth, "random#" + std::to_string(i++)});
  }
  for (std::uint32_t n = 2; n <= 5; ++n) {
    Formula f = pigeonhole(n + 1, n);
    // Enumeration where it fits; above that the pigeonhole principle itself.
    const Verdict truth = f.variableCount() <= kBruteForceMaxVars ? bruteForceSolve(f).verdict : Verdict::Unsat;
    cases.push_back({std::move(f), truth, "php" + std::to_string(n + 1) + "_" + std::to_string(n)});
  }

  const std::pair<int, std::uint64_t> tcs[] = {{100, 4000}, {0, 0}, {100, 0}};
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t runs = 0, mismatches = 0;
  std::string firstMismatch;
  for (auto h : kAllHeuristics) {
    for (auto [t, c] : tcs) {
      SolverConfig cfg;
      cfg.cbPhaseHeuristic = h;
      cfg.cbThresholdT = t;
      cfg.cbMinConflictsC = c;
      for (const auto& k : cases) {
        ++runs;
        const SolveResult r = solve(k.f, cfg);
        if (r.verdict == Verdict::Sat) {
          ++gSatVerdicts;
          ++gModelsChecked;
          if (checkModel(k.f, r.model)) ++gModelsValid;
        }
        if (r.verdict != k.truth) {
          if (mismatches++ == 0)
            firstMismatch = " first=" + k.name + "/" + std::string(toString(h)) + "/T" + std::to_string(t) + "C" +
                            std::to_string(c);
        }
      }
    }
  }
  const double elapsed = secondsSince(t0);
  Outcome o;
  o.pass = mismatches == 0 && elapsed < kMatrixBudgetSeconds;
  o.detail = std::to_string(runs) + " runs, " + std::to_string(mismatches) + " mismatches, " +
             fmt("%.1f s", elapsed) + " (budget " + fmt("%.0f s", kMatrixBudgetSeconds) + ")" + firstMismatch;
  return o;
}

Outcome modelSoundness() {
  Outcome o;
  o.pass = gModelsChecked > 0 && gModelsValid == gModelsChecked && gSatVerdicts == gModelsChecked;
  o.detail = std::to_string(gModelsValid) + "/" + std::to_string(gModelsChecked) + " SAT models satisfy their formula";
  return o;
}

Outcome dpsSuite() {
  Outcome o;
  SolverConfig cfg;
  cfg.dpsDecay = 0.7;
  PhaseSelector ps(1, cfg);
  ps.onAssignmentErased(Var{0}, true);
  const double afterTrue = ps.dps(Var{0});
  ps.onAssignmentErased(Var{0}, false);
  const double afterFalse = ps.dps(Var{0});
  const bool seqOk = std::fabs(afterTrue - 1.0) <= kExactTol && std::fabs(afterFalse - (-0.3)) <= kExactTol;

  std::mt19937_64 rng(404);
  std::size_t mismatches = 0;
  const int trials = 10000;
  cfg.dpsDecay = 0.4;
  for (int t = 0; t < trials; ++t) {
    PhaseSelector s(1, cfg);
    const auto len = 1 + rng() % 50;
    for (std::uint64_t k = 0; k < len; ++k) s.onAssignmentErased(Var{0}, (rng() & 1) != 0);
    if (s.phaseOf(PhaseHeuristic::Dps, Var{0}) != s.savedPhase(Var{0})) ++mismatches;
  }
  o.pass = seqOk && mismatches == 0;
  o.detail = "sequence " + fmt("%.15g", afterTrue) + ", " + fmt("%.15g", afterFalse) + "; dec=0.4 vs saved: " +
             std::to_string(mismatches) + " mismatches in " + std::to_string(trials) + " histories";
  return o;
}

Outcome lsidsSuite() {
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) failures.push_back(what);
  };
  {
    LsidsScores s;
    s.resize(1);
    s.setActivity(Lit(Var{0}, true), 1.0);
    s.setInc(2.0);
    s.bump(Lit(Var{0}, true), LsidsScores::kReasonBump);
    expect(s.activity(Lit(Var{0}, true)) == 2.0, "reason bump");
    s.setActivity(Lit(Var{0}, true), 1.0);
    s.bump(Lit(Var{0}, true), LsidsScores::kAssignmentBump);
    expect(s.activity(Lit(Var{0}, true)) == 5.0, "assignment bump");
  }
  {
    SolverConfig cfg;
    PhaseSelector ps(8, cfg);
    ps.onAssignmentErased(Var{4}, true);
    expect(ps.lsids().activity(Lit(Var{4}, true)) == 2.0, "erase bumps by 2");
    const std::vector<Lit> learnt{Lit(Var{5}, true), Lit(Var{6}, false), Lit(Var{3}, true)};
    ps.onClauseLearnt(learnt);
    bool all = true;
    for (Lit l : learnt) all = all && ps.lsids().activity(l) == 0.5;
    expect(all, "learnt literals bumped by 0.5");
    ps.onClauseLearnt(std::vector<Lit>{Lit(Var{5}, true)});
    expect(relClose(ps.lsids().activity(Lit(Var{5}, true)) - 0.5, 0.5 / 0.95), "second bump uses grown inc");
  }
  {
    LsidsScores s;
    s.resize(1);
    bool growth = true;
    for (int k = 1; k <= 60; ++k) {
      s.decay();
      growth = growth && relClose(s.inc(), std::pow(1.0 / 0.95, k));
    }
    expect(growth, "inc growth (1/0.95)^k");
  }
  {
    LsidsScores s;
    s.resize(2);
    s.setActivity(Lit(Var{0}, true), 0.9e100);
    s.setActivity(Lit(Var{1}, false), 4.0);
    s.setInc(1e99);
    s.bump(Lit(Var{0}, true), 2.0);
    expect(relClose(s.activity(Lit(Var{0}, true)), 1.1) && relClose(s.activity(Lit(Var{1}, false)), 4e-100) &&
               relClose(s.inc(), 0.1),
           "rescore past 1e100");
  }
  std::size_t changed = 0;
  {
    SolverConfig cfg;
    cfg.cbPhaseHeuristic = PhaseHeuristic::Lsids;
    const std::uint32_t n = 1000;
    PhaseSelector ps(n, cfg);
    std::mt19937_64 rng(1000);
    std::uniform_real_distribution<double> e(-80.0, 100.0);
    for (std::uint32_t v = 0; v < n; ++v) {
      const double a = std::pow(10.0, e(rng));
      ps.lsids().setActivity(Lit(Var{v}, true), a);
      ps.lsids().setActivity(Lit(Var{v}, false), v % 4 == 0 ? a : std::pow(10.0, e(rng)));
    }
    SolverMode cb;
    cb.lastBacktrackKind = BacktrackKind::Chronological;
    std::vector<bool> before(n);
    for (std::uint32_t v = 0; v < n; ++v) before[v] = ps.selectPhase(Var{v}, cb);
    ps.lsids().rescore();
    for (std::uint32_t v = 0; v < n; ++v) changed += ps.selectPhase(Var{v}, cb) != before[v];
  }
  expect(changed == 0, "rescore invariance");
  Outcome o;
  o.pass = failures.empty();
  o.detail = "rescore changed " + std::to_string(changed) + "/1000 phases";
  for (const auto& f : failures) o.detail += "; failed: " + f;
  return o;
}

Outcome cbMechanics() {
  std::vector<std::string> failures;
  int tableOk = 0;
  auto tc = [](int t, std::uint64_t c) {
    SolverConfig cfg;
    cfg.cbThresholdT = t;
    cfg.cbMinConflictsC = c;
    return cfg;
  };
  if (!(chooseBacktrackLevel(150, 10, 5000, tc(100, 4000)) == BacktrackDecision{149, BacktrackKind::Chronological}))
    failures.push_back("example 1");
  else
    ++tableOk;
  if (!(chooseBacktrackLevel(150, 10, 3000, tc(100, 4000)) == BacktrackDecision{10, BacktrackKind::NonChronological}))
    failures.push_back("example 2");
  else
    ++tableOk;
  if (!(chooseBacktrackLevel(50, 10, 5000, tc(100, 4000)) == BacktrackDecision{10, BacktrackKind::NonChronological}))
    failures.push_back("example 3");
  else
    ++tableOk;

  {
    // Levels along the trail: 1, 3, 2, 3. Backtracking to 2 keeps 1 and 2.
    Trail t;
    t.resize(4);
    t.newDecisionLevel();
    t.assign(Lit(Var{0}, true), 1, kNoClause);
    t.newDecisionLevel();
    t.newDecisionLevel();
    t.assign(Lit(Var{1}, true), 3, kNoClause);
    t.assign(Lit(Var{2}, false), 2, 0);
    t.assign(Lit(Var{3}, true), 3, 1);
    std::vector<Var> erased;
    t.backtrackTo(2, [&](Var v, bool) { erased.push_back(v); });
    const bool ok = t.size() == 2 && t[0] == Lit(Var{0}, true) && t[1] == Lit(Var{2}, false) &&
                    erased == std::vector<Var>{Var{3}, Var{1}} && t.maxLevelOnTrail() == 2;
    if (!ok) failures.push_back("non-monotonic backtrack");
  }

  std::size_t withCb = 0, instances = 0;
  std::string best;
  for (const fs::path& dir : {kPack, kDeepCore}) {
    for (const auto& file : listInstances(dir)) {
      ++instances;
      const auto r = solve(readDimacsFile(file).formula, tc(100, 0));
      if (r.stats.cbBacktracks > 0) {
        if (withCb++ == 0) best = file.filename().string() + " cb_backtracks=" + std::to_string(r.stats.cbBacktracks);
      }
    }
  }
  if (withCb == 0) failures.push_back("no corpus instance backtracked chronologically at T=100, C=0");
  Outcome o;
  o.pass = failures.empty();
  o.detail = "T/C table " + std::to_string(tableOk) + "/3; " +
             std::to_string(withCb) + "/" + std::to_string(instances) + " corpus instances with CB at T=100,C=0" +
             (best.empty() ? "" : " (e.g. " + best + ")");
  for (const auto& f : failures) o.detail += "; failed: " + f;
  return o;
}

Outcome performanceFloor() {
  const auto files = listInstances(kPack);
  double total = 0.0, worst = 0.0;
  std::size_t wrong = 0, slow = 0, sat = 0, unsat = 0;
  for (const auto& file : files) {
    const bool expectSat = file.filename().string().rfind("uf", 0) == 0;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = solve(readDimacsFile(file).formula, SolverConfig{});
    const double dt = secondsSince(t0);
    total += dt;
    worst = std::max(worst, dt);
    if (dt >= kPerInstanceSeconds) ++slow;
    if (r.verdict != (expectSat ? Verdict::Sat : Verdict::Unsat)) ++wrong;
    (r.verdict == Verdict::Sat ? sat : unsat) += 1;
  }
  Outcome o;
  o.pass = files.size() == 200 && sat == 100 && unsat == 100 && wrong == 0 && slow == 0 && total < kPackBudgetSeconds;
  o.detail = std::to_string(files.size()) + " instances (" + std::to_string(sat) + " SAT, " + std::to_string(unsat) +
             " UNSAT), wrong=" + std::to_string(wrong) + ", slowest " + fmt("%.4f s", worst) + ", total " +
             fmt("%.3f s", total);
  return o;
}

Outcome harnessArithmetic() {
  std::vector<std::string> failures;
  RunRecord solved;
  solved.instance = "a";
  solved.verdict = RunVerdict::Sat;
  solved.wallTimeSeconds = 100.0;
  RunRecord timeout;
  timeout.instance = "b";
  timeout.verdict = RunVerdict::Unknown;
  timeout.timedOut = true;
  timeout.wallTimeSeconds = 5000.0;
  const std::vector<RunRecord> rs{solved, timeout};
  const double par2 = computePar2(rs, 5000.0);
  if (par2 != 5050.0) failures.push_back("par2");

  const std::string header =
      "instance,configLabel,verdict,time_s,timed_out,conflicts,decisions,propagations,restarts,cb_backtracks,"
      "ncb_backtracks,lsids_decisions,lsids_differs_saved";
  const std::string csv = emitCsv(makeReport(rs, 5000.0, "x"));
  if (csv.substr(0, csv.find('\n')) != header) failures.push_back("csv header");

  const auto one = runSuite(kPack, SolverConfig{}, 60.0, 1, "w1");
  const auto eight = runSuite(kPack, SolverConfig{}, 60.0, 8, "w8");
  bool same = one.records.size() == eight.records.size();
  for (std::size_t i = 0; same && i < one.records.size(); ++i)
    same = one.records[i].instance == eight.records[i].instance && one.records[i].verdict == eight.records[i].verdict;
  if (!same) failures.push_back("worker verdicts differ");
  Outcome o;
  o.pass = failures.empty();
  o.detail = "par2=" + fmt("%.6f", par2) + ", header " + (csv.rfind(header, 0) == 0 ? "matches" : "differs") +
             ", 1 vs 8 workers on " + std::to_string(one.records.size()) + " instances " +
             (same ? "identical" : "differ");
  for (const auto& f : failures) o.detail += "; failed: " + f;
  return o;
}

std::vector<std::vector<std::string>> readCsv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

Outcome abSmoke() {
  testing::TempDir tmp;
  const auto csv = tmp.file("ab.csv"), cactus = tmp.file("cactus.csv"), scatter = tmp.file("scatter.csv");
  std::ostringstream out, err;
  const int code = runCli({"bench", kPack.string(), "--out", csv.string(), "--preset", "mldc-like", "--compare",
                           "mldc-lsids-like", "--cactus", cactus.string(), "--scatter", scatter.string(),
                           "--time-limit", "60", "--workers", "4"},
                          out, err);
  std::vector<std::string> failures;
  if (code != 0) failures.push_back("bench exit " + std::to_string(code));

  const auto rows = readCsv(csv);
  std::map<std::string, std::set<std::string>> coverage;
  std::map<std::string, std::pair<double, double>> fractionSums;  // usage, difference
  std::map<std::string, std::size_t> withDecisions, withLsids;
  bool inRange = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 13) {
      failures.push_back("short CSV row");
      break;
    }
    const std::string& label = r[1];
    coverage[label].insert(r[0]);
    const double decisions = std::stod(r[6]), lsids = std::stod(r[11]), differs = std::stod(r[12]);
    if (decisions > 0) {
      const double usage = lsids / decisions;
      inRange = inRange && usage >= 0.0 && usage <= 1.0;
      fractionSums[label].first += usage;
      ++withDecisions[label];
    }
    if (lsids > 0) {
      const double diff = differs / lsids;
      inRange = inRange && diff >= 0.0 && diff <= 1.0;
      fractionSums[label].second += diff;
      ++withLsids[label];
    }
  }
  const bool covered = coverage.size() == 2 && coverage["mldc-like"] == coverage["mldc-lsids-like"] &&
                       coverage["mldc-like"].size() == 200;
  if (!covered) failures.push_back("instance coverage differs");
  if (!inRange) failures.push_back("LSIDS fractions outside [0,1]");

  const auto scatterRows = readCsv(scatter);
  std::set<std::string> scatterInstances;
  for (std::size_t i = 1; i < scatterRows.size(); ++i) scatterInstances.insert(scatterRows[i][0]);
  if (scatterInstances != coverage["mldc-like"]) failures.push_back("scatter coverage");
  const auto cactusRows = readCsv(cactus);
  if (cactusRows.empty() || cactusRows[0] != std::vector<std::string>{"config", "rank", "time_s"})
    failures.push_back("cactus header");

  auto mean = [&](const std::string& label, bool usage) {
    const std::size_t n = usage ? withDecisions[label] : withLsids[label];
    const double s = usage ? fractionSums[label].first : fractionSums[label].second;
    return n ? s / static_cast<double>(n) : 0.0;
  };
  Outcome o;
  o.pass = failures.empty();
  o.detail = std::to_string(coverage["mldc-like"].size()) + " instances per preset, scatter rows " +
             std::to_string(scatterInstances.size()) + ", cactus rows " +
             std::to_string(cactusRows.empty() ? 0 : cactusRows.size() - 1) + "; mldc-lsids-like lsids_usage " +
             fmt("%.4f", mean("mldc-lsids-like", true)) + " lsids_differs_saved " +
             fmt("%.4f", mean("mldc-lsids-like", false));
  for (const auto& f : failures) o.detail += "; failed: " + f;
  return o;
}

std::string statsLine(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  runCli(args, out, err);
  std::istringstream in(out.str());
  for (std::string line; std::getline(in, line);)
    if (line.rfind("c stats ", 0) == 0) return line;
  return {};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> flagSets{
      {"solve", (kPack / "uuf50-218-001.cnf").string(), "--phase-cb", "random", "--seed", "12345",
       "--cb-threshold-t", "0", "--cb-min-conflicts-c", "0"},
      {"solve", (kPack / "uf50-218-001.cnf").string(), "--preset", "mldc-lsids-like", "--seed", "7"},
      {"solve", (kDeepCore / "deep-150-php5.cnf").string(), "--phase-cb", "lsids", "--cb-min-conflicts-c", "0",
       "--seed", "99", "--restart", "glucose"}};
  std::size_t same = 0;
  std::string sample;
  for (const auto& args : flagSets) {
    const std::string a = statsLine(args), b = statsLine(args);
    if (!a.empty() && a == b) ++same;
    if (sample.empty()) sample = a;
  }
  Outcome o;
  o.pass = same == flagSets.size();
  o.detail = std::to_string(same) + "/" + std::to_string(flagSets.size()) + " flag sets byte-identical; " + sample;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"oracle-equivalence", oracleEquivalence}, {"model-soundness", modelSoundness},
      {"dps-suite", dpsSuite},                   {"lsids-suite", lsidsSuite},
      {"cb-mechanics", cbMechanics},             {"performance-floor", performanceFloor},
      {"harness-arithmetic", harnessArithmetic}, {"ab-smoke", abSmoke},
      {"determinism", determinism},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
