#include "phasesat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "phasesat/bench.hpp"
#include "phasesat/dimacs.hpp"
#include "phasesat/solver.hpp"
#include "phasesat/verifier.hpp"

namespace phasesat {

namespace {

const std::vector<std::string> kHeuristics{"saved", "random", "false", "opposite", "dps", "lsids"};
const std::vector<std::string> kPresets{"mldc-like", "mldc-lsids-like"};

struct SolverFlags {
  std::optional<std::string> preset;
  std::optional<std::string> phaseNcb;
  std::optional<std::string> phaseCb;
  std::optional<double> dpsDecay;
  std::optional<std::uint32_t> cbThresholdT;
  std::optional<std::uint64_t> cbMinConflictsC;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> restart;
  std::optional<double> timeLimit;

  void attach(CLI::App& app) {
    app.add_option("--preset", preset, "Named configuration")->check(CLI::IsMember(kPresets));
    app.add_option("--phase-ncb", phaseNcb, "Phase heuristic in NCB-state")->check(CLI::IsMember(kHeuristics));
    app.add_option("--phase-cb", phaseCb, "Phase heuristic in CB-state")->check(CLI::IsMember(kHeuristics));
    app.add_option("--dps-decay", dpsDecay, "Decay factor of the polarity score, in (0,1)")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--cb-threshold-t", cbThresholdT, "Chronological backtrack when the jump exceeds T levels");
    app.add_option("--cb-min-conflicts-c", cbMinConflictsC, "Only non-chronological backtracks for the first C conflicts");
    app.add_option("--seed", seed, "Seed for the random phase heuristic");
    app.add_option("--restart", restart, "Restart policy")->check(CLI::IsMember({"luby", "glucose"}));
  }

  /// Preset first, explicit flags on top.
  SolverConfig build() const {
    SolverConfig cfg;
    if (preset) applyPreset(cfg, *parsePreset(*preset));
    if (phaseNcb) cfg.ncbPhaseHeuristic = *parsePhaseHeuristic(*phaseNcb);
    if (phaseCb) cfg.cbPhaseHeuristic = *parsePhaseHeuristic(*phaseCb);
    if (dpsDecay) cfg.dpsDecay = *dpsDecay;
    if (cbThresholdT) cfg.cbThresholdT = *cbThresholdT;
    if (cbMinConflictsC) cfg.cbMinConflictsC = *cbMinConflictsC;
    if (seed) cfg.randomSeed = *seed;
    if (restart) cfg.restartPolicy.kind = *restart == "glucose" ? RestartKind::Glucose : RestartKind::Luby;
    cfg.timeLimitSeconds = timeLimit;
    cfg.validate();
    return cfg;
  }
};

bool writeFile(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

int runSolve(const std::string& cnf, const SolverFlags& flags, bool strict, std::ostream& out, std::ostream& err) {
  const SolverConfig cfg = flags.build();
  const auto parsed = readDimacsFile(cnf, ParseOptions{strict});
  for (const auto& w : parsed.diagnostics.warnings) err << "c warning line " << w.line << ": " << w.message << "\n";
  const SolveResult res = solve(parsed.formula, cfg);
  out << renderResult(res);
  out << "c stats " << res.stats.countersLine() << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", res.stats.wallTimeSeconds);
  out << "c time " << buf << "\n";
  return exitCodeFor(res.verdict);
}

int runBench(const std::string& dir, const SolverFlags& flags, unsigned workers, double timeLimit,
             const std::string& outPath, std::optional<std::string> label, const std::optional<std::string>& compare,
             const std::optional<std::string>& cactusPath, const std::optional<std::string>& scatterPath,
             std::ostream& out, std::ostream& err) {
  const SolverConfig cfg = flags.build();
  std::vector<SuiteReport> reports;
  reports.push_back(runSuite(dir, cfg, timeLimit, workers, label.value_or(flags.preset.value_or("custom"))));
  if (compare) {
    SolverConfig other = cfg;
    applyPreset(other, *parsePreset(*compare));
    reports.push_back(runSuite(dir, other, timeLimit, workers, *compare));
  }

  std::string csv;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    std::string part = emitCsv(reports[i]);
    csv += i == 0 ? part : part.substr(part.find('\n') + 1);
  }
  if (!writeFile(outPath, csv, err)) return 2;
  if (cactusPath && !writeFile(*cactusPath, emitCactusData(reports), err)) return 2;
  if (scatterPath) {
    if (reports.size() != 2) {
      err << "error: --scatter requires --compare\n";
      return 2;
    }
    if (!writeFile(*scatterPath, emitScatterData(reports[0], reports[1]), err)) return 2;
  }
  for (const auto& rep : reports) {
    out << emitSummary(rep);
    for (const auto& r : rep.records)
      if (r.verdict == RunVerdict::Error) err << "c error " << r.instance << ": " << r.error << "\n";
  }
  return 0;
}

int runVerify(const std::string& cnf, const std::string& modelPath, std::ostream& out, std::ostream& err) {
  const auto parsed = readDimacsFile(cnf);
  std::ifstream mf(modelPath, std::ios::binary);
  if (!mf) {
    err << "error: cannot open " << modelPath << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << mf.rdbuf();
  std::vector<std::uint32_t> missing;
  const auto model = parseModel(buf.str(), parsed.formula.variableCount(), &missing);
  if (!missing.empty()) {
    out << "c model is partial: variable " << missing.front() + 1 << " unassigned\n";
    return 1;
  }
  if (checkModel(parsed.formula, model)) {
    out << "c model satisfies formula\n";
    return 0;
  }
  out << "c model does not satisfy formula\n";
  return 1;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CDCL SAT solver with configurable phase selection and chronological backtracking", "phasesat"};
  app.require_subcommand(1);

  auto* solveCmd = app.add_subcommand("solve", "Solve one DIMACS CNF file");
  std::string solveFile;
  bool strict = false;
  SolverFlags solveFlags;
  solveCmd->add_option("cnf", solveFile, "Input CNF")->required();
  solveCmd->add_flag("--strict", strict, "Reject header/clause count mismatches");
  solveCmd->add_option("--time-limit", solveFlags.timeLimit, "Wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
  solveFlags.attach(*solveCmd);

  auto* benchCmd = app.add_subcommand("bench", "Run every .cnf in a directory");
  std::string benchDir, outPath;
  unsigned workers = 1;
  double benchLimit = 60.0;
  std::optional<std::string> label, compare, cactusPath, scatterPath;
  SolverFlags benchFlags;
  benchCmd->add_option("dir", benchDir, "Instance directory")->required();
  benchCmd->add_option("--out", outPath, "CSV output path")->required();
  benchCmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  benchCmd->add_option("--time-limit", benchLimit, "Per-instance wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
  benchCmd->add_option("--label", label, "Config label in the CSV");
  benchCmd->add_option("--compare", compare, "Also run this preset on the same instances")
      ->check(CLI::IsMember(kPresets));
  benchCmd->add_option("--cactus", cactusPath, "Write cactus plot data");
  benchCmd->add_option("--scatter", scatterPath, "Write scatter plot data (needs --compare)");
  benchFlags.attach(*benchCmd);

  auto* verifyCmd = app.add_subcommand("verify", "Check a model against a CNF file");
  std::string verifyCnf, modelPath;
  verifyCmd->add_option("cnf", verifyCnf, "Input CNF")->required();
  verifyCmd->add_option("model", modelPath, "Model file (v-lines or integers)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << app.help();
    return 2;
  }

  try {
    if (solveCmd->parsed()) return runSolve(solveFile, solveFlags, strict, out, err);
    if (benchCmd->parsed()) {
      return runBench(benchDir, benchFlags, workers, benchLimit, outPath, label, compare, cactusPath, scatterPath, out,
                      err);
    }
    return runVerify(verifyCnf, modelPath, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace phasesat
