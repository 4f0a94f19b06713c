// Writes the bundled benchmark pack: uniform random 3-SAT at 50 variables /
// 218 clauses, split into satisfiable and unsatisfiable instances.
//
//   make_pack <out-dir> [--per-class N] [--seed S]
//   make_pack <out-dir> --deep-core
//
// --deep-core instead writes a few instances whose refutations need backjumps
// of more than 100 levels.
//
// Each candidate is classified by two solver configurations that must agree;
// satisfiable candidates additionally have their model checked.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "phasesat/dimacs.hpp"
#include "phasesat/generators.hpp"
#include "phasesat/solver.hpp"
#include "phasesat/verifier.hpp"

using namespace phasesat;

int main(int argc, char** argv) {
  CLI::App app{"Generate the random 3-SAT benchmark pack", "make_pack"};
  std::string outDir;
  unsigned perClass = 100;
  std::uint64_t seed = 1;
  app.add_option("out", outDir, "Output directory")->required();
  app.add_option("--per-class", perClass, "Instances per verdict");
  app.add_option("--seed", seed, "First generator seed");
  bool deepCore = false;
  app.add_flag("--deep-core", deepCore, "Write the deep-core instances instead");
  CLI11_PARSE(app, argc, argv);

  std::filesystem::create_directories(outDir);
  if (deepCore) {
    const std::pair<unsigned, unsigned> shapes[] = {{120, 4}, {150, 4}, {150, 5}, {200, 5}, {250, 6}};
    for (auto [fillers, holes] : shapes) {
      char name[64];
      std::snprintf(name, sizeof name, "deep-%u-php%u.cnf", fillers, holes);
      std::ofstream out(std::filesystem::path(outDir) / name);
      out << "c " << fillers << " free variables, pigeonhole " << holes + 1 << "/" << holes
          << " core guarded by variable 1\n";
      out << writeDimacs(deepCoreInstance(fillers, holes));
    }
    std::cout << "wrote deep-core instances to " << outDir << "\n";
    return 0;
  }
  SolverConfig saved;
  saved.cbPhaseHeuristic = PhaseHeuristic::Saved;
  SolverConfig lsids;
  lsids.cbMinConflictsC = 0;
  lsids.cbThresholdT = 0;

  unsigned sat = 0, unsat = 0;
  for (std::uint64_t s = seed; sat < perClass || unsat < perClass; ++s) {
    const Formula f = randomKCnf(50, 218, 3, s);
    const SolveResult a = solve(f, saved);
    const SolveResult b = solve(f, lsids);
    if (a.verdict != b.verdict) {
      std::cerr << "disagreement on seed " << s << "\n";
      return 1;
    }
    const bool isSat = a.verdict == Verdict::Sat;
    if (isSat && !checkModel(f, a.model)) return 1;
    unsigned& count = isSat ? sat : unsat;
    if (count >= perClass) continue;
    ++count;
    char name[64];
    std::snprintf(name, sizeof name, "%s50-218-%03u.cnf", isSat ? "uf" : "uuf", count);
    std::ofstream out(std::filesystem::path(outDir) / name);
    out << "c uniform random 3-SAT, 50 variables, 218 clauses, generator seed " << s << "\n";
    out << "c " << (isSat ? "satisfiable" : "unsatisfiable") << "\n";
    out << writeDimacs(f);
  }
  std::cout << "wrote " << sat << " satisfiable and " << unsat << " unsatisfiable instances to " << outDir << "\n";
  return 0;
}
