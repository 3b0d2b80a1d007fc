#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dgrec/adapt.hpp"
#include "dgrec/config.hpp"
#include "dgrec/estimators.hpp"
#include "dgrec/norms.hpp"

namespace dgrec {

struct LevelReport {
  int level = 0;  // hierarchy level index of the reported mesh
  long num_elements = 0;
  long num_dofs = 0;
  bool has_exact = true;
  double error_energy = 0.0, error_jump = 0.0, error_dg = 0.0;
  double eta_cf = 0.0, eta_nc = 0.0, eta_nc2 = 0.0, eta_j = 0.0, eta = 0.0;
  double rho_bar = 0.0, rho_tilde = 0.0, gamma_bar = 0.0, xi = 0.0, M = 1.0;
  double recov_error = 0.0;
  double eff = 0.0;       // NaN when the error vanishes or is unavailable
  double cv_error = 0.0;  // NaN on the first row
  double cv_recov = 0.0;
};

enum class StopReason {
  completed_levels,  // uniform mode finished all rows
  budget,            // adaptive element budget reached
  max_iterations,
  nothing_marked,
  solver_failure,
};

// Full state of one solved mesh, for callers that want more than the report.
// uh, ios and G point at the space member; moves rebind those pointers.
struct LevelSolution {
  DgSpace space;
  DgSolution uh;
  OswaldInterpolant ios;
  RecoveredGradient G;
  PatchSet patches;
  LocalIndicators indicators;
  SecurityTerms security;

  explicit LevelSolution(DgSpace s) : space(std::move(s)) {}
  LevelSolution(LevelSolution&& o) noexcept;
  LevelSolution& operator=(LevelSolution&& o) noexcept;
  LevelSolution(const LevelSolution&) = delete;
  LevelSolution& operator=(const LevelSolution&) = delete;
};

struct ExperimentResult {
  std::vector<LevelReport> reports;
  StopReason stop = StopReason::completed_levels;
  std::string solver_message;  // non-empty on solver failure
  std::optional<MeshHierarchy> hierarchy;
};

// Solves, recovers and estimates on the finest level of the hierarchy.
LevelSolution solve_level(const MeshHierarchy& hier, const BenchmarkCase& bc,
                          const RunConfig& cfg);

LevelReport make_report(const MeshHierarchy& hier, const LevelSolution& ls,
                        const BenchmarkCase& bc, const RunConfig& cfg);

// Convergence rate columns between consecutive rows:
// log(e1 / e2) / log(sqrt(N2 / N1)).
void fill_rates(std::vector<LevelReport>& reports);

// Runs the configured experiment (uniform refinement rows or the adaptive
// loop).  on_level, when set, observes every reported mesh.  A solver failure
// stops the run and returns the partial reports with stop = solver_failure.
ExperimentResult run_experiment(
    const RunConfig& cfg,
    const std::function<void(const LevelReport&, const MeshHierarchy&,
                             const LevelSolution&)>& on_level = {});

// Machine output: fixed 16-column CSV; missing values (first-row rates,
// degenerate effectivity) are empty fields.  The format round-trips doubles
// bit-exactly.
extern const char* const kCsvHeader;
std::string csv_text(const std::vector<LevelReport>& reports);
void write_csv(const std::string& path, const std::vector<LevelReport>& reports);

// Human-readable table, 3 significant digits.
void print_table(std::ostream& os, const std::vector<LevelReport>& reports);

}  // namespace dgrec
