// Cross-run invariant: the measured DG-norm error should not increase from
// one adaptive level to the next by more than 5% (slack for pre-asymptotic
// meshes).  The two checkerboard runs satisfy this.  The boundary-layer run
// is expected to violate it on its first refinements and is kept here as a
// known limitation: the exact solution's 1e-3-wide layer is invisible to
// fixed-degree quadrature on coarse elements, so the measured error grows
// while refinement resolves the layer (observed about +21% on the first
// step) before it starts to decrease.
#include <doctest.h>

#include <string>
#include <vector>

#include "dgrec/experiment.hpp"

using namespace dgrec;

namespace {

void check_non_increasing(const RunConfig& cfg, const std::string& label) {
  const ExperimentResult res = run_experiment(cfg);
  REQUIRE(res.reports.size() >= 3);
  for (size_t i = 0; i + 1 < res.reports.size(); ++i) {
    const double prev = res.reports[i].error_dg;
    const double next = res.reports[i + 1].error_dg;
    CHECK_MESSAGE(next <= 1.05 * prev,
                  label << ": level " << i << " -> " << i + 1 << ": " << prev
                        << " -> " << next);
  }
}

}  // namespace

TEST_SUITE("invariants") {

TEST_CASE("DG error is non-increasing across adaptive levels: contrast 5") {
  RunConfig cfg;
  cfg.case_name = "singular";
  cfg.contrast = 5.0;
  cfg.scheme.penalty = 50.0;
  cfg.scheme.gamma_a = 1.0;
  cfg.mode = "adaptive";
  cfg.initial_n = 8;
  cfg.max_elements = 2000;
  cfg.max_iterations = 60;
  check_non_increasing(cfg, "contrast 5");
}

TEST_CASE("DG error is non-increasing across adaptive levels: contrast 100") {
  RunConfig cfg;
  cfg.case_name = "singular";
  cfg.contrast = 100.0;
  cfg.scheme.penalty = 500.0;
  cfg.scheme.gamma_a = 1.0;
  cfg.mode = "adaptive";
  cfg.initial_n = 8;
  cfg.max_elements = 1200;
  cfg.max_iterations = 60;
  check_non_increasing(cfg, "contrast 100");
}

TEST_CASE("DG error is non-increasing across adaptive levels: boundary layer") {
  // Known honest failure; see the header comment.
  RunConfig cfg;
  cfg.case_name = "boundary_layer";
  cfg.epsilon = 1e-2;
  cfg.layer_width = 1e-3;
  cfg.scheme.penalty = 250.0;
  cfg.scheme.gamma_a = 1e-2;
  cfg.mode = "adaptive";
  cfg.initial_n = 16;
  cfg.max_elements = 2500;
  cfg.max_iterations = 200;
  check_non_increasing(cfg, "boundary layer");
}

}  // TEST_SUITE
