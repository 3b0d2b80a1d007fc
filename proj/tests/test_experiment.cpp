#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "dgrec/experiment.hpp"

using namespace dgrec;

namespace {

RunConfig tiny_config() {
  RunConfig cfg;
  cfg.case_name = "homogeneous";
  cfg.epsilon = 1e-2;
  cfg.scheme.penalty = 250.0;
  cfg.scheme.gamma_a = 1e-2;
  cfg.mode = "uniform";
  cfg.levels = 2;
  cfg.initial_n = 4;
  return cfg;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("csv header names the sixteen columns in order") {
  CHECK(std::string(kCsvHeader) ==
        "N,error_DG,CV_error,eta,Eff,recov_error,CV_recov,eta_CF,eta_NC,"
        "eta_NC2,eta_J,rho_bar,gamma_bar,rho_tilde,xi,M");
}

TEST_CASE("uniform mode emits one report per level") {
  RunConfig cfg = tiny_config();
  cfg.levels = 1;
  const ExperimentResult res = run_experiment(cfg);
  CHECK(res.stop == StopReason::completed_levels);
  REQUIRE(res.reports.size() == 1);
  CHECK(res.reports[0].num_elements == 2L * 4 * 4);
  CHECK(res.reports[0].num_dofs == 3L * 2 * 4 * 4);
  CHECK(res.reports[0].error_dg > 0.0);
  CHECK(res.reports[0].eta > 0.0);
  CHECK(std::isnan(res.reports[0].cv_error));
}

TEST_CASE("each uniform row quarters the mesh size ratio") {
  const ExperimentResult res = run_experiment(tiny_config());
  REQUIRE(res.reports.size() == 2);
  CHECK(res.reports[1].num_elements == 4 * res.reports[0].num_elements);
  CHECK(res.reports[1].error_dg < res.reports[0].error_dg);
}

TEST_CASE("csv output has empty rate fields on the first row and round-trips") {
  RunConfig cfg = tiny_config();
  const ExperimentResult res = run_experiment(cfg);
  const std::string text = csv_text(res.reports);

  std::istringstream is(text);
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == kCsvHeader);
  REQUIRE(std::getline(is, line));
  const auto row1 = split_fields(line);
  REQUIRE(row1.size() == 16);
  CHECK(row1[2].empty());  // CV_error has no predecessor
  CHECK(row1[6].empty());  // CV_recov has no predecessor
  CHECK(std::strtod(row1[1].c_str(), nullptr) == res.reports[0].error_dg);
  REQUIRE(std::getline(is, line));
  const auto row2 = split_fields(line);
  REQUIRE(row2.size() == 16);
  CHECK(!row2[2].empty());
  // every numeric field round-trips bit-exactly through strtod
  CHECK(std::strtod(row2[1].c_str(), nullptr) == res.reports[1].error_dg);
  CHECK(std::strtod(row2[2].c_str(), nullptr) == res.reports[1].cv_error);
  CHECK(std::strtod(row2[3].c_str(), nullptr) == res.reports[1].eta);
  CHECK(std::strtod(row2[4].c_str(), nullptr) == res.reports[1].eff);
  CHECK(std::strtod(row2[15].c_str(), nullptr) == res.reports[1].M);
  CHECK(!std::getline(is, line));  // header + one line per report
}

TEST_CASE("rate columns follow the dof-counting convention") {
  std::vector<LevelReport> reports(2);
  reports[0].num_elements = 100;
  reports[0].error_dg = 1e-2;
  reports[0].recov_error = 4e-2;
  reports[1].num_elements = 400;
  reports[1].error_dg = 5e-3;
  reports[1].recov_error = 1e-2;
  fill_rates(reports);
  CHECK(std::isnan(reports[0].cv_error));
  CHECK(std::isnan(reports[0].cv_recov));
  // error halves while sqrt(N2/N1) = 2: first order in h
  CHECK(reports[1].cv_error == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(reports[1].cv_recov == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("runs are deterministic") {
  const ExperimentResult a = run_experiment(tiny_config());
  const ExperimentResult b = run_experiment(tiny_config());
  CHECK(csv_text(a.reports) == csv_text(b.reports));
}

TEST_CASE("the adaptive loop respects the element budget") {
  RunConfig cfg;
  cfg.case_name = "singular";
  cfg.contrast = 5.0;
  cfg.scheme.penalty = 50.0;
  cfg.scheme.gamma_a = 1.0;
  cfg.mode = "adaptive";
  cfg.initial_n = 8;
  cfg.max_elements = 400;
  cfg.max_iterations = 50;
  int callbacks = 0;
  const ExperimentResult res = run_experiment(
      cfg, [&](const LevelReport& r, const MeshHierarchy& h, const LevelSolution&) {
        ++callbacks;
        CHECK(r.num_elements == h.finest().num_tris());
      });
  CHECK(res.stop == StopReason::budget);
  CHECK(callbacks == static_cast<int>(res.reports.size()));
  REQUIRE(res.reports.size() >= 2);
  // every level before the last is within the budget; growth is monotone
  for (size_t i = 0; i + 1 < res.reports.size(); ++i) {
    CHECK(res.reports[i].num_elements <= cfg.max_elements);
    CHECK(res.reports[i].num_elements < res.reports[i + 1].num_elements);
  }
  REQUIRE(res.hierarchy.has_value());
  CHECK(res.hierarchy->finest().num_tris() == res.reports.back().num_elements);
}

TEST_CASE("adaptive refinement concentrates at the diffusion cross point") {
  RunConfig cfg;
  cfg.case_name = "singular";
  cfg.contrast = 100.0;
  cfg.scheme.penalty = 500.0;
  cfg.scheme.gamma_a = 1.0;
  cfg.mode = "adaptive";
  cfg.initial_n = 8;
  cfg.max_elements = 340;
  cfg.max_iterations = 60;
  std::vector<double> fractions;
  run_experiment(cfg, [&](const LevelReport&, const MeshHierarchy& hier,
                          const LevelSolution&) {
    const Triangulation& mesh = hier.finest();
    int hits = 0;
    for (int t = 0; t < mesh.num_tris(); ++t)
      if (mesh.centroid(t).norm() < 0.1) ++hits;
    fractions.push_back(double(hits) / mesh.num_tris());
  });
  REQUIRE(fractions.size() >= 5);
  for (int i = 0; i + 1 < 5; ++i) {
    CAPTURE(i);
    CHECK(fractions[i] < fractions[i + 1]);
  }
}

TEST_CASE("the adaptive loop stops at the iteration cap") {
  RunConfig cfg;
  cfg.case_name = "singular";
  cfg.contrast = 5.0;
  cfg.scheme.penalty = 50.0;
  cfg.scheme.gamma_a = 1.0;
  cfg.mode = "adaptive";
  cfg.initial_n = 8;
  cfg.max_elements = 100000;
  cfg.max_iterations = 3;
  const ExperimentResult res = run_experiment(cfg);
  CHECK(res.stop == StopReason::max_iterations);
  CHECK(res.reports.size() == 3);
}

}  // TEST_SUITE
