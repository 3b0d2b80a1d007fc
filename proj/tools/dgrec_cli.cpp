#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>

#include "dgrec/experiment.hpp"
#include "dgrec/quadrature.hpp"
#include "dgrec/vtk_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

int cmd_run(const std::string& config_path, const std::string& output_dir,
            bool vtk, int levels, const std::string& mode) {
  dgrec::RunConfig cfg;
  try {
    cfg = dgrec::parse_config(config_path);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (vtk) cfg.write_vtk = true;
    if (levels > 0) cfg.levels = levels;
    if (!mode.empty()) cfg.mode = mode;
    dgrec::validate_config(cfg);
  } catch (const dgrec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) {
    std::cerr << "config error: cannot create output directory '"
              << cfg.output_dir << "': " << ec.message() << "\n";
    return kExitConfig;
  }

  auto on_level = [&](const dgrec::LevelReport& rep,
                      const dgrec::MeshHierarchy& hier,
                      const dgrec::LevelSolution& ls) {
    if (!cfg.write_vtk) return;
    char name[64];
    std::snprintf(name, sizeof(name), "mesh_L%03d.vtk", rep.level);
    dgrec::write_mesh_vtk((fs::path(cfg.output_dir) / name).string(),
                          hier.finest(),
                          {{"eta_total", ls.indicators.total}});
    std::snprintf(name, sizeof(name), "solution_L%03d.vtk", rep.level);
    dgrec::write_solution_vtk((fs::path(cfg.output_dir) / name).string(), ls.uh,
                              {{"eta_total", ls.indicators.total}});
  };

  dgrec::ExperimentResult res;
  try {
    res = dgrec::run_experiment(cfg, on_level);
  } catch (const dgrec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  dgrec::print_table(std::cout, res.reports);
  const std::string csv_name = cfg.case_name + "_" + cfg.mode + ".csv";
  dgrec::write_csv((fs::path(cfg.output_dir) / csv_name).string(), res.reports);
  std::cout << "wrote " << (fs::path(cfg.output_dir) / csv_name).string() << "\n";

  if (res.stop == dgrec::StopReason::solver_failure) {
    std::cerr << "solver failure: " << res.solver_message << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

int cmd_case_list() {
  for (const auto& n : dgrec::case_names()) std::cout << n << "\n";
  return kExitOk;
}

// Small self-check on tiny meshes: structural invariants that need no exact
// solution.  Returns nonzero and prints the first violated check.
int cmd_check() {
  int failures = 0;
  auto expect = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
  };

  using namespace dgrec;
  // conformity and measure of a refined quadrant mesh
  Triangulation tri = create_mesh(DomainSpec::quadrants(), 0.5);
  MeshHierarchy hier(std::move(tri));
  hier = refine(hier, {0, 3}, 2);
  hier = refine(hier, {1}, 1);
  const Triangulation& m = hier.finest();
  bool conforming = true;
  for (const auto& e : m.edges) {
    const int inc = (e.tri[1] >= 0) ? 2 : 1;
    if (e.boundary != (inc == 1)) conforming = false;
  }
  expect(conforming, "refined mesh conforming (edge incidence matches flags)");
  expect(std::abs(m.total_area() - 4.0) < 1e-12, "mesh area preserved under refinement");

  // random discontinuous field: recovery is H(div), Oswald is idempotent
  DgSpace space(m, 1);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  DgSolution uh{&space, Eigen::VectorXd(space.dim())};
  for (int i = 0; i < space.dim(); ++i) uh.coeffs[i] = unif(rng);

  Coefficients coeffs;
  coeffs.a = {5.0 * Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity(),
              5.0 * Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity()};
  coeffs.beta = [](const Eigen::Vector2d&) { return Eigen::Vector2d(1, 0); };
  coeffs.mu = [](const Eigen::Vector2d&) { return 1.0; };
  coeffs.div_beta = [](const Eigen::Vector2d&) { return 0.0; };
  coeffs.c_beta_mu = 1.0;
  coeffs.sup_abs_mu = 1.0;

  RecoveredGradient G = recover_gradient(uh, coeffs);
  double max_jump = 0.0, max_norm = 0.0;
  const QuadratureRule& er = edge_rule(3);
  for (const auto& e : m.edges) {
    if (e.boundary) continue;
    const Eigen::Vector2d& pa = m.vertices[e.v[0]];
    const Eigen::Vector2d& pb = m.vertices[e.v[1]];
    const double j0 = integrate_edge(er, pa, pb, [&](const Eigen::Vector2d& x) {
      return (G.value(e.tri[0], x) - G.value(e.tri[1], x)).dot(e.normal);
    });
    max_jump = std::max(max_jump, std::abs(j0) / e.length);
  }
  for (int t = 0; t < m.num_tris(); ++t)
    max_norm = std::max(max_norm, G.value(t, m.centroid(t)).norm());
  expect(max_jump <= 1e-11 * std::max(1.0, max_norm),
         "recovered gradient normal component continuous across edges");

  OswaldInterpolant ios = oswald_interpolate(uh);
  DgSolution conf{&space, Eigen::VectorXd(space.dim())};
  for (int t = 0; t < m.num_tris(); ++t)
    for (int k = 0; k < 3; ++k)
      conf.coeffs[space.global_dof(t, k)] = ios.values[ios.node_id(t, k)];
  OswaldInterpolant again = oswald_interpolate(conf);
  expect((again.values - ios.values).cwiseAbs().maxCoeff() <= 1e-12,
         "Oswald interpolation idempotent on continuous fields");

  LocalIndicators li = local_indicators(uh, ios, G, coeffs);
  expect((li.eta_nc2.array() <= li.eta_nc.array() + 1e-15).all(),
         "reaction part of nonconformity never exceeds the full indicator");

  BenchmarkCase bc = make_singular_case(5.0);
  bc.coeffs = coeffs;  // reuse the random field against matching coefficients
  PatchSet patches = build_patches(m);
  SecurityTerms sec = security_terms(hier, uh, ios, G, bc, patches);
  expect(sec.rho_tilde <= sec.rho_bar + 1e-15,
         "robust patch residual never exceeds the plain one");

  std::vector<int> marked = mark(li);
  int argmax = 0;
  li.total.maxCoeff(&argmax);
  expect(!marked.empty() &&
             std::find(marked.begin(), marked.end(), argmax) != marked.end(),
         "marking includes the largest indicator");

  std::cout << (failures == 0 ? "check passed\n" : "check FAILED\n");
  return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interior penalty DG solver with gradient-recovery error estimation"};
  app.require_subcommand(1);

  std::string config_path, output_dir, mode;
  bool vtk = false;
  int levels = 0;

  CLI::App* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Path to a key = value config file")->required();
  run->add_option("--output-dir", output_dir, "Directory for CSV/VTK output (overrides config)");
  run->add_flag("--vtk", vtk, "Write per-level VTK meshes and solutions");
  run->add_option("--levels", levels, "Number of uniform refinement rows (overrides config)");
  run->add_option("--mode", mode, "uniform or adaptive (overrides config)")
      ->check(CLI::IsMember({"uniform", "adaptive"}));

  CLI::App* cl = app.add_subcommand("case-list", "List the built-in benchmark cases");
  CLI::App* ck = app.add_subcommand("check", "Run structural self-checks on tiny meshes");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, output_dir, vtk, levels, mode);
  if (cl->parsed()) return cmd_case_list();
  if (ck->parsed()) return cmd_check();
  return kExitOk;
}
