#include "dgrec/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <stdexcept>
#include <utility>

namespace dgrec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Triangulation initial_mesh(const BenchmarkCase& bc, const RunConfig& cfg) {
  const double extent = bc.domain.x1 - bc.domain.x0;
  return create_mesh(bc.domain, extent / cfg.initial_n);
}

}  // namespace

LevelSolution::LevelSolution(LevelSolution&& o) noexcept
    : space(std::move(o.space)),
      uh(std::move(o.uh)),
      ios(std::move(o.ios)),
      G(std::move(o.G)),
      patches(std::move(o.patches)),
      indicators(std::move(o.indicators)),
      security(std::move(o.security)) {
  uh.space = &space;
  ios.space = &space;
  G.space = &space;
}

LevelSolution& LevelSolution::operator=(LevelSolution&& o) noexcept {
  if (this != &o) {
    space = std::move(o.space);
    uh = std::move(o.uh);
    ios = std::move(o.ios);
    G = std::move(o.G);
    patches = std::move(o.patches);
    indicators = std::move(o.indicators);
    security = std::move(o.security);
    uh.space = &space;
    ios.space = &space;
    G.space = &space;
  }
  return *this;
}

LevelSolution solve_level(const MeshHierarchy& hier, const BenchmarkCase& bc,
                          const RunConfig& cfg) {
  LevelSolution ls(DgSpace(hier.finest(), cfg.degree));
  SparseSystem sys = assemble_system(ls.space, bc.coeffs, bc.f, cfg.scheme,
                                     cfg.quad_assembly);
  ls.uh = DgSolution{&ls.space, solve(sys, cfg.solver_tol)};
  ls.ios = oswald_interpolate(ls.uh);
  ls.G = recover_gradient(ls.uh, bc.coeffs);
  ls.indicators =
      local_indicators(ls.uh, ls.ios, ls.G, bc.coeffs, cfg.quad_estimator);
  ls.patches = build_patches(hier.finest());
  ls.security = security_terms(hier, ls.uh, ls.ios, ls.G, bc, ls.patches,
                               cfg.quad_estimator);
  return ls;
}

LevelReport make_report(const MeshHierarchy& hier, const LevelSolution& ls,
                        const BenchmarkCase& bc, const RunConfig& cfg) {
  LevelReport r;
  r.level = hier.finest_level();
  r.num_elements = hier.finest().num_tris();
  r.num_dofs = ls.space.dim();
  r.has_exact = bc.has_exact;

  r.eta_cf = ls.indicators.global_cf;
  r.eta_nc = ls.indicators.global_nc;
  r.eta_nc2 = ls.indicators.global_nc2;
  r.eta_j = ls.indicators.global_j;
  r.eta = ls.indicators.eta;

  r.rho_bar = ls.security.rho_bar;
  r.rho_tilde = ls.security.rho_tilde;
  r.gamma_bar = ls.security.gamma_bar;
  r.xi = ls.security.xi;
  r.M = ls.security.M;

  if (bc.has_exact) {
    const ErrorNorms en = error_norms(ls.uh, bc, cfg.quad_error);
    r.error_energy = en.energy;
    r.error_jump = en.jump;
    r.error_dg = en.dg;
    r.recov_error = recovery_error(ls.G, bc, cfg.quad_error);
    r.eff = (en.dg > 0.0) ? r.eta / en.dg : kNaN;
  } else {
    r.error_energy = r.error_jump = r.error_dg = kNaN;
    r.recov_error = kNaN;
    r.eff = kNaN;
  }
  r.cv_error = kNaN;
  r.cv_recov = kNaN;
  return r;
}

void fill_rates(std::vector<LevelReport>& reports) {
  auto rate = [](double e1, double e2, long n1, long n2) {
    if (!(e1 > 0.0) || !(e2 > 0.0) || n2 <= n1) return kNaN;
    return std::log(e1 / e2) /
           std::log(std::sqrt(static_cast<double>(n2) / static_cast<double>(n1)));
  };
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i == 0) {
      reports[i].cv_error = kNaN;
      reports[i].cv_recov = kNaN;
      continue;
    }
    const LevelReport& p = reports[i - 1];
    LevelReport& q = reports[i];
    q.cv_error = rate(p.error_dg, q.error_dg, p.num_elements, q.num_elements);
    q.cv_recov =
        rate(p.recov_error, q.recov_error, p.num_elements, q.num_elements);
  }
}

ExperimentResult run_experiment(
    const RunConfig& cfg,
    const std::function<void(const LevelReport&, const MeshHierarchy&,
                             const LevelSolution&)>& on_level) {
  validate_config(cfg);
  const BenchmarkCase bc =
      make_case(cfg.case_name, cfg.epsilon, cfg.contrast, cfg.layer_width);

  ExperimentResult result;
  MeshHierarchy hier(initial_mesh(bc, cfg));

  if (cfg.mode == "uniform") {
    result.stop = StopReason::completed_levels;
    for (int row = 0; row < cfg.levels; ++row) {
      if (row > 0) hier = uniform_refine(hier, 2);  // quadruple the elements
      try {
        const LevelSolution ls = solve_level(hier, bc, cfg);
        LevelReport rep = make_report(hier, ls, bc, cfg);
        if (on_level) on_level(rep, hier, ls);
        result.reports.push_back(rep);
      } catch (const SolveError& e) {
        result.stop = StopReason::solver_failure;
        result.solver_message = e.what();
        break;
      }
    }
  } else {  // adaptive
    for (;;) {
      std::vector<int> marked;
      try {
        const LevelSolution ls = solve_level(hier, bc, cfg);
        LevelReport rep = make_report(hier, ls, bc, cfg);
        if (on_level) on_level(rep, hier, ls);
        result.reports.push_back(rep);
        marked = mark(ls.indicators, cfg.marking_fraction);
      } catch (const SolveError& e) {
        result.stop = StopReason::solver_failure;
        result.solver_message = e.what();
        break;
      }
      if (result.reports.back().num_elements >= cfg.max_elements) {
        result.stop = StopReason::budget;
        break;
      }
      if (static_cast<int>(result.reports.size()) >= cfg.max_iterations) {
        result.stop = StopReason::max_iterations;
        break;
      }
      if (marked.empty()) {
        result.stop = StopReason::nothing_marked;
        break;
      }
      hier = refine(hier, marked, cfg.adapt_bisections);
    }
  }

  fill_rates(result.reports);
  result.hierarchy = std::move(hier);
  return result;
}

const char* const kCsvHeader =
    "N,error_DG,CV_error,eta,Eff,recov_error,CV_recov,eta_CF,eta_NC,eta_NC2,"
    "eta_J,rho_bar,gamma_bar,rho_tilde,xi,M";

namespace {

void append_field(std::string& out, double v) {
  out.push_back(',');
  if (std::isnan(v)) return;  // empty field
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  out += buf;
}

}  // namespace

std::string csv_text(const std::vector<LevelReport>& reports) {
  std::string out = kCsvHeader;
  out.push_back('\n');
  for (const LevelReport& r : reports) {
    out += std::to_string(r.num_elements);
    append_field(out, r.error_dg);
    append_field(out, r.cv_error);
    append_field(out, r.eta);
    append_field(out, r.eff);
    append_field(out, r.recov_error);
    append_field(out, r.cv_recov);
    append_field(out, r.eta_cf);
    append_field(out, r.eta_nc);
    append_field(out, r.eta_nc2);
    append_field(out, r.eta_j);
    append_field(out, r.rho_bar);
    append_field(out, r.gamma_bar);
    append_field(out, r.rho_tilde);
    append_field(out, r.xi);
    append_field(out, r.M);
    out.push_back('\n');
  }
  return out;
}

void write_csv(const std::string& path, const std::vector<LevelReport>& reports) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << csv_text(reports);
  if (!os) throw std::runtime_error("write failed: " + path);
}

namespace {

std::string sig3(double v) {
  if (std::isnan(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

void print_table(std::ostream& os, const std::vector<LevelReport>& reports) {
  const char* cols[] = {"N",      "err_DG",  "CV",     "eta",    "Eff",
                        "recov",  "CV_rec",  "eta_CF", "eta_NC", "eta_NC2",
                        "eta_J",  "rho_bar", "gamma",  "rho_til", "xi", "M"};
  for (const char* c : cols) os << std::setw(9) << c;
  os << '\n';
  for (const LevelReport& r : reports) {
    os << std::setw(9) << r.num_elements;
    for (double v : {r.error_dg, r.cv_error, r.eta, r.eff, r.recov_error,
                     r.cv_recov, r.eta_cf, r.eta_nc, r.eta_nc2, r.eta_j,
                     r.rho_bar, r.gamma_bar, r.rho_tilde, r.xi, r.M}) {
      os << std::setw(9) << sig3(v);
    }
    os << '\n';
  }
}

}  // namespace dgrec
