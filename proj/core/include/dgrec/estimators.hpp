#pragma once

#include <tuple>
#include <vector>

#include "dgrec/hierarchy.hpp"
#include "dgrec/problem.hpp"
#include "dgrec/recovery.hpp"
#include "dgrec/space.hpp"

namespace dgrec {

// Elementwise error indicators.
//  eta_cf:  || a^{-1/2} (a grad u_h - G) ||_T      (flux recovery misfit)
//  eta_nc:  energy norm of I_Os u_h - u_h on T     (nonconformity)
//  eta_nc2: reaction-weighted L2 part of eta_nc    (never exceeds eta_nc)
//  eta_j:   per-element share of the jump terms, interior edges counted half
//  total:   eta_cf + eta_nc + eta_j, the marking indicator
// Globals are l2 sums over elements (edges for eta_j); eta is the sum
// eta_cf + eta_nc + eta_nc2 + eta_j of the global contributions.
struct LocalIndicators {
  Eigen::VectorXd eta_cf, eta_nc, eta_nc2, eta_j, total;  // per element
  Eigen::VectorXd eta_j_edge;                             // per edge
  double global_cf = 0.0, global_nc = 0.0, global_nc2 = 0.0, global_j = 0.0;
  double eta = 0.0;
};

LocalIndicators local_indicators(const DgSolution& uh, const OswaldInterpolant& ios,
                                 const RecoveredGradient& G,
                                 const Coefficients& coeffs, int quad_degree = 0);

// Residual field r = f + div G - beta . grad I_Os u_h - mu I_Os u_h used by
// the data-dependent security terms.
struct SecurityTerms {
  double rho_bar = 0.0;    // hat-weighted patch residual, diffusion-scaled
  double rho_tilde = 0.0;  // reaction-robust variant (never exceeds rho_bar)
  double gamma_bar = 0.0;  // multilevel hat residuals over the hierarchy
  double xi = 0.0;         // robust data oscillation
  double M = 1.0;          // reaction bound max(1, sup|mu| / inf(mu - div b/2))
  Eigen::VectorXd rho_x;   // per vertex
  std::vector<std::tuple<int, int, double>> gamma_lz;  // (level, node, value)
  Eigen::VectorXd osc_elem;          // || f - Pi_0 f ||_T per element
  Eigen::VectorXd osc_vertex_patch;  // osc(f, omega_x) per vertex
  double osc_weighted = 0.0;  // (sum_x c_{a,omega_x}^{-1} osc(f, omega_x)^2)^{1/2}
};

// quad_degree <= 0 selects 2 * degree + 4 for all integrals involving f.
SecurityTerms security_terms(const MeshHierarchy& hier, const DgSolution& uh,
                             const OswaldInterpolant& ios,
                             const RecoveredGradient& G, const BenchmarkCase& bc,
                             const PatchSet& patches, int quad_degree = 0);

}  // namespace dgrec
