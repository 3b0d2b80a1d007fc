#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <stdexcept>

#include "dgrec/problem.hpp"
#include "dgrec/space.hpp"

namespace dgrec {

// Interior penalty variant: theta = 1 symmetric, -1 antisymmetric, 0
// incomplete.  The edge penalty is penalty * gamma_a / h_e plus, with upwind
// on, |beta . n_e| / 2.  Diffusive averages use weights (omega_plus,
// 1 - omega_plus); the convective average is unweighted.
struct SchemeParams {
  int theta = 1;
  double penalty = 250.0;
  double gamma_a = 1.0;
  bool upwind = true;
  double omega_plus = 0.5;
};

struct SparseSystem {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b;
};

// Assembles the interior penalty bilinear form and load for homogeneous
// Dirichlet data.  Dirichlet boundary edges carry the same edge terms as
// interior edges with exterior trace zero.  quad_degree <= 0 selects the
// default 2 * degree + 2.
SparseSystem assemble_system(const DgSpace& space, const Coefficients& coeffs,
                             const std::function<double(const Eigen::Vector2d&)>& f,
                             const SchemeParams& scheme, int quad_degree = 0);

// Edge penalty gamma_e evaluated with beta at the edge midpoint.
double penalty_value(const Triangulation& mesh, const Edge& e,
                     const Coefficients& coeffs, const SchemeParams& scheme);

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Sparse LU with an iterative fallback; throws SolveError with the achieved
// residual when neither reaches rel_tol.
Eigen::VectorXd solve(const SparseSystem& sys, double rel_tol = 1e-10);

}  // namespace dgrec
