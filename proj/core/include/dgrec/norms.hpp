#pragma once

#include "dgrec/problem.hpp"
#include "dgrec/recovery.hpp"
#include "dgrec/space.hpp"

namespace dgrec {

// energy: broken norm (a grad e . grad e + (mu - div beta / 2) e^2)^{1/2};
// jump:   (sum_e h_e^{-1} ||[u_h]||_e^2)^{1/2} over interior and boundary
//         edges (exterior trace 0 on the boundary);
// dg:     energy + jump.
struct ErrorNorms {
  double energy = 0.0;
  double jump = 0.0;
  double dg = 0.0;
};

// quad_degree <= 0 selects 2 * degree + 4 + bc.extra_error_quad.
ErrorNorms error_norms(const DgSolution& uh, const BenchmarkCase& bc,
                       int quad_degree = 0);

// || a^{-1/2} (G - a grad u) || over the domain (exact-solution comparison of
// the recovered diffusive flux).
double recovery_error(const RecoveredGradient& G, const BenchmarkCase& bc,
                      int quad_degree = 0);

}  // namespace dgrec
