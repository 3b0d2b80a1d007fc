#include "dgrec/norms.hpp"

#include <cmath>

#include "dgrec/quadrature.hpp"

namespace dgrec {

ErrorNorms error_norms(const DgSolution& uh, const BenchmarkCase& bc,
                       int quad_degree) {
  const DgSpace& space = *uh.space;
  const Triangulation& mesh = space.mesh();
  const int deg = quad_degree > 0
                      ? quad_degree
                      : 2 * space.degree() + 4 + bc.extra_error_quad;
  const QuadratureRule& vrule = triangle_rule(deg);
  const QuadratureRule& jrule = edge_rule(2 * space.degree() + 2);

  double energy2 = 0.0;
  for (int t = 0; t < mesh.num_tris(); ++t) {
    const Eigen::Matrix2d& a = bc.coeffs.A(mesh.subdomain[t]);
    const auto& tr = mesh.tris[t];
    energy2 += integrate_triangle(
        vrule, mesh.vertices[tr[0]], mesh.vertices[tr[1]], mesh.vertices[tr[2]],
        [&](const Eigen::Vector2d& x) {
          const Eigen::Vector2d ge = bc.grad_u(x) - uh.gradient(t, x);
          const double e = bc.u(x) - uh.value(t, x);
          const double w = std::max(0.0, bc.coeffs.reaction_weight(x));
          return ge.dot(a * ge) + w * e * e;
        });
  }

  double jump2 = 0.0;
  for (const auto& e : mesh.edges) {
    const Eigen::Vector2d& pa = mesh.vertices[e.v[0]];
    const Eigen::Vector2d& pb = mesh.vertices[e.v[1]];
    const double J = integrate_edge(jrule, pa, pb, [&](const Eigen::Vector2d& x) {
      double j = uh.value(e.tri[0], x);
      if (!e.boundary) j -= uh.value(e.tri[1], x);
      return j * j;
    });
    jump2 += J / e.length;
  }

  ErrorNorms n;
  n.energy = std::sqrt(energy2);
  n.jump = std::sqrt(jump2);
  n.dg = n.energy + n.jump;
  return n;
}

double recovery_error(const RecoveredGradient& G, const BenchmarkCase& bc,
                      int quad_degree) {
  const DgSpace& space = *G.space;
  const Triangulation& mesh = space.mesh();
  const int deg = quad_degree > 0
                      ? quad_degree
                      : 2 * space.degree() + 4 + bc.extra_error_quad;
  const QuadratureRule& vrule = triangle_rule(deg);

  std::vector<Eigen::Matrix2d> ainv;
  ainv.reserve(bc.coeffs.a.size());
  for (const auto& a : bc.coeffs.a) ainv.push_back(a.inverse());

  double s2 = 0.0;
  for (int t = 0; t < mesh.num_tris(); ++t) {
    const int tag = mesh.subdomain[t];
    const Eigen::Matrix2d& a = bc.coeffs.A(tag);
    const Eigen::Matrix2d& ai = ainv[tag];
    const auto& tr = mesh.tris[t];
    s2 += integrate_triangle(
        vrule, mesh.vertices[tr[0]], mesh.vertices[tr[1]], mesh.vertices[tr[2]],
        [&](const Eigen::Vector2d& x) {
          const Eigen::Vector2d d = G.value(t, x) - a * bc.grad_u(x);
          return d.dot(ai * d);
        });
  }
  return std::sqrt(s2);
}

}  // namespace dgrec
