#include "dgrec/assemble.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dgrec/quadrature.hpp"

namespace dgrec {

double penalty_value(const Triangulation& mesh, const Edge& e,
                     const Coefficients& coeffs, const SchemeParams& scheme) {
  double g = scheme.penalty * scheme.gamma_a / e.length;
  if (scheme.upwind && !coeffs.beta_is_zero) {
    const Eigen::Vector2d mid = 0.5 * (mesh.vertices[e.v[0]] + mesh.vertices[e.v[1]]);
    g += 0.5 * std::abs(coeffs.beta(mid).dot(e.normal));
  }
  return g;
}

SparseSystem assemble_system(const DgSpace& space, const Coefficients& coeffs,
                             const std::function<double(const Eigen::Vector2d&)>& f,
                             const SchemeParams& scheme, int quad_degree) {
  const Triangulation& mesh = space.mesh();
  const int nd = space.ndof_elem();
  const int deg = quad_degree > 0 ? quad_degree : 2 * space.degree() + 2;
  const QuadratureRule& vrule = triangle_rule(deg);
  const QuadratureRule& erule = edge_rule(deg);

  SparseSystem sys;
  sys.b = Eigen::VectorXd::Zero(space.dim());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(mesh.num_tris()) * nd * nd +
               static_cast<size_t>(mesh.num_edges()) * 4 * nd * nd);

  // Reference basis at volume quadrature points.
  const int nq = vrule.size();
  std::vector<double> bval(nq * nd);
  std::vector<Eigen::Vector2d> bgrad(nq * nd);
  for (int q = 0; q < nq; ++q) {
    RefBasis::eval(space.degree(), vrule.points[q], &bval[q * nd]);
    RefBasis::grad(space.degree(), vrule.points[q], &bgrad[q * nd]);
  }

  Eigen::MatrixXd local(nd, nd);
  Eigen::VectorXd lrhs(nd);
  for (int t = 0; t < mesh.num_tris(); ++t) {
    const auto& tr = mesh.tris[t];
    const Eigen::Vector2d p0 = mesh.vertices[tr[0]];
    const Eigen::Vector2d e1 = mesh.vertices[tr[1]] - p0;
    const Eigen::Vector2d e2 = mesh.vertices[tr[2]] - p0;
    const double jac = std::abs(e1.x() * e2.y() - e1.y() * e2.x());
    const Eigen::Matrix2d& a = coeffs.A(mesh.subdomain[t]);
    local.setZero();
    lrhs.setZero();
    for (int q = 0; q < nq; ++q) {
      const Eigen::Vector2d x = p0 + vrule.points[q].x() * e1 + vrule.points[q].y() * e2;
      const double w = vrule.weights[q] * jac;
      const double react = coeffs.mu(x) - coeffs.div_beta(x);
      const Eigen::Vector2d beta = coeffs.beta_is_zero
                                       ? Eigen::Vector2d(0.0, 0.0)
                                       : coeffs.beta(x);
      Eigen::Vector2d g[6];
      for (int k = 0; k < nd; ++k) g[k] = space.push_grad(t, bgrad[q * nd + k]);
      const double* v = &bval[q * nd];
      const double fx = f(x);
      for (int i = 0; i < nd; ++i) {
        lrhs[i] += w * fx * v[i];
        for (int j = 0; j < nd; ++j) {
          double s = g[i].dot(a * g[j]) + react * v[i] * v[j];
          s -= v[j] * beta.dot(g[i]);  // -(u, beta . grad v)
          local(i, j) += w * s;
        }
      }
    }
    for (int i = 0; i < nd; ++i) {
      sys.b[space.global_dof(t, i)] += lrhs[i];
      for (int j = 0; j < nd; ++j)
        trip.emplace_back(space.global_dof(t, i), space.global_dof(t, j), local(i, j));
    }
  }

  // Edge terms.  Side 0 is e.tri[0] with outward normal e.normal; side 1 is
  // e.tri[1] with the opposite normal.
  const int ne = erule.size();
  Eigen::MatrixXd eloc(2 * nd, 2 * nd);
  for (const auto& e : mesh.edges) {
    const int nsides = e.boundary ? 1 : 2;
    const int tri_of[2] = {e.tri[0], e.tri[1]};
    const Eigen::Vector2d pa = mesh.vertices[e.v[0]];
    const Eigen::Vector2d pb = mesh.vertices[e.v[1]];
    const double gamma_e_base = scheme.penalty * scheme.gamma_a / e.length;
    const double wdiff[2] = {e.boundary ? 1.0 : scheme.omega_plus,
                             1.0 - scheme.omega_plus};
    const double wconv[2] = {e.boundary ? 1.0 : 0.5, 0.5};

    eloc.setZero();
    for (int q = 0; q < ne; ++q) {
      const double tq = erule.points[q].x();
      const Eigen::Vector2d x = pa + tq * (pb - pa);
      const double w = erule.weights[q] * e.length;
      const Eigen::Vector2d beta = coeffs.beta_is_zero
                                       ? Eigen::Vector2d(0.0, 0.0)
                                       : coeffs.beta(x);
      double gamma_e = gamma_e_base;
      if (scheme.upwind && !coeffs.beta_is_zero)
        gamma_e += 0.5 * std::abs(beta.dot(e.normal));

      double val[2][6];
      Eigen::Vector2d agrad[2][6];
      for (int s = 0; s < nsides; ++s) {
        const int t = tri_of[s];
        const Eigen::Vector2d xhat = space.ref_coords(t, x);
        Eigen::Vector2d g[6];
        RefBasis::eval(space.degree(), xhat, val[s]);
        RefBasis::grad(space.degree(), xhat, g);
        const Eigen::Matrix2d& a = coeffs.A(mesh.subdomain[t]);
        for (int k = 0; k < nd; ++k) agrad[s][k] = a * space.push_grad(t, g[k]);
      }
      const Eigen::Vector2d nrm[2] = {e.normal, -e.normal};

      for (int sv = 0; sv < nsides; ++sv) {
        for (int su = 0; su < nsides; ++su) {
          const double ndot = nrm[su].dot(nrm[sv]);
          for (int i = 0; i < nd; ++i) {
            for (int j = 0; j < nd; ++j) {
              double s = 0.0;
              // - theta {a grad v}_w . [u]  - {a grad u}_w . [v]
              s -= scheme.theta * wdiff[sv] * agrad[sv][i].dot(nrm[su]) * val[su][j];
              s -= wdiff[su] * agrad[su][j].dot(nrm[sv]) * val[sv][i];
              // gamma_e [u].[v] + {u} beta . [v]
              s += gamma_e * ndot * val[su][j] * val[sv][i];
              s += wconv[su] * val[su][j] * beta.dot(nrm[sv]) * val[sv][i];
              eloc(sv * nd + i, su * nd + j) += w * s;
            }
          }
        }
      }
    }
    for (int sv = 0; sv < nsides; ++sv)
      for (int su = 0; su < nsides; ++su)
        for (int i = 0; i < nd; ++i)
          for (int j = 0; j < nd; ++j)
            trip.emplace_back(space.global_dof(tri_of[sv], i),
                              space.global_dof(tri_of[su], j),
                              eloc(sv * nd + i, su * nd + j));
  }

  sys.A.resize(space.dim(), space.dim());
  sys.A.setFromTriplets(trip.begin(), trip.end());
  return sys;
}

Eigen::VectorXd solve(const SparseSystem& sys, double rel_tol) {
  const double bnorm = sys.b.norm();
  if (bnorm == 0.0) return Eigen::VectorXd::Zero(sys.b.size());

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(sys.A);
  lu.factorize(sys.A);
  double residual = std::numeric_limits<double>::infinity();
  if (lu.info() == Eigen::Success) {
    Eigen::VectorXd x = lu.solve(sys.b);
    residual = (sys.A * x - sys.b).norm() / bnorm;
    if (residual <= rel_tol) return x;
  }

  Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> it;
  it.setTolerance(rel_tol);
  it.setMaxIterations(2000);
  it.compute(sys.A);
  if (it.info() == Eigen::Success) {
    Eigen::VectorXd x = it.solve(sys.b);
    const double r = (sys.A * x - sys.b).norm() / bnorm;
    residual = std::min(residual, r);
    if (r <= rel_tol * 100.0) return x;
  }
  throw SolveError("linear solve failed, relative residual " +
                       std::to_string(residual),
                   residual);
}

}  // namespace dgrec
