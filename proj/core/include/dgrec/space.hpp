#pragma once

#include <Eigen/Dense>

#include "dgrec/mesh.hpp"

namespace dgrec {

// Nodal Lagrange basis of P_degree on the reference triangle
// {x >= 0, y >= 0, x + y <= 1}.  Degree 1 nodes: the vertices; degree 2 adds
// the edge midpoints in the order m01, m12, m20.
struct RefBasis {
  static int ndofs(int degree);
  static void eval(int degree, const Eigen::Vector2d& xhat, double* values);
  static void grad(int degree, const Eigen::Vector2d& xhat, Eigen::Vector2d* grads);
  // Reference coordinates of the Lagrange nodes.
  static void nodes(int degree, Eigen::Vector2d* xhat);
};

// Broken polynomial space: one independent P_degree polynomial per triangle.
// Dof layout: element-major, elem * ndof_elem() + local.
class DgSpace {
 public:
  DgSpace(const Triangulation& mesh, int degree);

  const Triangulation& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int ndof_elem() const { return nd_; }
  int dim() const { return nd_ * mesh_->num_tris(); }
  int global_dof(int elem, int local) const { return elem * nd_ + local; }

  // Reference coordinates of x with respect to the affine map of element t.
  Eigen::Vector2d ref_coords(int t, const Eigen::Vector2d& x) const;
  // Maps a reference gradient to the physical gradient on element t.
  Eigen::Vector2d push_grad(int t, const Eigen::Vector2d& ref_grad) const;

 private:
  const Triangulation* mesh_;
  int degree_;
  int nd_;
  std::vector<Eigen::Matrix2d> jac_inv_t_;  // J^{-T} per element
};

struct DgSolution {
  const DgSpace* space = nullptr;
  Eigen::VectorXd coeffs;

  double value(int elem, const Eigen::Vector2d& x) const;
  Eigen::Vector2d gradient(int elem, const Eigen::Vector2d& x) const;
};

}  // namespace dgrec
