#include "dgrec/space.hpp"

#include <stdexcept>

namespace dgrec {

int RefBasis::ndofs(int degree) {
  if (degree == 1) return 3;
  if (degree == 2) return 6;
  throw std::invalid_argument("RefBasis: degree must be 1 or 2");
}

void RefBasis::eval(int degree, const Eigen::Vector2d& xhat, double* v) {
  const double l0 = 1.0 - xhat.x() - xhat.y();
  const double l1 = xhat.x();
  const double l2 = xhat.y();
  if (degree == 1) {
    v[0] = l0;
    v[1] = l1;
    v[2] = l2;
    return;
  }
  if (degree == 2) {
    v[0] = l0 * (2.0 * l0 - 1.0);
    v[1] = l1 * (2.0 * l1 - 1.0);
    v[2] = l2 * (2.0 * l2 - 1.0);
    v[3] = 4.0 * l0 * l1;
    v[4] = 4.0 * l1 * l2;
    v[5] = 4.0 * l2 * l0;
    return;
  }
  throw std::invalid_argument("RefBasis: degree must be 1 or 2");
}

void RefBasis::grad(int degree, const Eigen::Vector2d& xhat, Eigen::Vector2d* g) {
  const double l0 = 1.0 - xhat.x() - xhat.y();
  const double l1 = xhat.x();
  const double l2 = xhat.y();
  const Eigen::Vector2d d0(-1.0, -1.0), d1(1.0, 0.0), d2(0.0, 1.0);
  if (degree == 1) {
    g[0] = d0;
    g[1] = d1;
    g[2] = d2;
    return;
  }
  if (degree == 2) {
    g[0] = (4.0 * l0 - 1.0) * d0;
    g[1] = (4.0 * l1 - 1.0) * d1;
    g[2] = (4.0 * l2 - 1.0) * d2;
    g[3] = 4.0 * (l1 * d0 + l0 * d1);
    g[4] = 4.0 * (l2 * d1 + l1 * d2);
    g[5] = 4.0 * (l0 * d2 + l2 * d0);
    return;
  }
  throw std::invalid_argument("RefBasis: degree must be 1 or 2");
}

void RefBasis::nodes(int degree, Eigen::Vector2d* xhat) {
  xhat[0] = {0.0, 0.0};
  xhat[1] = {1.0, 0.0};
  xhat[2] = {0.0, 1.0};
  if (degree == 2) {
    xhat[3] = {0.5, 0.0};
    xhat[4] = {0.5, 0.5};
    xhat[5] = {0.0, 0.5};
  }
}

DgSpace::DgSpace(const Triangulation& mesh, int degree)
    : mesh_(&mesh), degree_(degree), nd_(RefBasis::ndofs(degree)) {
  jac_inv_t_.resize(mesh.num_tris());
  for (int t = 0; t < mesh.num_tris(); ++t) {
    const auto& tr = mesh.tris[t];
    Eigen::Matrix2d J;
    J.col(0) = mesh.vertices[tr[1]] - mesh.vertices[tr[0]];
    J.col(1) = mesh.vertices[tr[2]] - mesh.vertices[tr[0]];
    jac_inv_t_[t] = J.inverse().transpose();
  }
}

Eigen::Vector2d DgSpace::ref_coords(int t, const Eigen::Vector2d& x) const {
  const Eigen::Vector2d d = x - mesh_->vertices[mesh_->tris[t][0]];
  return jac_inv_t_[t].transpose() * d;
}

Eigen::Vector2d DgSpace::push_grad(int t, const Eigen::Vector2d& ref_grad) const {
  return jac_inv_t_[t] * ref_grad;
}

double DgSolution::value(int elem, const Eigen::Vector2d& x) const {
  const int nd = space->ndof_elem();
  double v[6];
  RefBasis::eval(space->degree(), space->ref_coords(elem, x), v);
  double s = 0.0;
  for (int k = 0; k < nd; ++k) s += coeffs[space->global_dof(elem, k)] * v[k];
  return s;
}

Eigen::Vector2d DgSolution::gradient(int elem, const Eigen::Vector2d& x) const {
  const int nd = space->ndof_elem();
  Eigen::Vector2d g[6];
  RefBasis::grad(space->degree(), space->ref_coords(elem, x), g);
  Eigen::Vector2d s(0.0, 0.0);
  for (int k = 0; k < nd; ++k) s += coeffs[space->global_dof(elem, k)] * g[k];
  return space->push_grad(elem, s);
}

}  // namespace dgrec
