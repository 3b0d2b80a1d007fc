#include <doctest.h>

#include <cmath>

#include "dgrec/space.hpp"

using namespace dgrec;

TEST_SUITE("space") {

TEST_CASE("reference basis is nodal and sums to one") {
  const Eigen::Vector2d nodes1[3] = {{0, 0}, {1, 0}, {0, 1}};
  double v[6];
  for (int k = 0; k < 3; ++k) {
    RefBasis::eval(1, nodes1[k], v);
    for (int m = 0; m < 3; ++m)
      CHECK(v[m] == doctest::Approx(k == m ? 1.0 : 0.0).epsilon(1e-14));
  }
  const Eigen::Vector2d nodes2[6] = {{0, 0},   {1, 0},   {0, 1},
                                     {0.5, 0}, {0.5, 0.5}, {0, 0.5}};
  for (int k = 0; k < 6; ++k) {
    RefBasis::eval(2, nodes2[k], v);
    for (int m = 0; m < 6; ++m)
      CHECK(v[m] == doctest::Approx(k == m ? 1.0 : 0.0).epsilon(1e-14));
  }
  // partition of unity at interior points
  for (int deg : {1, 2}) {
    RefBasis::eval(deg, {0.21, 0.37}, v);
    double s = 0.0;
    for (int m = 0; m < (deg == 1 ? 3 : 6); ++m) s += v[m];
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("basis gradients match finite differences") {
  Eigen::Vector2d g[6];
  double vp[6], vm[6];
  const Eigen::Vector2d x(0.3, 0.25);
  const double h = 1e-7;
  for (int deg : {1, 2}) {
    const int nd = deg == 1 ? 3 : 6;
    RefBasis::grad(deg, x, g);
    for (int d = 0; d < 2; ++d) {
      Eigen::Vector2d e(0, 0);
      e[d] = h;
      RefBasis::eval(deg, x + e, vp);
      RefBasis::eval(deg, x - e, vm);
      for (int m = 0; m < nd; ++m)
        CHECK(g[m][d] == doctest::Approx((vp[m] - vm[m]) / (2 * h)).epsilon(1e-6));
    }
  }
}

TEST_CASE("DgSpace maps physical points and gradients per element") {
  const Triangulation mesh = create_mesh(DomainSpec::unit_square(), 0.5);
  const DgSpace space(mesh, 1);
  CHECK(space.dim() == mesh.num_tris() * 3);
  CHECK(space.ndof_elem() == 3);
  for (int t = 0; t < mesh.num_tris(); ++t) {
    // ref_coords sends the element vertices to the reference corners
    const Eigen::Vector2d corners[3] = {{0, 0}, {1, 0}, {0, 1}};
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector2d xh = space.ref_coords(t, mesh.vertices[mesh.tris[t][k]]);
      CHECK((xh - corners[k]).norm() < 1e-13);
    }
    // global dofs are distinct
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        CHECK(space.global_dof(t, i) != space.global_dof(t, j));
  }
}

TEST_CASE("DgSolution evaluates the linear interpolant exactly") {
  const Triangulation mesh = create_mesh(DomainSpec::unit_square(), 0.5);
  const DgSpace space(mesh, 1);
  DgSolution uh;
  uh.space = &space;
  uh.coeffs = Eigen::VectorXd::Zero(space.dim());
  auto lin = [](const Eigen::Vector2d& x) { return 2.0 * x.x() - 3.0 * x.y() + 1.0; };
  for (int t = 0; t < mesh.num_tris(); ++t)
    for (int k = 0; k < 3; ++k)
      uh.coeffs[space.global_dof(t, k)] = lin(mesh.vertices[mesh.tris[t][k]]);
  for (int t = 0; t < mesh.num_tris(); ++t) {
    const Eigen::Vector2d c = mesh.centroid(t);
    CHECK(uh.value(t, c) == doctest::Approx(lin(c)).epsilon(1e-13));
    const Eigen::Vector2d g = uh.gradient(t, c);
    CHECK(g.x() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g.y() == doctest::Approx(-3.0).epsilon(1e-12));
  }
}

TEST_CASE("quadratic space reproduces quadratics") {
  const Triangulation mesh = create_mesh(DomainSpec::unit_square(), 1.0);
  const DgSpace space(mesh, 2);
  CHECK(space.ndof_elem() == 6);
  DgSolution uh;
  uh.space = &space;
  uh.coeffs = Eigen::VectorXd::Zero(space.dim());
  auto quad = [](const Eigen::Vector2d& x) {
    return x.x() * x.x() - 0.5 * x.x() * x.y() + 2.0 * x.y();
  };
  // Lagrange nodes: vertices then edge midpoints opposite each vertex order
  for (int t = 0; t < mesh.num_tris(); ++t) {
    const Eigen::Vector2d v0 = mesh.vertices[mesh.tris[t][0]];
    const Eigen::Vector2d v1 = mesh.vertices[mesh.tris[t][1]];
    const Eigen::Vector2d v2 = mesh.vertices[mesh.tris[t][2]];
    const Eigen::Vector2d nodes[6] = {v0, v1, v2, 0.5 * (v0 + v1),
                                      0.5 * (v1 + v2), 0.5 * (v2 + v0)};
    for (int k = 0; k < 6; ++k)
      uh.coeffs[space.global_dof(t, k)] = quad(nodes[k]);
  }
  for (int t = 0; t < mesh.num_tris(); ++t) {
    for (const Eigen::Vector2d& p : {mesh.centroid(t), Eigen::Vector2d(0.25, 0.125)}) {
      const Eigen::Vector3d lam = mesh.barycentric(t, p);
      if (lam.minCoeff() < -1e-12) continue;
      CHECK(uh.value(t, p) == doctest::Approx(quad(p)).epsilon(1e-12));
      const Eigen::Vector2d g = uh.gradient(t, p);
      CHECK(g.x() == doctest::Approx(2.0 * p.x() - 0.5 * p.y()).epsilon(1e-11));
      CHECK(g.y() == doctest::Approx(-0.5 * p.x() + 2.0).epsilon(1e-11));
    }
  }
}

}  // TEST_SUITE
