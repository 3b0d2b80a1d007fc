#include <doctest.h>

#include <cmath>
#include <random>

#include "dgrec/estimators.hpp"
#include "oracle_helpers.hpp"

using namespace dgrec;

namespace {

DgSolution zero_field(const DgSpace& space) {
  DgSolution uh;
  uh.space = &space;
  uh.coeffs = Eigen::VectorXd::Zero(space.dim());
  return uh;
}

DgSolution random_field(const DgSpace& space, unsigned seed) {
  DgSolution uh;
  uh.space = &space;
  uh.coeffs.resize(space.dim());
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < space.dim(); ++i) uh.coeffs[i] = dist(rng);
  return uh;
}

// unit square, a = I, f(x, y) = x; beta / mu supplied by the caller
BenchmarkCase micro_case() {
  BenchmarkCase bc;
  bc.name = "micro";
  bc.domain = DomainSpec::unit_square();
  bc.coeffs.a = {Eigen::Matrix2d::Identity()};
  bc.coeffs.beta = [](const Eigen::Vector2d&) { return Eigen::Vector2d(0, 0); };
  bc.coeffs.beta_is_zero = true;
  bc.coeffs.mu = [](const Eigen::Vector2d&) { return 1.0; };
  bc.coeffs.div_beta = [](const Eigen::Vector2d&) { return 0.0; };
  bc.coeffs.c_beta_mu = 1.0;
  bc.coeffs.sup_abs_mu = 1.0;
  bc.has_exact = false;
  bc.f = [](const Eigen::Vector2d& x) { return x.x(); };
  return bc;
}

int vertex_at(const Triangulation& mesh, double x, double y) {
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if ((mesh.vertices[v] - Eigen::Vector2d(x, y)).norm() < 1e-12) return v;
  return -1;
}

}  // namespace

TEST_SUITE("estimators") {

TEST_CASE("zero field on the two-triangle square: closed-form security terms") {
  const BenchmarkCase bc = micro_case();
  MeshHierarchy hier(create_mesh(bc.domain, 1.0));
  const Triangulation& mesh = hier.finest();
  REQUIRE(mesh.num_tris() == 2);
  const DgSpace space(mesh, 1);
  const DgSolution uh = zero_field(space);
  const OswaldInterpolant ios = oswald_interpolate(uh);
  const RecoveredGradient G = recover_gradient(uh, bc.coeffs);
  const PatchSet patches = build_patches(mesh);
  const SecurityTerms st = security_terms(hier, uh, ios, G, bc, patches, 8);

  // residual r = f = x; every vertex is on the boundary, so rbar = 0 and
  // rho_x = h_x sqrt(int x^2 lambda_x) with patch diameter h_x = sqrt 2.
  // The four hat-weighted integrals are 1/15, 1/10, 3/20, 1/60 by corner.
  CHECK(st.rho_x[vertex_at(mesh, 0, 0)] ==
        doctest::Approx(std::sqrt(2.0 / 15.0)).epsilon(1e-12));
  CHECK(st.rho_x[vertex_at(mesh, 1, 0)] ==
        doctest::Approx(std::sqrt(1.0 / 5.0)).epsilon(1e-12));
  CHECK(st.rho_x[vertex_at(mesh, 1, 1)] ==
        doctest::Approx(std::sqrt(3.0 / 10.0)).epsilon(1e-12));
  CHECK(st.rho_x[vertex_at(mesh, 0, 1)] ==
        doctest::Approx(std::sqrt(1.0 / 30.0)).epsilon(1e-12));
  CHECK(st.rho_bar == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  // alpha_x = min(1, sqrt 2) = 1, so the robust variant drops the h_x^2
  CHECK(st.rho_tilde == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
  CHECK(st.rho_tilde <= st.rho_bar);

  // all coarse-level hats sit at boundary vertices: no multilevel residuals
  CHECK(st.gamma_lz.empty());
  CHECK(st.gamma_bar == 0.0);

  // int_T (x - xbar)^2 = 1/36 on both triangles
  CHECK(st.osc_elem[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(st.osc_elem[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(st.xi == doctest::Approx(std::sqrt(1.0 / 18.0)).epsilon(1e-12));
  // patch oscillation: h_T^2 osc_T^2 = 1/18 per element
  CHECK(st.osc_vertex_patch[vertex_at(mesh, 1, 0)] ==
        doctest::Approx(std::sqrt(1.0 / 18.0)).epsilon(1e-12));
  CHECK(st.osc_vertex_patch[vertex_at(mesh, 0, 0)] ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(st.osc_weighted == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
  CHECK(st.M == doctest::Approx(1.0));

  // the zero field has no recovery misfit, nonconformity, or jumps
  const LocalIndicators li = local_indicators(uh, ios, G, bc.coeffs, 8);
  CHECK(li.eta == 0.0);
  CHECK(li.eta_cf.norm() == 0.0);
  CHECK(li.eta_nc.norm() == 0.0);
  CHECK(li.eta_j.norm() == 0.0);
}

TEST_CASE("reaction bound M reflects sup|mu| over the coercivity constant") {
  // beta = (x, y) has div beta = 2; with mu = 2 the lower bound mu - div/2
  // is 1 while sup|mu| = 2, so M = 2.  The residual is unchanged (the field
  // is zero), hence all other closed-form values stay as above.
  BenchmarkCase bc = micro_case();
  bc.coeffs.beta = [](const Eigen::Vector2d& x) { return x; };
  bc.coeffs.beta_is_zero = false;
  bc.coeffs.div_beta = [](const Eigen::Vector2d&) { return 2.0; };
  bc.coeffs.mu = [](const Eigen::Vector2d&) { return 2.0; };
  bc.coeffs.c_beta_mu = 1.0;
  bc.coeffs.sup_abs_mu = 2.0;

  MeshHierarchy hier(create_mesh(bc.domain, 1.0));
  const DgSpace space(hier.finest(), 1);
  const DgSolution uh = zero_field(space);
  const OswaldInterpolant ios = oswald_interpolate(uh);
  const RecoveredGradient G = recover_gradient(uh, bc.coeffs);
  const PatchSet patches = build_patches(hier.finest());
  const SecurityTerms st = security_terms(hier, uh, ios, G, bc, patches, 8);
  CHECK(st.M == doctest::Approx(2.0));
  CHECK(st.rho_bar == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  CHECK(st.rho_tilde == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
  CHECK(st.xi == doctest::Approx(std::sqrt(1.0 / 18.0)).epsilon(1e-12));
}

TEST_CASE("multilevel hat residual on a once-refined square is a hat integral") {
  BenchmarkCase bc = micro_case();
  bc.f = [](const Eigen::Vector2d&) { return 1.0; };
  MeshHierarchy hier(create_mesh(bc.domain, 1.0));
  hier = refine(hier, {0, 1}, 1);
  const Triangulation& mesh = hier.finest();
  REQUIRE(mesh.num_tris() == 4);
  const DgSpace space(mesh, 1);
  const DgSolution uh = zero_field(space);
  const OswaldInterpolant ios = oswald_interpolate(uh);
  const RecoveredGradient G = recover_gradient(uh, bc.coeffs);
  const PatchSet patches = build_patches(mesh);
  const SecurityTerms st = security_terms(hier, uh, ios, G, bc, patches, 8);

  // level 0 contributes nothing (all four corners are boundary nodes); level 1
  // has a single interior new node, the diagonal midpoint, with
  // gamma = | -int f hat | = area(support) / 3 = 1/3.
  REQUIRE(st.gamma_lz.size() == 1);
  CHECK(std::get<0>(st.gamma_lz[0]) == 1);
  CHECK(std::get<1>(st.gamma_lz[0]) == 4);
  CHECK((mesh.vertices[4] - Eigen::Vector2d(0.5, 0.5)).norm() < 1e-14);
  CHECK(std::get<2>(st.gamma_lz[0]) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(st.gamma_bar == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("indicators match a brute-force recomputation") {
  Coefficients coeffs;
  coeffs.a = {2 * Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity(),
              2 * Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity()};
  coeffs.beta = [](const Eigen::Vector2d&) { return Eigen::Vector2d(1.0, 0.5); };
  coeffs.beta_is_zero = false;
  coeffs.div_beta = [](const Eigen::Vector2d&) { return 0.0; };
  coeffs.mu = [](const Eigen::Vector2d&) { return 2.0; };
  coeffs.c_beta_mu = 2.0;
  coeffs.sup_abs_mu = 2.0;

  MeshHierarchy hier(create_mesh(DomainSpec::quadrants(), 1.0));
  hier = refine(hier, {0, 3, 5}, 2);

  for (int degree : {1, 2}) {
    CAPTURE(degree);
    const DgSpace space(hier.finest(), degree);
    const DgSolution uh = random_field(space, 17 + degree);
    const OswaldInterpolant ios = oswald_interpolate(uh);
    const RecoveredGradient G = recover_gradient(uh, coeffs);

    const LocalIndicators li = local_indicators(uh, ios, G, coeffs, 8);
    const oracle::ElementIndicators bf =
        oracle::brute_force_indicators(uh, ios, G, coeffs, 8);

    const int nt = hier.finest().num_tris();
    for (int t = 0; t < nt; ++t) {
      CHECK(li.eta_cf[t] == doctest::Approx(bf.eta_cf[t]).epsilon(1e-10));
      CHECK(li.eta_nc[t] == doctest::Approx(bf.eta_nc[t]).epsilon(1e-10));
      CHECK(li.eta_nc2[t] == doctest::Approx(bf.eta_nc2[t]).epsilon(1e-10));
      CHECK(li.eta_j[t] == doctest::Approx(bf.eta_j[t]).epsilon(1e-10));
    }
    CHECK(li.global_cf == doctest::Approx(bf.global_cf).epsilon(1e-10));
    CHECK(li.global_nc == doctest::Approx(bf.global_nc).epsilon(1e-10));
    CHECK(li.global_nc2 == doctest::Approx(bf.global_nc2).epsilon(1e-10));
    CHECK(li.global_j == doctest::Approx(bf.global_j).epsilon(1e-10));
    CHECK(li.eta == doctest::Approx(bf.eta).epsilon(1e-10));
  }
}

TEST_CASE("structural identities of the indicator aggregates") {
  Coefficients coeffs;
  coeffs.a = {5 * Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity(),
              5 * Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity()};
  coeffs.beta = [](const Eigen::Vector2d&) { return Eigen::Vector2d(0, 0); };
  coeffs.beta_is_zero = true;
  coeffs.div_beta = [](const Eigen::Vector2d&) { return 0.0; };
  coeffs.mu = [](const Eigen::Vector2d&) { return 1.0; };
  coeffs.c_beta_mu = 1.0;
  coeffs.sup_abs_mu = 1.0;

  const Triangulation mesh = create_mesh(DomainSpec::quadrants(), 0.5);
  const DgSpace space(mesh, 1);
  const DgSolution uh = random_field(space, 5);
  const OswaldInterpolant ios = oswald_interpolate(uh);
  const RecoveredGradient G = recover_gradient(uh, coeffs);
  const LocalIndicators li = local_indicators(uh, ios, G, coeffs, 6);

  for (int t = 0; t < mesh.num_tris(); ++t) {
    // the reaction part never exceeds the full nonconformity norm
    CHECK(li.eta_nc2[t] <= li.eta_nc[t] + 1e-15);
    // the marking indicator is the plain sum without the reaction part
    CHECK(li.total[t] ==
          doctest::Approx(li.eta_cf[t] + li.eta_nc[t] + li.eta_j[t]).epsilon(1e-13));
    // per-element jump share: boundary edges count fully, interior edges half
    double j2 = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Edge& e = mesh.edges[mesh.tri_edge[t][k]];
      const double w = e.boundary ? 1.0 : 0.5;
      j2 += w * li.eta_j_edge[mesh.tri_edge[t][k]] *
            li.eta_j_edge[mesh.tri_edge[t][k]];
    }
    CHECK(li.eta_j[t] == doctest::Approx(std::sqrt(j2)).epsilon(1e-12));
  }

  // globals are l2 roll-ups, and eta is their plain sum
  CHECK(li.global_cf == doctest::Approx(li.eta_cf.norm()).epsilon(1e-13));
  CHECK(li.global_nc == doctest::Approx(li.eta_nc.norm()).epsilon(1e-13));
  CHECK(li.global_nc2 == doctest::Approx(li.eta_nc2.norm()).epsilon(1e-13));
  CHECK(li.global_j == doctest::Approx(li.eta_j_edge.norm()).epsilon(1e-13));
  CHECK(li.eta == doctest::Approx(li.global_cf + li.global_nc + li.global_nc2 +
                                  li.global_j)
                      .epsilon(1e-13));
  // half/half edge split conserves the jump total
  CHECK(li.eta_j.squaredNorm() ==
        doctest::Approx(li.eta_j_edge.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("security terms match brute force for polynomial data") {
  BenchmarkCase bc;
  bc.name = "poly";
  bc.domain = DomainSpec::quadrants();
  bc.coeffs.a = {3 * Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity(),
                 3 * Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity()};
  bc.coeffs.beta = [](const Eigen::Vector2d&) { return Eigen::Vector2d(1.0, 2.0); };
  bc.coeffs.beta_is_zero = false;
  bc.coeffs.div_beta = [](const Eigen::Vector2d&) { return 0.0; };
  bc.coeffs.mu = [](const Eigen::Vector2d&) { return 2.0; };
  bc.coeffs.c_beta_mu = 2.0;
  bc.coeffs.sup_abs_mu = 2.0;
  bc.has_exact = false;
  bc.f = [](const Eigen::Vector2d& x) { return x.x() * x.x() + 3.0 * x.y(); };

  MeshHierarchy hier(create_mesh(bc.domain, 1.0));
  hier = refine(hier, {1, 4}, 2);
  hier = refine(hier, {0, 2}, 1);
  const Triangulation& mesh = hier.finest();
  const DgSpace space(mesh, 1);
  const DgSolution uh = random_field(space, 11);
  const OswaldInterpolant ios = oswald_interpolate(uh);
  const RecoveredGradient G = recover_gradient(uh, bc.coeffs);
  const PatchSet patches = build_patches(mesh);

  const SecurityTerms st = security_terms(hier, uh, ios, G, bc, patches, 8);
  const Eigen::VectorXd rho_ref =
      oracle::brute_force_rho_x(uh, ios, G, bc, patches, 8);
  for (int v = 0; v < mesh.num_vertices(); ++v)
    CHECK(st.rho_x[v] == doctest::Approx(rho_ref[v]).epsilon(1e-9));

  const auto gamma_ref = oracle::brute_force_gamma(hier, uh, ios, G, bc, 8);
  REQUIRE(st.gamma_lz.size() == gamma_ref.size());
  double gamma2 = 0.0;
  for (size_t i = 0; i < gamma_ref.size(); ++i) {
    CHECK(std::get<0>(st.gamma_lz[i]) == std::get<0>(gamma_ref[i]));
    CHECK(std::get<1>(st.gamma_lz[i]) == std::get<1>(gamma_ref[i]));
    CHECK(std::get<2>(st.gamma_lz[i]) ==
          doctest::Approx(std::get<2>(gamma_ref[i])).epsilon(1e-8).scale(1.0));
    gamma2 += std::get<2>(st.gamma_lz[i]) * std::get<2>(st.gamma_lz[i]);
  }
  CHECK(st.gamma_bar == doctest::Approx(std::sqrt(gamma2)).epsilon(1e-12));
  CHECK(st.rho_tilde <= st.rho_bar + 1e-15);
}

}  // TEST_SUITE
