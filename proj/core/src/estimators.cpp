#include "dgrec/estimators.hpp"

#include <cmath>
#include <limits>

#include "dgrec/quadrature.hpp"

namespace dgrec {

LocalIndicators local_indicators(const DgSolution& uh, const OswaldInterpolant& ios,
                                 const RecoveredGradient& G,
                                 const Coefficients& coeffs, int quad_degree) {
  const DgSpace& space = *uh.space;
  const Triangulation& mesh = space.mesh();
  const int nt = mesh.num_tris();
  const int deg = quad_degree > 0 ? quad_degree : 2 * space.degree() + 2;
  const QuadratureRule& vrule = triangle_rule(deg);
  const QuadratureRule& erule = edge_rule(deg);

  std::vector<Eigen::Matrix2d> ainv;
  ainv.reserve(coeffs.a.size());
  for (const auto& a : coeffs.a) ainv.push_back(a.inverse());

  LocalIndicators li;
  li.eta_cf.resize(nt);
  li.eta_nc.resize(nt);
  li.eta_nc2.resize(nt);
  li.eta_j = Eigen::VectorXd::Zero(nt);
  li.total.resize(nt);
  li.eta_j_edge.resize(mesh.num_edges());

  double cf2 = 0.0, nc2sum = 0.0, nc22sum = 0.0;
  for (int t = 0; t < nt; ++t) {
    const int tag = mesh.subdomain[t];
    const Eigen::Matrix2d& a = coeffs.A(tag);
    const Eigen::Matrix2d& ai = ainv[tag];
    const auto& tr = mesh.tris[t];
    const Eigen::Vector2d& p0 = mesh.vertices[tr[0]];
    const Eigen::Vector2d& p1 = mesh.vertices[tr[1]];
    const Eigen::Vector2d& p2 = mesh.vertices[tr[2]];

    const double cf_sq = integrate_triangle(vrule, p0, p1, p2, [&](const Eigen::Vector2d& x) {
      const Eigen::Vector2d d = a * uh.gradient(t, x) - G.value(t, x);
      return d.dot(ai * d);
    });
    double nc2_part = 0.0;
    const double nc_sq = integrate_triangle(vrule, p0, p1, p2, [&](const Eigen::Vector2d& x) {
      const Eigen::Vector2d gd = ios.gradient(t, x) - uh.gradient(t, x);
      const double d = ios.value(t, x) - uh.value(t, x);
      const double w = std::max(0.0, coeffs.reaction_weight(x));
      return gd.dot(a * gd) + w * d * d;
    });
    nc2_part = integrate_triangle(vrule, p0, p1, p2, [&](const Eigen::Vector2d& x) {
      const double d = ios.value(t, x) - uh.value(t, x);
      const double w = std::max(0.0, coeffs.reaction_weight(x));
      return w * d * d;
    });
    li.eta_cf[t] = std::sqrt(cf_sq);
    li.eta_nc[t] = std::sqrt(nc_sq);
    li.eta_nc2[t] = std::sqrt(nc2_part);
    cf2 += cf_sq;
    nc2sum += nc_sq;
    nc22sum += nc2_part;
  }

  double j2 = 0.0;
  Eigen::VectorXd jT2 = Eigen::VectorXd::Zero(nt);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edges[e];
    const double J = integrate_edge(
        erule, mesh.vertices[ed.v[0]], mesh.vertices[ed.v[1]],
        [&](const Eigen::Vector2d& x) {
          double j = uh.value(ed.tri[0], x);
          if (!ed.boundary) j -= uh.value(ed.tri[1], x);
          return j * j;
        });
    const double esq = J / ed.length;  // h_e^{-1} || [u_h] ||_e^2
    li.eta_j_edge[e] = std::sqrt(esq);
    j2 += esq;
    if (ed.boundary) {
      jT2[ed.tri[0]] += esq;
    } else {
      jT2[ed.tri[0]] += 0.5 * esq;
      jT2[ed.tri[1]] += 0.5 * esq;
    }
  }
  for (int t = 0; t < nt; ++t) {
    li.eta_j[t] = std::sqrt(jT2[t]);
    li.total[t] = li.eta_cf[t] + li.eta_nc[t] + li.eta_j[t];
  }

  li.global_cf = std::sqrt(cf2);
  li.global_nc = std::sqrt(nc2sum);
  li.global_nc2 = std::sqrt(nc22sum);
  li.global_j = std::sqrt(j2);
  li.eta = li.global_cf + li.global_nc + li.global_nc2 + li.global_j;
  return li;
}

SecurityTerms security_terms(const MeshHierarchy& hier, const DgSolution& uh,
                             const OswaldInterpolant& ios,
                             const RecoveredGradient& G, const BenchmarkCase& bc,
                             const PatchSet& patches, int quad_degree) {
  const DgSpace& space = *uh.space;
  const Triangulation& mesh = space.mesh();
  const Coefficients& coeffs = bc.coeffs;
  const int deg = quad_degree > 0 ? quad_degree : 2 * space.degree() + 4;
  const QuadratureRule& vrule = triangle_rule(deg);
  const int nt = mesh.num_tris();
  const int nv = mesh.num_vertices();

  SecurityTerms st;
  const CoefficientBounds bounds = coefficient_bounds(coeffs);
  st.M = bounds.M;
  const double inv_sqrt_cbm = bounds.c_beta_mu > 0.0
                                  ? 1.0 / std::sqrt(bounds.c_beta_mu)
                                  : std::numeric_limits<double>::infinity();

  std::vector<double> tag_min_eig(coeffs.a.size());
  for (size_t i = 0; i < coeffs.a.size(); ++i) tag_min_eig[i] = min_eig(coeffs.a[i]);

  // residual r = f + div G - beta . grad I_Os - mu I_Os on element t
  auto residual = [&](int t, const Eigen::Vector2d& x) {
    const double divG = G.divergence(t);
    const double conv = coeffs.beta_is_zero
                            ? 0.0
                            : coeffs.beta(x).dot(ios.gradient(t, x));
    return bc.f(x) + divG - conv - coeffs.mu(x) * ios.value(t, x);
  };

  // rho terms: per-vertex hat-weighted patch residuals.
  st.rho_x = Eigen::VectorXd::Zero(nv);
  double rho_bar2 = 0.0, rho_tilde2 = 0.0;
  for (int v = 0; v < nv; ++v) {
    const Patch& p = patches.vertex_patch[v];
    double c_a_patch = std::numeric_limits<double>::infinity();
    for (int t : p.elems)
      c_a_patch = std::min(c_a_patch, tag_min_eig[mesh.subdomain[t]]);

    auto hat_index = [&](int t) {
      for (int k = 0; k < 3; ++k)
        if (mesh.tris[t][k] == v) return k;
      return -1;
    };

    double i_lam = 0.0, i_rlam = 0.0;
    for (int t : p.elems) {
      const int k = hat_index(t);
      const auto& tr = mesh.tris[t];
      i_lam += integrate_triangle(vrule, mesh.vertices[tr[0]], mesh.vertices[tr[1]],
                                  mesh.vertices[tr[2]], [&](const Eigen::Vector2d& x) {
                                    return mesh.barycentric(t, x)[k];
                                  });
      i_rlam += integrate_triangle(vrule, mesh.vertices[tr[0]], mesh.vertices[tr[1]],
                                   mesh.vertices[tr[2]], [&](const Eigen::Vector2d& x) {
                                     return residual(t, x) * mesh.barycentric(t, x)[k];
                                   });
    }
    const double rbar = mesh.vertex_boundary[v] ? 0.0 : i_rlam / i_lam;
    double i2 = 0.0;
    for (int t : p.elems) {
      const int k = hat_index(t);
      const auto& tr = mesh.tris[t];
      i2 += integrate_triangle(vrule, mesh.vertices[tr[0]], mesh.vertices[tr[1]],
                               mesh.vertices[tr[2]], [&](const Eigen::Vector2d& x) {
                                 const double d = residual(t, x) - rbar;
                                 return d * d * mesh.barycentric(t, x)[k];
                               });
    }
    const double hx = p.diameter;
    st.rho_x[v] = hx * std::sqrt(i2);
    rho_bar2 += hx * hx * i2 / c_a_patch;
    const double alpha_x = std::min(inv_sqrt_cbm, hx / std::sqrt(c_a_patch));
    rho_tilde2 += alpha_x * alpha_x * i2;
  }
  st.rho_bar = std::sqrt(rho_bar2);
  st.rho_tilde = std::sqrt(rho_tilde2);

  // gamma terms: hat residuals of every level of the hierarchy, restricted to
  // the nodes whose hat is new on that level, integrated over the finest mesh.
  double gamma2 = 0.0;
  const int L = hier.finest_level();
  for (int l = 0; l <= L; ++l) {
    const Triangulation& lm = hier.level(l);
    std::vector<char> in_tilde(lm.num_vertices(), 0);
    for (int z : hier.tilde_nodes(l)) in_tilde[z] = 1;
    const std::vector<int> anc = hier.ancestors_at(l);

    std::vector<double> acc(lm.num_vertices(), 0.0);
    for (int t = 0; t < nt; ++t) {
      const int K = anc[t];
      const auto& ktr = lm.tris[K];
      int active[3], na = 0;
      for (int k = 0; k < 3; ++k) {
        const int z = ktr[k];
        if (in_tilde[z] && !mesh.vertex_boundary[z]) active[na++] = k;
      }
      if (na == 0) continue;
      Eigen::Vector2d kg[3];
      lm.barycentric_gradients(K, kg);
      const auto& tr = mesh.tris[t];
      for (int m = 0; m < na; ++m) {
        const int k = active[m];
        const double val = integrate_triangle(
            vrule, mesh.vertices[tr[0]], mesh.vertices[tr[1]], mesh.vertices[tr[2]],
            [&](const Eigen::Vector2d& x) {
              const double lam = lm.barycentric(K, x)[k];
              const double conv = coeffs.beta_is_zero
                                      ? 0.0
                                      : coeffs.beta(x).dot(ios.gradient(t, x));
              const double scal =
                  (conv + coeffs.mu(x) * ios.value(t, x) - bc.f(x)) * lam;
              return G.value(t, x).dot(kg[k]) + scal;
            });
        acc[ktr[k]] += val;
      }
    }
    for (int z = 0; z < lm.num_vertices(); ++z) {
      if (!in_tilde[z] || mesh.vertex_boundary[z]) continue;
      const double g = std::abs(acc[z]);
      st.gamma_lz.emplace_back(l, z, g);
      gamma2 += g * g;
    }
  }
  st.gamma_bar = std::sqrt(gamma2);

  // data oscillation
  st.osc_elem = Eigen::VectorXd::Zero(nt);
  double xi2 = 0.0;
  for (int t = 0; t < nt; ++t) {
    const auto& tr = mesh.tris[t];
    const Eigen::Vector2d& p0 = mesh.vertices[tr[0]];
    const Eigen::Vector2d& p1 = mesh.vertices[tr[1]];
    const Eigen::Vector2d& p2 = mesh.vertices[tr[2]];
    const double area = mesh.area(t);
    const double mean =
        integrate_triangle(vrule, p0, p1, p2, [&](const Eigen::Vector2d& x) {
          return bc.f(x);
        }) /
        area;
    const double s2 = integrate_triangle(vrule, p0, p1, p2, [&](const Eigen::Vector2d& x) {
      const double d = bc.f(x) - mean;
      return d * d;
    });
    st.osc_elem[t] = std::sqrt(s2);
    const double c_a_T = tag_min_eig[mesh.subdomain[t]];
    const double alpha_T =
        std::min(inv_sqrt_cbm, mesh.diameter(t) / std::sqrt(c_a_T));
    xi2 += alpha_T * alpha_T * s2;
  }
  st.xi = std::sqrt(xi2);

  st.osc_vertex_patch = Eigen::VectorXd::Zero(nv);
  double oscw2 = 0.0;
  for (int v = 0; v < nv; ++v) {
    const Patch& p = patches.vertex_patch[v];
    double s = 0.0;
    double c_a_patch = std::numeric_limits<double>::infinity();
    for (int t : p.elems) {
      const double hT = mesh.diameter(t);
      s += hT * hT * st.osc_elem[t] * st.osc_elem[t];
      c_a_patch = std::min(c_a_patch, tag_min_eig[mesh.subdomain[t]]);
    }
    st.osc_vertex_patch[v] = std::sqrt(s);
    oscw2 += s / c_a_patch;
  }
  st.osc_weighted = std::sqrt(oscw2);
  return st;
}

}  // namespace dgrec
