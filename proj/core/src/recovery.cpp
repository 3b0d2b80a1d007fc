#include "dgrec/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dgrec {

int OswaldInterpolant::node_id(int t, int k) const {
  const Triangulation& mesh = space->mesh();
  if (k < 3) return mesh.tris[t][k];
  // Local Lagrange nodes 3,4,5 are the midpoints of (v0,v1), (v1,v2), (v2,v0),
  // i.e. the edges opposite vertices 2, 0, 1.
  static constexpr int opp[3] = {2, 0, 1};
  return mesh.num_vertices() + mesh.tri_edge[t][opp[k - 3]];
}

double OswaldInterpolant::value(int elem, const Eigen::Vector2d& x) const {
  const int nd = space->ndof_elem();
  double v[6];
  RefBasis::eval(space->degree(), space->ref_coords(elem, x), v);
  double s = 0.0;
  for (int k = 0; k < nd; ++k) s += values[node_id(elem, k)] * v[k];
  return s;
}

Eigen::Vector2d OswaldInterpolant::gradient(int elem, const Eigen::Vector2d& x) const {
  const int nd = space->ndof_elem();
  Eigen::Vector2d g[6];
  RefBasis::grad(space->degree(), space->ref_coords(elem, x), g);
  Eigen::Vector2d s(0.0, 0.0);
  for (int k = 0; k < nd; ++k) s += values[node_id(elem, k)] * g[k];
  return space->push_grad(elem, s);
}

OswaldInterpolant oswald_interpolate(const DgSolution& uh) {
  const DgSpace& space = *uh.space;
  const Triangulation& mesh = space.mesh();
  const int nd = space.ndof_elem();

  OswaldInterpolant os;
  os.space = &space;
  const int nn = mesh.num_vertices() +
                 (space.degree() == 2 ? mesh.num_edges() : 0);
  os.values = Eigen::VectorXd::Zero(nn);
  Eigen::VectorXd wsum = Eigen::VectorXd::Zero(nn);

  for (int t = 0; t < mesh.num_tris(); ++t) {
    const double w = mesh.area(t);
    for (int k = 0; k < nd; ++k) {
      const int n = os.node_id(t, k);
      // The basis is nodal, so the local coefficient is the nodal trace.
      os.values[n] += w * uh.coeffs[space.global_dof(t, k)];
      wsum[n] += w;
    }
  }
  for (int n = 0; n < nn; ++n)
    if (wsum[n] > 0.0) os.values[n] /= wsum[n];

  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (mesh.vertex_boundary[v]) os.values[v] = 0.0;
  if (space.degree() == 2)
    for (int e = 0; e < mesh.num_edges(); ++e)
      if (mesh.edges[e].boundary) os.values[mesh.num_vertices() + e] = 0.0;
  return os;
}

std::vector<Eigen::Vector2d> crosspoint_project(
    const std::vector<Eigen::Vector2d>& v,
    const std::vector<Eigen::Vector2d>& normals, bool cyclic,
    bool* used_fallback) {
  const int n = static_cast<int>(v.size());
  if (n == 0) throw std::invalid_argument("crosspoint_project: no values");
  const int m = cyclic ? n : n - 1;
  if (static_cast<int>(normals.size()) != m)
    throw std::invalid_argument("crosspoint_project: expected " +
                                std::to_string(m) + " normals, got " +
                                std::to_string(normals.size()));
  if (used_fallback) *used_fallback = false;
  if (m == 0) return v;

  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, 2 * n);
  for (int i = 0; i < m; ++i) {
    const int j = (i + 1) % n;
    C(i, 2 * j) += normals[i].x();
    C(i, 2 * j + 1) += normals[i].y();
    C(i, 2 * i) -= normals[i].x();
    C(i, 2 * i + 1) -= normals[i].y();
  }
  Eigen::VectorXd vv(2 * n);
  for (int i = 0; i < n; ++i) {
    vv[2 * i] = v[i].x();
    vv[2 * i + 1] = v[i].y();
  }

  const Eigen::MatrixXd G = C * C.transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
  lu.setThreshold(1e-12);
  std::vector<Eigen::Vector2d> out(n);
  if (lu.rank() < m) {
    if (used_fallback) *used_fallback = true;
    Eigen::Vector2d mean(0.0, 0.0);
    for (const auto& vi : v) mean += vi;
    mean /= n;
    for (int i = 0; i < n; ++i) out[i] = mean;
    return out;
  }
  const Eigen::VectorXd g = vv - C.transpose() * lu.solve(C * vv);
  for (int i = 0; i < n; ++i) out[i] = Eigen::Vector2d(g[2 * i], g[2 * i + 1]);
  return out;
}

const Eigen::Vector2d& RecoveredGradient::value_at(int vertex, int tag) const {
  for (const auto& [t, val] : vertex_values[vertex])
    if (t == tag) return val;
  throw std::invalid_argument("RecoveredGradient: vertex " + std::to_string(vertex) +
                              " carries no value for subdomain " + std::to_string(tag));
}

Eigen::Vector2d RecoveredGradient::value(int elem, const Eigen::Vector2d& x) const {
  const Triangulation& mesh = space->mesh();
  const int tag = mesh.subdomain[elem];
  const Eigen::Vector3d lam = mesh.barycentric(elem, x);
  Eigen::Vector2d s(0.0, 0.0);
  for (int k = 0; k < 3; ++k)
    s += lam[k] * value_at(mesh.tris[elem][k], tag);
  return s;
}

double RecoveredGradient::divergence(int elem) const {
  const Triangulation& mesh = space->mesh();
  const int tag = mesh.subdomain[elem];
  Eigen::Vector2d g[3];
  mesh.barycentric_gradients(elem, g);
  double s = 0.0;
  for (int k = 0; k < 3; ++k)
    s += value_at(mesh.tris[elem][k], tag).dot(g[k]);
  return s;
}

namespace {

struct IncidentElement {
  int elem;
  int tag;
  double angle;  // of the centroid around the vertex
  double area;
  Eigen::Vector2d flux;  // a_T grad u_h at the vertex
};

// Vertex id of the edge shared by two triangles other than vertex x, or -1.
int shared_edge_other_vertex(const Triangulation& mesh, int t1, int t2, int x) {
  for (int a = 0; a < 3; ++a) {
    const int va = mesh.tris[t1][a];
    if (va == x) continue;
    for (int b = 0; b < 3; ++b)
      if (mesh.tris[t2][b] == va) return va;
  }
  return -1;
}

}  // namespace

RecoveredGradient recover_gradient(const DgSolution& uh, const Coefficients& coeffs) {
  const DgSpace& space = *uh.space;
  const Triangulation& mesh = space.mesh();

  RecoveredGradient G;
  G.space = &space;
  G.vertex_values.resize(mesh.num_vertices());

  std::vector<std::vector<int>> patch(mesh.num_vertices());
  for (int t = 0; t < mesh.num_tris(); ++t)
    for (int k = 0; k < 3; ++k) patch[mesh.tris[t][k]].push_back(t);

  for (int x = 0; x < mesh.num_vertices(); ++x) {
    const Eigen::Vector2d px = mesh.vertices[x];
    std::vector<IncidentElement> inc;
    inc.reserve(patch[x].size());
    bool multi_tag = false;
    for (int t : patch[x]) {
      IncidentElement ie;
      ie.elem = t;
      ie.tag = mesh.subdomain[t];
      const Eigen::Vector2d c = mesh.centroid(t) - px;
      ie.angle = std::atan2(c.y(), c.x());
      ie.area = mesh.area(t);
      ie.flux = coeffs.A(ie.tag) * uh.gradient(t, px);
      inc.push_back(ie);
    }
    for (const auto& ie : inc)
      if (ie.tag != inc.front().tag) multi_tag = true;

    if (!multi_tag) {
      // One incident subdomain: plain area-weighted average.
      Eigen::Vector2d num(0.0, 0.0);
      double den = 0.0;
      for (const auto& ie : inc) {
        num += ie.area * ie.flux;
        den += ie.area;
      }
      G.vertex_values[x].emplace_back(inc.front().tag, num / den);
      continue;
    }

    // Order the fan counterclockwise; for boundary vertices rotate so the
    // exterior gap is at the seam.
    std::sort(inc.begin(), inc.end(),
              [](const IncidentElement& a, const IncidentElement& b) {
                return a.angle < b.angle;
              });
    const bool interior = !mesh.vertex_boundary[x];
    if (!interior) {
      int gap = 0;
      double gap_size = -1.0;
      const int ni = static_cast<int>(inc.size());
      for (int i = 0; i < ni; ++i) {
        double d = inc[(i + 1) % ni].angle - inc[i].angle;
        if (d < 0.0) d += 2.0 * std::numbers::pi;
        if (d > gap_size) {
          gap_size = d;
          gap = i;
        }
      }
      std::rotate(inc.begin(), inc.begin() + (gap + 1) % ni, inc.end());
    }

    // Contiguous runs of equal subdomain around the vertex.
    struct Run {
      int tag;
      Eigen::Vector2d num{0.0, 0.0};
      double den = 0.0;
      int first = -1, last = -1;  // indices into inc
    };
    std::vector<Run> runs;
    for (int i = 0; i < static_cast<int>(inc.size()); ++i) {
      if (runs.empty() || runs.back().tag != inc[i].tag) {
        runs.push_back({inc[i].tag, {0.0, 0.0}, 0.0, i, i});
      }
      runs.back().num += inc[i].area * inc[i].flux;
      runs.back().den += inc[i].area;
      runs.back().last = i;
    }
    if (interior && runs.size() > 1 && runs.front().tag == runs.back().tag) {
      runs.front().num += runs.back().num;
      runs.front().den += runs.back().den;
      runs.front().first = runs.back().first;  // wraps around the seam
      runs.pop_back();
    }
    for (size_t i = 0; i < runs.size(); ++i)
      for (size_t j = i + 1; j < runs.size(); ++j)
        if (runs[i].tag == runs[j].tag)
          throw std::runtime_error(
              "recover_gradient: subdomain not angularly contiguous at vertex " +
              std::to_string(x));

    const int nr = static_cast<int>(runs.size());
    // Interface normals between consecutive runs (run i -> run i+1).
    const int nifaces = interior ? nr : nr - 1;
    std::vector<Eigen::Vector2d> normals(nifaces);
    std::vector<Eigen::Vector2d> iface_dir(nifaces);
    for (int i = 0; i < nifaces; ++i) {
      const Run& r1 = runs[i];
      const Run& r2 = runs[(i + 1) % nr];
      const int w = shared_edge_other_vertex(mesh, inc[r1.last].elem,
                                             inc[r2.first].elem, x);
      if (w < 0)
        throw std::runtime_error(
            "recover_gradient: interface edge missing at vertex " +
            std::to_string(x));
      Eigen::Vector2d d = (mesh.vertices[w] - px).normalized();
      iface_dir[i] = d;
      normals[i] = Eigen::Vector2d(d.y(), -d.x());
    }

    if (interior && nr == 2 &&
        std::abs(iface_dir[0].x() * iface_dir[1].y() -
                 iface_dir[0].y() * iface_dir[1].x()) < 1e-10) {
      // Straight interface through the vertex: shared normal component from
      // the whole patch, tangential components averaged per side.
      const Eigen::Vector2d n = normals[0];
      const Eigen::Vector2d tau = iface_dir[0];
      Eigen::Vector2d full(0.0, 0.0);
      double full_area = 0.0;
      for (const auto& ie : inc) {
        full += ie.area * ie.flux;
        full_area += ie.area;
      }
      const double shared_n = full.dot(n) / full_area;
      for (const Run& r : runs) {
        const Eigen::Vector2d side = r.num / r.den;
        G.vertex_values[x].emplace_back(r.tag, shared_n * n + side.dot(tau) * tau);
      }
    } else {
      std::vector<Eigen::Vector2d> v(nr);
      for (int i = 0; i < nr; ++i) v[i] = runs[i].num / runs[i].den;
      bool fb = false;
      const auto g = crosspoint_project(v, normals, interior, &fb);
      if (fb) ++G.crosspoint_fallbacks;
      for (int i = 0; i < nr; ++i) G.vertex_values[x].emplace_back(runs[i].tag, g[i]);
    }
    std::sort(G.vertex_values[x].begin(), G.vertex_values[x].end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return G;
}

}  // namespace dgrec
