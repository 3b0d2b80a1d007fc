#include "dgrec/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace dgrec {

namespace {

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

}  // namespace

int DomainSpec::num_tags() const {
  if (block_tags.empty()) return 1;
  return 1 + *std::max_element(block_tags.begin(), block_tags.end());
}

DomainSpec DomainSpec::unit_square() {
  DomainSpec s;
  s.x0 = 0.0;
  s.y0 = 0.0;
  s.x1 = 1.0;
  s.y1 = 1.0;
  return s;
}

DomainSpec DomainSpec::quadrants() {
  DomainSpec s;
  s.x0 = -1.0;
  s.y0 = -1.0;
  s.x1 = 1.0;
  s.y1 = 1.0;
  s.split_x = {0.0};
  s.split_y = {0.0};
  // blocks (i, j): i = 0 left / 1 right, j = 0 bottom / 1 top
  s.block_tags = {2, 3, 1, 0};
  return s;
}

double Triangulation::area(int t) const {
  const auto& tr = tris[t];
  return 0.5 * std::abs(cross2(vertices[tr[1]] - vertices[tr[0]],
                               vertices[tr[2]] - vertices[tr[0]]));
}

double Triangulation::diameter(int t) const {
  const auto& tr = tris[t];
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    d = std::max(d, (vertices[tr[i]] - vertices[tr[(i + 1) % 3]]).norm());
  return d;
}

Eigen::Vector2d Triangulation::centroid(int t) const {
  const auto& tr = tris[t];
  return (vertices[tr[0]] + vertices[tr[1]] + vertices[tr[2]]) / 3.0;
}

double Triangulation::total_area() const {
  double s = 0.0;
  for (int t = 0; t < num_tris(); ++t) s += area(t);
  return s;
}

double Triangulation::min_angle() const {
  double amin = 4.0;
  for (const auto& tr : tris) {
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector2d u = vertices[tr[(i + 1) % 3]] - vertices[tr[i]];
      const Eigen::Vector2d v = vertices[tr[(i + 2) % 3]] - vertices[tr[i]];
      const double ang = std::atan2(std::abs(cross2(u, v)), u.dot(v));
      amin = std::min(amin, ang);
    }
  }
  return amin;
}

Eigen::Vector3d Triangulation::barycentric(int t, const Eigen::Vector2d& x) const {
  const auto& tr = tris[t];
  const Eigen::Vector2d& a = vertices[tr[0]];
  const Eigen::Vector2d& b = vertices[tr[1]];
  const Eigen::Vector2d& c = vertices[tr[2]];
  const double det = cross2(b - a, c - a);
  Eigen::Vector3d lam;
  lam[1] = cross2(x - a, c - a) / det;
  lam[2] = cross2(b - a, x - a) / det;
  lam[0] = 1.0 - lam[1] - lam[2];
  return lam;
}

void Triangulation::barycentric_gradients(int t, Eigen::Vector2d grads[3]) const {
  const auto& tr = tris[t];
  const Eigen::Vector2d e1 = vertices[tr[1]] - vertices[tr[0]];
  const Eigen::Vector2d e2 = vertices[tr[2]] - vertices[tr[0]];
  const double det = cross2(e1, e2);
  grads[1] = Eigen::Vector2d(e2.y(), -e2.x()) / det;
  grads[2] = Eigen::Vector2d(-e1.y(), e1.x()) / det;
  grads[0] = -grads[1] - grads[2];
}

int Triangulation::locate(const Eigen::Vector2d& x) const {
  const double tol = 1e-12;
  for (int t = 0; t < num_tris(); ++t) {
    const Eigen::Vector3d lam = barycentric(t, x);
    if (lam.minCoeff() >= -tol) return t;
  }
  throw std::invalid_argument("locate: point (" + std::to_string(x.x()) + ", " +
                              std::to_string(x.y()) + ") outside the mesh");
}

void Triangulation::finalize() {
  edges.clear();
  tri_edge.assign(tris.size(), {-1, -1, -1});
  std::map<std::pair<int, int>, int> edge_of;
  for (int t = 0; t < num_tris(); ++t) {
    for (int k = 0; k < 3; ++k) {
      // local edge k is opposite vertex k
      const int a = tris[t][(k + 1) % 3];
      const int b = tris[t][(k + 2) % 3];
      const auto key = std::minmax(a, b);
      auto it = edge_of.find(key);
      if (it == edge_of.end()) {
        Edge e;
        e.v = {a, b};
        e.tri[0] = t;
        const Eigen::Vector2d d = vertices[b] - vertices[a];
        e.length = d.norm();
        // outward for tri[0]: rotate the directed edge (a->b) by -90 degrees;
        // with CCW orientation (a,b) runs counterclockwise around t
        e.normal = Eigen::Vector2d(d.y(), -d.x()) / e.length;
        edge_of.emplace(key, static_cast<int>(edges.size()));
        tri_edge[t][k] = static_cast<int>(edges.size());
        edges.push_back(e);
      } else {
        Edge& e = edges[it->second];
        if (e.tri[1] >= 0)
          throw std::runtime_error("finalize: edge shared by more than two triangles");
        e.tri[1] = t;
        tri_edge[t][k] = it->second;
      }
    }
  }
  vertex_boundary.assign(vertices.size(), false);
  for (auto& e : edges) {
    e.boundary = (e.tri[1] < 0);
    if (e.boundary) {
      vertex_boundary[e.v[0]] = true;
      vertex_boundary[e.v[1]] = true;
    }
  }
}

PatchSet build_patches(const Triangulation& mesh) {
  PatchSet ps;
  ps.vertex_patch.resize(mesh.num_vertices());
  for (int t = 0; t < mesh.num_tris(); ++t)
    for (int k = 0; k < 3; ++k) ps.vertex_patch[mesh.tris[t][k]].elems.push_back(t);

  auto patch_diameter = [&](const std::vector<int>& elems) {
    std::vector<int> verts;
    for (int t : elems)
      for (int k = 0; k < 3; ++k) verts.push_back(mesh.tris[t][k]);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    double d = 0.0;
    for (size_t i = 0; i < verts.size(); ++i)
      for (size_t j = i + 1; j < verts.size(); ++j)
        d = std::max(d, (mesh.vertices[verts[i]] - mesh.vertices[verts[j]]).norm());
    return d;
  };

  for (auto& p : ps.vertex_patch) p.diameter = patch_diameter(p.elems);

  ps.element_patch.resize(mesh.num_tris());
  for (int t = 0; t < mesh.num_tris(); ++t) {
    std::vector<int> elems;
    for (int k = 0; k < 3; ++k) {
      const auto& vp = ps.vertex_patch[mesh.tris[t][k]].elems;
      elems.insert(elems.end(), vp.begin(), vp.end());
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    ps.element_patch[t].elems = std::move(elems);
    ps.element_patch[t].diameter = patch_diameter(ps.element_patch[t].elems);
  }
  return ps;
}

Triangulation create_mesh(const DomainSpec& spec, double target_h) {
  const double w = spec.x1 - spec.x0;
  const double h = spec.y1 - spec.y0;
  if (!(w > 0.0) || !(h > 0.0))
    throw std::invalid_argument("create_mesh: degenerate domain rectangle");
  if (!(target_h > 0.0))
    throw std::invalid_argument("create_mesh: target_h must be positive");
  const int nblocks = spec.nx_blocks() * spec.ny_blocks();
  if (!spec.block_tags.empty() &&
      static_cast<int>(spec.block_tags.size()) != nblocks)
    throw std::invalid_argument(
        "create_mesh: block_tags does not tile the domain (expected " +
        std::to_string(nblocks) + " entries, got " +
        std::to_string(spec.block_tags.size()) + ")");
  for (size_t i = 1; i < spec.split_x.size(); ++i)
    if (spec.split_x[i] <= spec.split_x[i - 1])
      throw std::invalid_argument("create_mesh: split_x not strictly increasing");
  for (size_t i = 1; i < spec.split_y.size(); ++i)
    if (spec.split_y[i] <= spec.split_y[i - 1])
      throw std::invalid_argument("create_mesh: split_y not strictly increasing");
  for (double s : spec.split_x)
    if (s <= spec.x0 || s >= spec.x1)
      throw std::invalid_argument("create_mesh: split_x outside the domain");
  for (double s : spec.split_y)
    if (s <= spec.y0 || s >= spec.y1)
      throw std::invalid_argument("create_mesh: split_y outside the domain");

  const double extent = std::max(w, h);
  auto aligned = [&](int n) {
    const double tol = 1e-9;
    for (double s : spec.split_x) {
      const double r = (s - spec.x0) / w * n;
      if (std::abs(r - std::round(r)) > tol) return false;
    }
    for (double s : spec.split_y) {
      const double r = (s - spec.y0) / h * n;
      if (std::abs(r - std::round(r)) > tol) return false;
    }
    return true;
  };
  int n = std::max(1, static_cast<int>(std::ceil(extent / target_h - 1e-12)));
  const int n_start = n;
  while (!aligned(n)) {
    ++n;
    if (n > 8 * n_start + 64)
      throw std::invalid_argument(
          "create_mesh: cannot align subdomain splits with a uniform grid");
  }

  Triangulation mesh;
  const double dx = w / n, dy = h / n;
  auto vid = [&](int i, int j) { return j * (n + 1) + i; };
  mesh.vertices.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.vertices.push_back({spec.x0 + i * dx, spec.y0 + j * dy});

  auto block_index = [&](double coord, double lo, const std::vector<double>& splits) {
    int b = 0;
    for (double s : splits) {
      if (coord > s) ++b;
    }
    (void)lo;
    return b;
  };
  auto tag_of_cell = [&](int i, int j) {
    if (spec.block_tags.empty()) return 0;
    const double cx = spec.x0 + (i + 0.5) * dx;
    const double cy = spec.y0 + (j + 0.5) * dy;
    const int bi = block_index(cx, spec.x0, spec.split_x);
    const int bj = block_index(cy, spec.y0, spec.split_y);
    return spec.block_tags[bj * spec.nx_blocks() + bi];
  };

  mesh.tris.reserve(2 * n * n);
  mesh.subdomain.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j);
      const int c = vid(i + 1, j + 1), d = vid(i, j + 1);
      const int tag = tag_of_cell(i, j);
      // refinement edge = diagonal (a, c) for both triangles
      mesh.tris.push_back({c, a, b});
      mesh.subdomain.push_back(tag);
      mesh.tris.push_back({a, c, d});
      mesh.subdomain.push_back(tag);
    }
  }
  mesh.finalize();
  return mesh;
}

}  // namespace dgrec
