#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace dgrec {

// Axis-aligned rectangle partitioned into rectangular subdomains by interior
// grid lines.  Each block carries an integer tag; diffusion coefficients are
// constant per tag.
struct DomainSpec {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  std::vector<double> split_x;  // strictly increasing, inside (x0, x1)
  std::vector<double> split_y;
  // Tag of block (i, j), row-major with index j * nx_blocks + i, where i
  // counts x-blocks and j counts y-blocks.  Empty means a single tag 0.
  std::vector<int> block_tags;

  int nx_blocks() const { return static_cast<int>(split_x.size()) + 1; }
  int ny_blocks() const { return static_cast<int>(split_y.size()) + 1; }
  int num_tags() const;

  static DomainSpec unit_square();
  // (-1,1)^2 split into quadrants.  Tags: 0 = x>0,y>0; 1 = x<0,y>0;
  // 2 = x<0,y<0; 3 = x>0,y<0.
  static DomainSpec quadrants();
};

struct Edge {
  std::array<int, 2> v;          // endpoint vertex ids
  std::array<int, 2> tri{-1, -1};  // incident triangles; tri[1] < 0 on the boundary
  Eigen::Vector2d normal;        // unit normal, outward for tri[0]
  double length = 0.0;
  bool boundary = false;
};

// Conforming triangulation.  Triangles are stored counterclockwise; the edge
// (v[0], v[1]) is the bisection refinement edge and v[2] is the newest vertex.
class Triangulation {
 public:
  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::array<int, 3>> tris;
  std::vector<int> subdomain;  // tag per triangle

  // Derived connectivity, rebuilt by finalize().
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> tri_edge;  // local edge k is opposite vertex k
  std::vector<bool> vertex_boundary;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_tris() const { return static_cast<int>(tris.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  double area(int t) const;
  double diameter(int t) const;
  Eigen::Vector2d centroid(int t) const;
  double total_area() const;
  double min_angle() const;  // radians

  // Index of the triangle containing x (points on shared edges resolve to the
  // lowest index).  Throws std::invalid_argument if x lies outside the mesh.
  int locate(const Eigen::Vector2d& x) const;

  // Barycentric coordinates of x with respect to triangle t.
  Eigen::Vector3d barycentric(int t, const Eigen::Vector2d& x) const;

  // Gradients of the three barycentric coordinate functions of triangle t.
  void barycentric_gradients(int t, Eigen::Vector2d grads[3]) const;

  void finalize();  // rebuild edges / tri_edge / vertex_boundary
};

// Vertex patch omega_x: the elements sharing vertex x.  diameter is the
// maximal pairwise distance between the patch vertices.
struct Patch {
  std::vector<int> elems;
  double diameter = 0.0;
};

struct PatchSet {
  std::vector<Patch> vertex_patch;   // by vertex id
  std::vector<Patch> element_patch;  // omega_T: elements sharing a vertex with T
};

PatchSet build_patches(const Triangulation& mesh);

// Structured mesh of the domain: n x n cells, each split along the
// lower-left-to-upper-right diagonal (2 n^2 triangles, all diagonals parallel,
// refinement edge = diagonal).  n is chosen as ceil(extent / target_h),
// rounded up until every split line lies on a grid line.  Throws
// std::invalid_argument for degenerate rectangles, non-tiling block tags, or
// splits that cannot be aligned.
Triangulation create_mesh(const DomainSpec& spec, double target_h);

}  // namespace dgrec
