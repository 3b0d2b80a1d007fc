#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "dgrec/mesh.hpp"

namespace dgrec {

// Nested family T_0, ..., T_L produced by newest-vertex bisection.  Vertex ids
// are stable across levels (new vertices are appended), so a node of level
// l-1 has the same id on level l.  Immutable; refine() returns a new value
// sharing the unchanged levels.
class MeshHierarchy {
 public:
  explicit MeshHierarchy(Triangulation coarse);

  int num_levels() const { return static_cast<int>(levels_.size()); }
  const Triangulation& level(int l) const;
  const Triangulation& finest() const { return *levels_.back(); }
  int finest_level() const { return num_levels() - 1; }

  // Ancestor on level l-1 of triangle t of level l (l >= 1).
  int parent(int l, int t) const;

  // Ancestor on level l of every finest-level triangle.
  std::vector<int> ancestors_at(int l) const;

  // Vertex pairs whose connecting edge was split when level l was created
  // (l >= 1); ids refer to the vertex numbering of level l.
  const std::vector<std::pair<int, int>>& split_edges(int l) const;

  // Nodes whose P1 hat function on level l differs from every hat of level
  // l-1: the vertices new on level l plus the endpoints of the split edges.
  // For l = 0, all vertices of the coarsest mesh.  Sorted ascending.
  std::vector<int> tilde_nodes(int l) const;

  // P1 hat of node z on level l evaluated at x (0 outside its patch).
  double eval_hat(int l, int z, const Eigen::Vector2d& x) const;

  friend MeshHierarchy refine(const MeshHierarchy& hier,
                              const std::vector<int>& marked, int bisections);

 private:
  std::vector<std::shared_ptr<const Triangulation>> levels_;
  std::vector<std::vector<int>> parent_;  // parent_[l][t], parent_[0] empty
  std::vector<std::vector<std::pair<int, int>>> split_edges_;  // [l], [0] empty
};

// One adaptive step: every marked finest-level triangle is bisected
// `bisections` times (its children recursively), with recursive closure
// bisections keeping the mesh conforming.  Returns a hierarchy with one more
// level.  Throws std::invalid_argument for an empty marked set or ids outside
// the finest level.
MeshHierarchy refine(const MeshHierarchy& hier, const std::vector<int>& marked,
                     int bisections = 1);

// `rounds` global bisection rounds (every element once per round); each round
// appends one level.  Two rounds quadruple the element count of a structured
// mesh.
MeshHierarchy uniform_refine(const MeshHierarchy& hier, int rounds);

}  // namespace dgrec
