#pragma once

#include <utility>
#include <vector>

#include "dgrec/problem.hpp"
#include "dgrec/space.hpp"

namespace dgrec {

// Continuous P_degree field obtained from a broken field by area-weighted
// averaging of the elementwise values at each Lagrange node, with the value 0
// at boundary nodes.  Continuous nodes are numbered vertices first, then (for
// degree 2) one node per mesh edge.
struct OswaldInterpolant {
  const DgSpace* space = nullptr;
  Eigen::VectorXd values;  // by continuous node id

  int num_nodes() const { return static_cast<int>(values.size()); }
  // Continuous node id of local Lagrange node k of element t.
  int node_id(int t, int k) const;
  double value(int elem, const Eigen::Vector2d& x) const;
  Eigen::Vector2d gradient(int elem, const Eigen::Vector2d& x) const;
};

OswaldInterpolant oswald_interpolate(const DgSolution& uh);

// Orthogonal projection of per-subdomain vectors v onto the constraint set
// (v_{i+1} - v_i) . n_i = 0 (indices cyclic when cyclic = true, otherwise
// i = 0 .. n-2).  A rank-deficient constraint system falls back to the
// common unconstrained mean; *used_fallback reports that.  Throws
// std::invalid_argument when sizes are inconsistent.
std::vector<Eigen::Vector2d> crosspoint_project(
    const std::vector<Eigen::Vector2d>& v,
    const std::vector<Eigen::Vector2d>& normals, bool cyclic,
    bool* used_fallback = nullptr);

// Elementwise linear, per-subdomain continuous vector field with continuous
// normal component across subdomain interfaces (values live at vertices, one
// per incident subdomain).
struct RecoveredGradient {
  const DgSpace* space = nullptr;
  // per vertex: (subdomain tag, value), sorted by tag
  std::vector<std::vector<std::pair<int, Eigen::Vector2d>>> vertex_values;
  int crosspoint_fallbacks = 0;  // rank-deficient projections encountered

  const Eigen::Vector2d& value_at(int vertex, int tag) const;
  Eigen::Vector2d value(int elem, const Eigen::Vector2d& x) const;
  double divergence(int elem) const;
};

// Gradient recovery by averaging of the diffusive flux a grad u_h:
//  - node interior to one subdomain (or on the outer boundary of one):
//    area-weighted average over the vertex patch;
//  - node interior to a straight interface between two subdomains: common
//    normal component averaged over the whole patch, tangential components
//    averaged per side;
//  - subdomain cross points: per-subdomain averages projected onto the
//    normal-continuity constraints (cyclic around interior nodes, chain for
//    interface endpoints on the outer boundary).
RecoveredGradient recover_gradient(const DgSolution& uh, const Coefficients& coeffs);

}  // namespace dgrec
