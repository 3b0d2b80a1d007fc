#include "dgrec/hierarchy.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace dgrec {

MeshHierarchy::MeshHierarchy(Triangulation coarse) {
  if (coarse.num_tris() == 0)
    throw std::invalid_argument("MeshHierarchy: empty coarse mesh");
  if (coarse.edges.empty()) coarse.finalize();
  levels_.push_back(std::make_shared<Triangulation>(std::move(coarse)));
  parent_.emplace_back();
  split_edges_.emplace_back();
}

const Triangulation& MeshHierarchy::level(int l) const {
  if (l < 0 || l >= num_levels())
    throw std::invalid_argument("MeshHierarchy::level: level out of range");
  return *levels_[l];
}

int MeshHierarchy::parent(int l, int t) const {
  if (l < 1 || l >= num_levels())
    throw std::invalid_argument("MeshHierarchy::parent: level out of range");
  return parent_[l].at(t);
}

std::vector<int> MeshHierarchy::ancestors_at(int l) const {
  if (l < 0 || l >= num_levels())
    throw std::invalid_argument("MeshHierarchy::ancestors_at: level out of range");
  std::vector<int> anc(finest().num_tris());
  std::iota(anc.begin(), anc.end(), 0);
  for (int k = finest_level(); k > l; --k)
    for (int& a : anc) a = parent_[k][a];
  return anc;
}

const std::vector<std::pair<int, int>>& MeshHierarchy::split_edges(int l) const {
  if (l < 1 || l >= num_levels())
    throw std::invalid_argument("MeshHierarchy::split_edges: level out of range");
  return split_edges_[l];
}

std::vector<int> MeshHierarchy::tilde_nodes(int l) const {
  if (l < 0 || l >= num_levels())
    throw std::invalid_argument("MeshHierarchy::tilde_nodes: level out of range");
  std::vector<int> nodes;
  if (l == 0) {
    nodes.resize(levels_[0]->num_vertices());
    std::iota(nodes.begin(), nodes.end(), 0);
    return nodes;
  }
  const int nv_prev = levels_[l - 1]->num_vertices();
  const int nv = levels_[l]->num_vertices();
  for (int z = nv_prev; z < nv; ++z) nodes.push_back(z);
  for (const auto& [a, b] : split_edges_[l]) {
    if (a < nv_prev) nodes.push_back(a);
    if (b < nv_prev) nodes.push_back(b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

double MeshHierarchy::eval_hat(int l, int z, const Eigen::Vector2d& x) const {
  const Triangulation& mesh = level(l);
  if (z < 0 || z >= mesh.num_vertices())
    throw std::invalid_argument("MeshHierarchy::eval_hat: node not on this level");
  const int t = mesh.locate(x);
  const Eigen::Vector3d lam = mesh.barycentric(t, x);
  for (int k = 0; k < 3; ++k)
    if (mesh.tris[t][k] == z) return lam[k];
  return 0.0;
}

namespace {

int64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<int64_t>(a) << 32) | static_cast<uint32_t>(b);
}

struct Forest {
  // Node of the bisection forest built during one refine() call.
  struct Node {
    std::array<int, 3> v;  // refinement edge (v[0], v[1]), newest vertex v[2]
    int sub = 0;
    int root = -1;  // index in the previous level
    int budget = 0;
    std::array<int, 2> child{-1, -1};
  };

  std::vector<Eigen::Vector2d> vertices;
  std::vector<Node> nodes;
  std::unordered_map<int64_t, std::array<int, 2>> leaf_on_edge;
  std::unordered_map<int64_t, int> midpoint;
  std::vector<std::pair<int, int>> splits;
  std::vector<int> pending;
  long steps = 0, step_limit = 0;

  bool is_leaf(int t) const { return nodes[t].child[0] < 0; }

  int other_leaf(int64_t key, int t) const {
    auto it = leaf_on_edge.find(key);
    if (it == leaf_on_edge.end()) return -1;
    if (it->second[0] == t) return it->second[1];
    if (it->second[1] == t) return it->second[0];
    return -1;
  }

  void attach(int64_t key, int t) {
    auto& slot = leaf_on_edge.try_emplace(key, std::array<int, 2>{-1, -1}).first->second;
    if (slot[0] == t || slot[1] == t) return;
    if (slot[0] < 0)
      slot[0] = t;
    else if (slot[1] < 0)
      slot[1] = t;
    else
      throw std::runtime_error("refine: edge incident to more than two leaves");
  }

  void replace(int64_t key, int told, int tnew) {
    auto& slot = leaf_on_edge.at(key);
    if (slot[0] == told)
      slot[0] = tnew;
    else if (slot[1] == told)
      slot[1] = tnew;
    else
      throw std::runtime_error("refine: inconsistent edge adjacency");
  }

  int midpoint_vertex(int a, int b) {
    const int64_t key = edge_key(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int m = static_cast<int>(vertices.size());
    vertices.push_back(0.5 * (vertices[a] + vertices[b]));
    midpoint.emplace(key, m);
    splits.emplace_back(a, b);
    return m;
  }

  void do_split(int t, int m) {
    Node& nd = nodes[t];
    const int a = nd.v[0], b = nd.v[1], c = nd.v[2];
    const int cb = std::max(0, nd.budget - 1);
    const int c1 = static_cast<int>(nodes.size());
    nodes.push_back({{c, a, m}, nd.sub, nd.root, cb, {-1, -1}});
    const int c2 = static_cast<int>(nodes.size());
    nodes.push_back({{b, c, m}, nd.sub, nd.root, cb, {-1, -1}});
    nodes[t].child = {c1, c2};
    replace(edge_key(c, a), t, c1);
    replace(edge_key(b, c), t, c2);
    attach(edge_key(a, m), c1);
    attach(edge_key(m, b), c2);
    attach(edge_key(c, m), c1);
    attach(edge_key(c, m), c2);
    if (cb >= 1) {
      pending.push_back(c1);
      pending.push_back(c2);
    }
  }

  // Split leaf t along its refinement edge, recursively splitting neighbors
  // first until the neighbor across the refinement edge shares it.
  void ensure_split(int t) {
    std::vector<int> stack{t};
    while (!stack.empty()) {
      if (++steps > step_limit)
        throw std::runtime_error("refine: conformity closure did not terminate");
      const int s = stack.back();
      if (!is_leaf(s)) {
        stack.pop_back();
        continue;
      }
      const int64_t key = edge_key(nodes[s].v[0], nodes[s].v[1]);
      const int n = other_leaf(key, s);
      if (n >= 0 && edge_key(nodes[n].v[0], nodes[n].v[1]) != key) {
        stack.push_back(n);
        continue;
      }
      const int m = midpoint_vertex(nodes[s].v[0], nodes[s].v[1]);
      do_split(s, m);
      if (n >= 0) do_split(n, m);
      leaf_on_edge.erase(key);
      stack.pop_back();
    }
  }
};

}  //  namespace

MeshHierarchy refine(const MeshHierarchy& hier, const std::vector<int>& marked,
                     int bisections) {
  if (marked.empty())
    throw std::invalid_argument("refine: empty marked set");
  if (bisections < 1)
    throw std::invalid_argument("refine: bisections must be >= 1");
  const Triangulation& old = hier.finest();

  Forest f;
  f.vertices = old.vertices;
  f.nodes.reserve(4 * old.num_tris());
  for (int t = 0; t < old.num_tris(); ++t)
    f.nodes.push_back({old.tris[t], old.subdomain[t], t, 0, {-1, -1}});
  f.leaf_on_edge.reserve(2 * old.num_edges());
  for (const auto& e : old.edges) {
    auto& slot = f.leaf_on_edge[edge_key(e.v[0], e.v[1])];
    slot = {e.tri[0], e.tri[1]};
  }
  f.step_limit = 64L * old.num_tris() * bisections + 4096;

  for (int t : marked) {
    if (t < 0 || t >= old.num_tris())
      throw std::invalid_argument("refine: marked element outside the finest level");
    f.nodes[t].budget = std::max(f.nodes[t].budget, bisections);
    f.pending.push_back(t);
  }
  for (size_t i = 0; i < f.pending.size(); ++i) {
    const int t = f.pending[i];
    if (f.is_leaf(t) && f.nodes[t].budget >= 1) f.ensure_split(t);
  }

  // Collect leaves in deterministic order: old-triangle order, then depth
  // first with child 0 before child 1.
  Triangulation next;
  next.vertices = std::move(f.vertices);
  std::vector<int> parent;
  std::vector<int> stack;
  for (int r = 0; r < old.num_tris(); ++r) {
    stack.push_back(r);
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      if (f.is_leaf(s)) {
        next.tris.push_back(f.nodes[s].v);
        next.subdomain.push_back(f.nodes[s].sub);
        parent.push_back(f.nodes[s].root);
      } else {
        stack.push_back(f.nodes[s].child[1]);
        stack.push_back(f.nodes[s].child[0]);
      }
    }
  }
  next.finalize();

  MeshHierarchy out = hier;
  out.levels_.push_back(std::make_shared<Triangulation>(std::move(next)));
  out.parent_.push_back(std::move(parent));
  out.split_edges_.push_back(std::move(f.splits));
  return out;
}

MeshHierarchy uniform_refine(const MeshHierarchy& hier, int rounds) {
  MeshHierarchy out = hier;
  for (int r = 0; r < rounds; ++r) {
    std::vector<int> all(out.finest().num_tris());
    std::iota(all.begin(), all.end(), 0);
    out = refine(out, all, 1);
  }
  return out;
}

}  // namespace dgrec
