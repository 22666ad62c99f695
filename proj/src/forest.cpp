#include "mmcp/forest.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>

namespace mmcp {

namespace {

struct UnionFind {
  std::vector<int> parent, rank_;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)), rank_(static_cast<std::size_t>(n), 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
    if (rank_[static_cast<std::size_t>(a)] == rank_[static_cast<std::size_t>(b)])
      ++rank_[static_cast<std::size_t>(a)];
    return true;
  }
};

}  // namespace

SpanningTree make_tree(const Graph& g, std::vector<int> edge_ids) {
  if (static_cast<int>(edge_ids.size()) != g.n - 1)
    throw Error("spanning tree needs n-1 edges, got " + std::to_string(edge_ids.size()));
  SpanningTree t;
  t.n = g.n;
  t.adj.assign(static_cast<std::size_t>(g.n), {});
  UnionFind uf(g.n);
  for (int id : edge_ids) {
    const Edge& e = g.edges[static_cast<std::size_t>(id)];
    if (!uf.unite(e.u, e.v)) throw Error("edge set contains a cycle; not a spanning tree");
    t.adj[static_cast<std::size_t>(e.u)].push_back(AdjEntry{e.v, id});
    t.adj[static_cast<std::size_t>(e.v)].push_back(AdjEntry{e.u, id});
  }
  t.edge_ids = std::move(edge_ids);
  return t;
}

SpanningTree kruskal_tree(const Graph& g, const std::vector<int>& edge_order) {
  UnionFind uf(g.n);
  std::vector<int> picked;
  picked.reserve(static_cast<std::size_t>(g.n > 0 ? g.n - 1 : 0));
  for (int id : edge_order) {
    const Edge& e = g.edges[static_cast<std::size_t>(id)];
    if (uf.unite(e.u, e.v)) {
      picked.push_back(id);
      if (static_cast<int>(picked.size()) == g.n - 1) break;
    }
  }
  return make_tree(g, std::move(picked));
}

TreeCut best_cut_of_tree(const Graph& g, const SpanningTree& t) {
  const int n = g.n;
  const std::size_t un = static_cast<std::size_t>(n);
  if (n < 2) throw Error("best_cut_of_tree requires at least two vertices");

  // Root the tree at 0; BFS order gives parents and depths.
  std::vector<int> order;
  order.reserve(un);
  std::vector<int> parent(un, -1), depth(un, 0), parent_edge(un, -1);
  std::vector<std::uint8_t> seen(un, 0);
  order.push_back(0);
  seen[0] = 1;
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    const int v = order[qi];
    for (const AdjEntry& ae : t.adj[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(ae.to)]) continue;
      seen[static_cast<std::size_t>(ae.to)] = 1;
      parent[static_cast<std::size_t>(ae.to)] = v;
      parent_edge[static_cast<std::size_t>(ae.to)] = ae.edge;
      depth[static_cast<std::size_t>(ae.to)] = depth[static_cast<std::size_t>(v)] + 1;
      order.push_back(ae.to);
    }
  }

  // Binary lifting for LCA.
  int log = 1;
  while ((1 << log) < n) ++log;
  std::vector<std::vector<int>> up(static_cast<std::size_t>(log + 1), std::vector<int>(un, 0));
  for (int v = 0; v < n; ++v)
    up[0][static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(v)] < 0 ? 0 : parent[static_cast<std::size_t>(v)];
  for (int k = 1; k <= log; ++k)
    for (int v = 0; v < n; ++v)
      up[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] =
          up[static_cast<std::size_t>(k - 1)]
            [static_cast<std::size_t>(up[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(v)])];
  auto lca = [&](int a, int b) {
    if (depth[static_cast<std::size_t>(a)] < depth[static_cast<std::size_t>(b)]) std::swap(a, b);
    int diff = depth[static_cast<std::size_t>(a)] - depth[static_cast<std::size_t>(b)];
    for (int k = 0; diff; ++k, diff >>= 1)
      if (diff & 1) a = up[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)];
    if (a == b) return a;
    for (int k = log; k >= 0; --k) {
      const int ua = up[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)];
      const int ub = up[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)];
      if (ua != ub) {
        a = ua;
        b = ub;
      }
    }
    return up[0][static_cast<std::size_t>(a)];
  };

  // Each graph edge (u, v, w) contributes w to the crossing weight of every
  // tree-edge deletion on the tree path u..v. Diff-array form: +w at both
  // endpoints, -2w at the LCA; subtree sums then give, for the tree edge
  // above vertex c, the crossing weight sub[c].
  std::vector<double> score(un, 0.0);
  for (const Edge& e : g.edges) {
    const int a = lca(e.u, e.v);
    score[static_cast<std::size_t>(e.u)] += e.w;
    score[static_cast<std::size_t>(e.v)] += e.w;
    score[static_cast<std::size_t>(a)] -= 2.0 * e.w;
  }
  std::vector<double> sub = score;
  for (std::size_t i = order.size(); i-- > 1;) {
    const int v = order[i];
    sub[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])] += sub[static_cast<std::size_t>(v)];
  }

  // Map each tree-edge position to its child endpoint, then scan positions in
  // order: strict > keeps the lowest position on ties.
  std::vector<int> child_of_pos(static_cast<std::size_t>(n - 1), -1);
  for (int v = 1; v < n; ++v) {
    const int id = parent_edge[static_cast<std::size_t>(v)];
    const auto it = std::find(t.edge_ids.begin(), t.edge_ids.end(), id);
    child_of_pos[static_cast<std::size_t>(it - t.edge_ids.begin())] = v;
  }
  int best_pos = -1;
  double best_value = 0.0;
  for (int pos = 0; pos < n - 1; ++pos) {
    const double val = sub[static_cast<std::size_t>(child_of_pos[static_cast<std::size_t>(pos)])];
    if (best_pos < 0 || val > best_value) {
      best_pos = pos;
      best_value = val;
    }
  }

  // Label the subtree under the chosen edge 1, the root side 0.
  Assignment labels(un, 0);
  const int best_child = child_of_pos[static_cast<std::size_t>(best_pos)];
  const int cut_edge = t.edge_ids[static_cast<std::size_t>(best_pos)];
  std::vector<int> queue{best_child};
  labels[static_cast<std::size_t>(best_child)] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const AdjEntry& ae : t.adj[static_cast<std::size_t>(queue[qi])]) {
      if (ae.edge == cut_edge || labels[static_cast<std::size_t>(ae.to)] == 1) continue;
      if (parent[static_cast<std::size_t>(ae.to)] != queue[qi]) continue;
      labels[static_cast<std::size_t>(ae.to)] = 1;
      queue.push_back(ae.to);
    }
  }

  TreeCut out;
  out.tree = t;
  out.disconnected_edge = cut_edge;
  out.solution = make_solution(g, std::move(labels), Provenance::RandomTree);
  if (!out.solution.feasible)
    throw std::logic_error("tree cut produced a non-minimal cut; tree is inconsistent with graph");
  return out;
}

int tree_crossing_edge(const Graph& g, const Solution& s) {
  int best = -1;
  for (int id = 0; id < g.m(); ++id) {
    const Edge& e = g.edges[static_cast<std::size_t>(id)];
    if (s.assignment[static_cast<std::size_t>(e.u)] == s.assignment[static_cast<std::size_t>(e.v)])
      continue;
    if (best < 0 || e.w > g.edges[static_cast<std::size_t>(best)].w) best = id;
  }
  return best;
}

SpanningTree tree_from_cut(const Graph& g, const Solution& s) {
  if (!is_minimal_cut(g, s.assignment))
    throw InfeasibleCut("tree_from_cut requires a minimal cut");

  std::vector<int> tree_edges;
  tree_edges.reserve(static_cast<std::size_t>(g.n - 1));
  // BFS tree of each side, rooted at the side's lowest vertex.
  for (std::uint8_t side = 0; side <= 1; ++side) {
    int start = -1;
    for (int v = 0; v < g.n; ++v)
      if (s.assignment[static_cast<std::size_t>(v)] == side) {
        start = v;
        break;
      }
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.n), 0);
    std::vector<int> queue{start};
    seen[static_cast<std::size_t>(start)] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (const AdjEntry& ae : g.adj[static_cast<std::size_t>(queue[qi])]) {
        if (s.assignment[static_cast<std::size_t>(ae.to)] != side) continue;
        if (seen[static_cast<std::size_t>(ae.to)]) continue;
        seen[static_cast<std::size_t>(ae.to)] = 1;
        tree_edges.push_back(ae.edge);
        queue.push_back(ae.to);
      }
    }
  }
  tree_edges.push_back(tree_crossing_edge(g, s));
  return make_tree(g, std::move(tree_edges));
}

}  // namespace mmcp
