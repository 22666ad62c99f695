#include "mmcp/graph.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>

namespace mmcp {

double Graph::total_weight() const {
  double s = 0.0;
  for (const Edge& e : edges) s += e.w;
  return s;
}

bool Graph::has_edge(int u, int v) const {
  const auto& lst = adj[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(lst.begin(), lst.end(), v,
                             [](const AdjEntry& a, int key) { return a.to < key; });
  return it != lst.end() && it->to == v;
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::BruteForce: return "brute-force";
    case Provenance::RandomTree: return "random-tree";
    case Provenance::Relaxation: return "relaxation";
    case Provenance::Heuristic: return "heuristic";
    case Provenance::Genetic: return "genetic";
    case Provenance::Bridge: return "bridge";
  }
  return "unknown";
}

Graph build_graph(int n, const std::vector<Edge>& edge_list) {
  if (n <= 0) throw EmptyGraph("graph must have at least one vertex");

  Graph g;
  g.n = n;
  g.adj.assign(static_cast<std::size_t>(n), {});

  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edge_list) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw VertexOutOfRange("edge endpoint out of [0, n): (" + std::to_string(e.u) + ", " +
                             std::to_string(e.v) + ")");
    if (e.u == e.v) continue;  // self loop: dropped
    const auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) continue;  // duplicate: first occurrence kept
    if (!(e.w > 0.0))
      throw NonpositiveWeight("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                              ") has nonpositive weight " + std::to_string(e.w));
    const int id = g.m();
    g.edges.push_back(Edge{key.first, key.second, e.w});
    g.adj[static_cast<std::size_t>(key.first)].push_back(AdjEntry{key.second, id});
    g.adj[static_cast<std::size_t>(key.second)].push_back(AdjEntry{key.first, id});
  }

  for (auto& lst : g.adj)
    std::sort(lst.begin(), lst.end(),
              [](const AdjEntry& a, const AdjEntry& b) { return a.to < b.to; });

  const ComponentLabeling cc = connected_components(g);
  if (cc.count != 1)
    throw DisconnectedInput("input graph has " + std::to_string(cc.count) +
                            " connected components; expected 1");
  return g;
}

double cut_value(const Graph& g, const Assignment& a) {
  double s = 0.0;
  for (const Edge& e : g.edges)
    if (a[static_cast<std::size_t>(e.u)] != a[static_cast<std::size_t>(e.v)]) s += e.w;
  return s;
}

namespace {

// BFS over the induced subgraph; returns number of vertices reached.
int bfs_side(const Graph& g, const Assignment& a, std::uint8_t side, int start,
             std::vector<std::uint8_t>& visited) {
  std::vector<int> queue{start};
  visited[static_cast<std::size_t>(start)] = 1;
  int reached = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int v = queue[qi];
    for (const AdjEntry& ae : g.adj[static_cast<std::size_t>(v)]) {
      if (a[static_cast<std::size_t>(ae.to)] != side) continue;
      if (visited[static_cast<std::size_t>(ae.to)]) continue;
      visited[static_cast<std::size_t>(ae.to)] = 1;
      ++reached;
      queue.push_back(ae.to);
    }
  }
  return reached;
}

}  // namespace

bool is_minimal_cut(const Graph& g, const Assignment& a) {
  int size0 = 0, size1 = 0;
  int first0 = -1, first1 = -1;
  for (int v = 0; v < g.n; ++v) {
    if (a[static_cast<std::size_t>(v)] == 0) {
      ++size0;
      if (first0 < 0) first0 = v;
    } else {
      ++size1;
      if (first1 < 0) first1 = v;
    }
  }
  if (size0 == 0 || size1 == 0) return false;
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(g.n), 0);
  if (bfs_side(g, a, 0, first0, visited) != size0) return false;
  if (bfs_side(g, a, 1, first1, visited) != size1) return false;
  return true;
}

ComponentLabeling connected_components(const Graph& g, const std::vector<std::uint8_t>& in_subset) {
  ComponentLabeling out;
  out.comp.assign(static_cast<std::size_t>(g.n), -1);
  std::vector<int> queue;
  for (int s = 0; s < g.n; ++s) {
    if (!in_subset[static_cast<std::size_t>(s)] || out.comp[static_cast<std::size_t>(s)] >= 0)
      continue;
    const int id = out.count++;
    out.comp[static_cast<std::size_t>(s)] = id;
    queue.assign(1, s);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (const AdjEntry& ae : g.adj[static_cast<std::size_t>(queue[qi])]) {
        if (!in_subset[static_cast<std::size_t>(ae.to)]) continue;
        if (out.comp[static_cast<std::size_t>(ae.to)] >= 0) continue;
        out.comp[static_cast<std::size_t>(ae.to)] = id;
        queue.push_back(ae.to);
      }
    }
  }
  return out;
}

ComponentLabeling connected_components(const Graph& g) {
  return connected_components(g, std::vector<std::uint8_t>(static_cast<std::size_t>(g.n), 1));
}

ComponentLabeling agreement_components(const Graph& g, const Assignment& a) {
  ComponentLabeling out;
  out.comp.assign(static_cast<std::size_t>(g.n), -1);
  std::vector<int> queue;
  for (int s = 0; s < g.n; ++s) {
    if (out.comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = out.count++;
    out.comp[static_cast<std::size_t>(s)] = id;
    queue.assign(1, s);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int v = queue[qi];
      for (const AdjEntry& ae : g.adj[static_cast<std::size_t>(v)]) {
        if (a[static_cast<std::size_t>(ae.to)] != a[static_cast<std::size_t>(v)]) continue;
        if (out.comp[static_cast<std::size_t>(ae.to)] >= 0) continue;
        out.comp[static_cast<std::size_t>(ae.to)] = id;
        queue.push_back(ae.to);
      }
    }
  }
  return out;
}

Solution make_solution(const Graph& g, Assignment a, Provenance p) {
  Solution s;
  s.cut_value = cut_value(g, a);
  s.feasible = is_minimal_cut(g, a);
  s.assignment = std::move(a);
  s.provenance = p;
  return s;
}

Assignment complement(Assignment a) {
  for (auto& x : a) x = static_cast<std::uint8_t>(1 - x);
  return a;
}

std::vector<Edge> crossing_edges(const Graph& g, const Assignment& a) {
  std::vector<Edge> out;
  for (const Edge& e : g.edges)
    if (a[static_cast<std::size_t>(e.u)] != a[static_cast<std::size_t>(e.v)]) out.push_back(e);
  return out;
}

}  // namespace mmcp
