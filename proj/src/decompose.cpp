#include "mmcp/decompose.hpp"

#include <algorithm>
#include <cstddef>

namespace mmcp {

std::vector<int> find_bridges(const Graph& g) {
  const std::size_t n = static_cast<std::size_t>(g.n);
  std::vector<int> tin(n, -1), low(n, 0);
  std::vector<int> bridges;
  int timer = 0;

  // Iterative DFS; frame = (vertex, incoming edge id, next adjacency slot).
  struct Frame {
    int v;
    int in_edge;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (int root = 0; root < g.n; ++root) {
    if (tin[static_cast<std::size_t>(root)] >= 0) continue;
    stack.push_back(Frame{root, -1, 0});
    tin[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& lst = g.adj[static_cast<std::size_t>(f.v)];
      if (f.next < lst.size()) {
        const AdjEntry ae = lst[f.next++];
        if (ae.edge == f.in_edge) continue;  // simple graph: skip the one parent edge
        const std::size_t to = static_cast<std::size_t>(ae.to);
        if (tin[to] >= 0) {
          low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], tin[to]);
        } else {
          tin[to] = low[to] = timer++;
          stack.push_back(Frame{ae.to, ae.edge, 0});
        }
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          Frame& p = stack.back();
          const std::size_t pv = static_cast<std::size_t>(p.v);
          const std::size_t cv = static_cast<std::size_t>(f.v);
          low[pv] = std::min(low[pv], low[cv]);
          if (low[cv] > tin[pv]) bridges.push_back(f.in_edge);
        }
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

Decomposition decompose(const Graph& g) {
  Decomposition d;
  d.bridge_ids = find_bridges(g);

  std::vector<std::uint8_t> is_bridge(static_cast<std::size_t>(g.m()), 0);
  for (int id : d.bridge_ids) is_bridge[static_cast<std::size_t>(id)] = 1;

  // Pieces = connected components after deleting bridge edges.
  d.piece_of.assign(static_cast<std::size_t>(g.n), -1);
  int piece_count = 0;
  std::vector<int> queue;
  for (int s = 0; s < g.n; ++s) {
    if (d.piece_of[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = piece_count++;
    d.piece_of[static_cast<std::size_t>(s)] = id;
    queue.assign(1, s);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (const AdjEntry& ae : g.adj[static_cast<std::size_t>(queue[qi])]) {
        if (is_bridge[static_cast<std::size_t>(ae.edge)]) continue;
        if (d.piece_of[static_cast<std::size_t>(ae.to)] >= 0) continue;
        d.piece_of[static_cast<std::size_t>(ae.to)] = id;
        queue.push_back(ae.to);
      }
    }
  }

  std::vector<std::vector<int>> members(static_cast<std::size_t>(piece_count));
  for (int v = 0; v < g.n; ++v)
    members[static_cast<std::size_t>(d.piece_of[static_cast<std::size_t>(v)])].push_back(v);

  for (std::size_t p = 0; p < members.size(); ++p) {
    if (members[p].size() < 2) {
      ++d.singleton_count;
      continue;
    }
    std::vector<int> local(static_cast<std::size_t>(g.n), -1);
    for (std::size_t i = 0; i < members[p].size(); ++i)
      local[static_cast<std::size_t>(members[p][i])] = static_cast<int>(i);
    std::vector<Edge> sub_edges;
    for (int id = 0; id < g.m(); ++id) {
      if (is_bridge[static_cast<std::size_t>(id)]) continue;
      const Edge& e = g.edges[static_cast<std::size_t>(id)];
      const int lu = local[static_cast<std::size_t>(e.u)];
      const int lv = local[static_cast<std::size_t>(e.v)];
      if (lu < 0 || lv < 0) continue;  // edge belongs to another piece
      sub_edges.push_back(Edge{lu, lv, e.w});
    }
    ComponentPart part;
    part.subgraph = build_graph(static_cast<int>(members[p].size()), sub_edges);
    part.vertex_map = members[p];
    d.components.push_back(std::move(part));
  }
  return d;
}

namespace {

// Labels the whole parent graph from seed labels on a subset of vertices.
// Every unlabeled vertex hangs off the seeded set through bridges only, so
// every path from the seeds to it enters through the same attachment vertex
// and the flooded label is independent of traversal order.
Assignment flood_labels(const Graph& g, const std::vector<int>& seeds, const Assignment& seed_labels) {
  Assignment out(static_cast<std::size_t>(g.n), 0);
  std::vector<std::uint8_t> known(static_cast<std::size_t>(g.n), 0);
  std::vector<int> queue;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    out[static_cast<std::size_t>(seeds[i])] = seed_labels[i];
    known[static_cast<std::size_t>(seeds[i])] = 1;
    queue.push_back(seeds[i]);
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int v = queue[qi];
    for (const AdjEntry& ae : g.adj[static_cast<std::size_t>(v)]) {
      if (known[static_cast<std::size_t>(ae.to)]) continue;
      known[static_cast<std::size_t>(ae.to)] = 1;
      out[static_cast<std::size_t>(ae.to)] = out[static_cast<std::size_t>(v)];
      queue.push_back(ae.to);
    }
  }
  return out;
}

// Assignment induced by deleting one bridge: the side reached from e.u gets
// one label, the rest the other.
Assignment bridge_split(const Graph& g, const Edge& bridge) {
  Assignment labels(static_cast<std::size_t>(g.n), 1);
  std::vector<int> queue{bridge.u};
  labels[static_cast<std::size_t>(bridge.u)] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int v = queue[qi];
    for (const AdjEntry& ae : g.adj[static_cast<std::size_t>(v)]) {
      const Edge& e = g.edges[static_cast<std::size_t>(ae.edge)];
      if ((e.u == bridge.u && e.v == bridge.v) || (e.u == bridge.v && e.v == bridge.u)) continue;
      if (labels[static_cast<std::size_t>(ae.to)] == 0) continue;
      labels[static_cast<std::size_t>(ae.to)] = 0;
      queue.push_back(ae.to);
    }
  }
  return labels;
}

}  // namespace

Solution combine(const Graph& g, const std::vector<Edge>& bridges,
                 const std::vector<ComponentSolution>& component_solutions) {
  int best_comp = -1;
  double best_comp_value = 0.0;
  for (std::size_t c = 0; c < component_solutions.size(); ++c) {
    const Solution& s = component_solutions[c].first;
    if (!s.feasible) continue;
    if (best_comp < 0 || s.cut_value > best_comp_value) {
      best_comp = static_cast<int>(c);
      best_comp_value = s.cut_value;
    }
  }
  int best_bridge = -1;
  double best_bridge_value = 0.0;
  for (std::size_t b = 0; b < bridges.size(); ++b) {
    if (best_bridge < 0 || bridges[b].w > best_bridge_value) {
      best_bridge = static_cast<int>(b);
      best_bridge_value = bridges[b].w;
    }
  }
  if (best_comp < 0 && best_bridge < 0)
    throw NoCandidates("graph admits no cut candidate (no bridge, no feasible component solution)");

  Assignment lifted;
  Provenance prov;
  if (best_comp >= 0 && (best_bridge < 0 || best_comp_value >= best_bridge_value)) {
    const auto& [sol, vmap] = component_solutions[static_cast<std::size_t>(best_comp)];
    lifted = flood_labels(g, vmap, sol.assignment);
    prov = sol.provenance;
  } else {
    lifted = bridge_split(g, bridges[static_cast<std::size_t>(best_bridge)]);
    prov = Provenance::Bridge;
  }
  if (lifted[0] == 1) lifted = complement(std::move(lifted));
  return make_solution(g, std::move(lifted), prov);
}

}  // namespace mmcp
