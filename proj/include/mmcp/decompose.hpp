#pragma once

#include <utility>
#include <vector>

#include "mmcp/graph.hpp"

namespace mmcp {

// One bridge-free piece with at least two vertices, re-indexed as its own
// connected graph. vertex_map[local] = parent vertex index (ascending).
struct ComponentPart {
  Graph subgraph;
  std::vector<int> vertex_map;
};

// Bridge decomposition of a connected graph: every edge is either a bridge or
// lives in exactly one 2-edge-connected piece. Pieces of size one are only
// counted — a single vertex admits no cut.
struct Decomposition {
  std::vector<int> bridge_ids;            // indices into the parent edge list
  std::vector<ComponentPart> components;  // pieces with >= 2 vertices
  int singleton_count = 0;
  std::vector<int> piece_of;  // parent vertex -> bridge-free piece id

  std::vector<Edge> bridges(const Graph& g) const {
    std::vector<Edge> out;
    out.reserve(bridge_ids.size());
    for (int id : bridge_ids) out.push_back(g.edges[static_cast<std::size_t>(id)]);
    return out;
  }
};

// Edge indices of all bridges (edges whose removal disconnects the graph).
std::vector<int> find_bridges(const Graph& g);

Decomposition decompose(const Graph& g);

// A solution of a component lifted back to the parent graph, as
// (component solution, vertex_map).
using ComponentSolution = std::pair<Solution, std::vector<int>>;

// Optimal-cut composition rule: the best cut of g is the best among (a) each
// bridge, cutting the graph at that bridge, and (b) each component's cut
// lifted to the whole graph. Infeasible component solutions are ignored; ties
// prefer components over bridges, then the lowest index. The returned
// assignment is normalized so vertex 0 carries label 0. Throws NoCandidates
// when no feasible candidate exists (e.g. a single-vertex graph).
Solution combine(const Graph& g, const std::vector<Edge>& bridges,
                 const std::vector<ComponentSolution>& component_solutions);

}  // namespace mmcp
