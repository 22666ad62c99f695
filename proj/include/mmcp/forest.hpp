#pragma once

#include <vector>

#include "mmcp/graph.hpp"

namespace mmcp {

// Spanning tree of a graph, stored as parent-graph edge indices in
// construction order plus its own adjacency. Tie-breaking in
// best_cut_of_tree uses the position in edge_ids, so the stored order is
// part of the contract.
struct SpanningTree {
  int n = 0;
  std::vector<int> edge_ids;               // n-1 parent edge indices
  std::vector<std::vector<AdjEntry>> adj;  // AdjEntry::edge = parent edge index
};

// A cut realized by deleting one tree edge: the deleted edge's parent index
// plus the induced solution.
struct TreeCut {
  SpanningTree tree;
  int disconnected_edge = -1;  // parent edge index
  Solution solution;
};

// Builds a SpanningTree from explicit parent edge indices; validates count
// and acyclicity.
SpanningTree make_tree(const Graph& g, std::vector<int> edge_ids);

// Kruskal scan over the given edge-id order: an edge joins the tree iff its
// endpoints are in different union-find classes. edge_order must be a
// permutation of all edge indices.
SpanningTree kruskal_tree(const Graph& g, const std::vector<int>& edge_order);

// Evaluates all n-1 single-edge deletions of the tree and returns the one
// with the largest crossing weight in g; ties go to the lowest position in
// tree.edge_ids. Crossing weights are accumulated in O(n + m) after an LCA
// pass. The returned solution always satisfies is_minimal_cut; vertex 0
// carries label 0.
TreeCut best_cut_of_tree(const Graph& g, const SpanningTree& t);

// Inverse direction: for any feasible cut, builds a spanning tree in which a
// single edge deletion reproduces exactly that bipartition (a BFS tree per
// side joined by the heaviest crossing edge, ties to the lowest edge index).
// Throws InfeasibleCut when the solution is not a minimal cut.
SpanningTree tree_from_cut(const Graph& g, const Solution& s);

// Parent edge index of the crossing edge chosen by tree_from_cut.
int tree_crossing_edge(const Graph& g, const Solution& s);

}  // namespace mmcp
