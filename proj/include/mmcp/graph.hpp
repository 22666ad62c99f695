#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmcp/errors.hpp"

namespace mmcp {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

struct AdjEntry {
  int to = 0;
  int edge = 0;  // index into Graph::edges
};

// Simple undirected weighted graph. Invariants established by build_graph:
// connected, no self loops, no duplicate edges, all weights > 0, adjacency
// lists sorted by neighbor index.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<AdjEntry>> adj;

  int m() const { return static_cast<int>(edges.size()); }
  double total_weight() const;
  bool has_edge(int u, int v) const;
  int degree(int v) const { return static_cast<int>(adj[static_cast<std::size_t>(v)].size()); }
};

// Bipartition labels, one byte per vertex, values 0/1.
using Assignment = std::vector<std::uint8_t>;

enum class Provenance { BruteForce, RandomTree, Relaxation, Heuristic, Genetic, Bridge };

const char* provenance_name(Provenance p);

struct Solution {
  Assignment assignment;
  double cut_value = 0.0;
  bool feasible = false;
  Provenance provenance = Provenance::BruteForce;
};

// Validates and normalizes an edge list: vertex indices must lie in [0, n);
// self loops and duplicate edges (either orientation, first occurrence kept)
// are dropped; surviving weights must be > 0; the result must be connected.
// Throws EmptyGraph, VertexOutOfRange, NonpositiveWeight, DisconnectedInput.
Graph build_graph(int n, const std::vector<Edge>& edge_list);

// Sum of weights of edges whose endpoints carry different labels.
double cut_value(const Graph& g, const Assignment& a);

// True iff both label classes are nonempty and each induces a connected
// subgraph. For a connected graph this is exactly the minimal-cut condition.
bool is_minimal_cut(const Graph& g, const Assignment& a);

struct ComponentLabeling {
  int count = 0;
  std::vector<int> comp;  // component id per vertex; -1 outside the subset
};

// Components of the subgraph induced by {v : in_subset[v] != 0}.
ComponentLabeling connected_components(const Graph& g, const std::vector<std::uint8_t>& in_subset);
ComponentLabeling connected_components(const Graph& g);

// Components of the "agreement" subgraph: all n vertices, keeping only edges
// whose endpoints share a label. Count == 2 iff the assignment is a minimal
// cut of a connected graph.
ComponentLabeling agreement_components(const Graph& g, const Assignment& a);

// Recomputes cut_value and feasibility from scratch.
Solution make_solution(const Graph& g, Assignment a, Provenance p);

Assignment complement(Assignment a);

// Edges crossing the assignment, ascending by edge index.
std::vector<Edge> crossing_edges(const Graph& g, const Assignment& a);

}  // namespace mmcp
