#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mmcp/forest.hpp"
#include "mmcp/graph.hpp"
#include "mmcp/rng.hpp"

namespace mmcp {

struct HeuristicConfig {
  enum class ImprovementRule {
    BestNeighbor,      // evaluate every candidate, take the best strict improvement
    FirstImprovement,  // scan candidates in order, take the first strict improvement
  };
  ImprovementRule improvement_rule = ImprovementRule::BestNeighbor;
  int max_rounds = 256;        // safety cap on accepted vertex migrations
  std::uint64_t seed = 0;      // edge-order seed for the rebuilt larger-side trees
  bool final_dislodge = true;  // run the dislodge sweep on the final cut
};

// Migration candidates for one feasible cut: V1 is the smaller side (ties:
// the side containing vertex 0) and each pair (p_k in V1, p_next in V2) is a
// graph edge, listed ascending by (p_k, p_next). Moving p_next keeps
// V1 + {p_next} connected because p_next is adjacent to V1.
std::vector<std::pair<int, int>> select_candidates(const Graph& g, const Solution& s);

// Moves p_next (and any parts of V2 that p_next's departure strands) to V1's
// side and rebuilds a spanning tree realizing the new bipartition:
//   - old V2 minus p_next splits into components; the largest one (ties: the
//     one holding the smallest vertex index) stays as the new V2, the rest
//     migrate together with p_next;
//   - the new V1 tree = old V1 tree + edge (p_k, p_next) + a BFS tree over
//     the migrated vertices rooted at p_next;
//   - the new V2 always gets a freshly built spanning tree: a greedy acyclic
//     scan over its internal edges, shuffled when an rng is supplied,
//     ascending by edge index otherwise;
//   - the crossing edge is the heaviest old tree edge across the new split
//     (ties: lowest edge index); one always exists since the old tree spans g.
// Returns nullopt when the new V2 would be empty (|V2| == 1).
std::optional<TreeCut> transform_add_vertex(const Graph& g, const TreeCut& cut, int p_k, int p_next,
                                            Rng* rng = nullptr);

// Local polish: repeatedly move a vertex from the smaller side to the larger
// side when (a) it has a neighbor on the larger side, (b) the smaller side
// stays connected and nonempty without it, and (c) the move strictly
// increases the cut value. Vertices are tried in ascending order and the
// sweep restarts after every move.
Solution dislodge(const Graph& g, const Solution& s);

// Improvement loop: evaluate candidates via transform_add_vertex followed by
// best_cut_of_tree on the transformed tree, accept strict improvements per
// cfg.improvement_rule, stop when no candidate improves, then dislodge.
// Each (round, candidate) pair rebuilds with an rng derived from cfg.seed,
// so results are byte-identical regardless of evaluation order.
Solution improve(const Graph& g, const TreeCut& start, const HeuristicConfig& cfg);

}  // namespace mmcp
