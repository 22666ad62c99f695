#include "mmcp/heuristic.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace mmcp {

namespace {

// Label of the smaller side; ties go to the side containing vertex 0.
std::uint8_t smaller_side(const Assignment& a) {
  int size1 = 0;
  for (std::uint8_t x : a) size1 += x;
  const int size0 = static_cast<int>(a.size()) - size1;
  if (size0 != size1) return size0 < size1 ? 0 : 1;
  return a[0];
}

}  // namespace

std::vector<std::pair<int, int>> select_candidates(const Graph& g, const Solution& s) {
  const std::uint8_t v1 = smaller_side(s.assignment);
  std::vector<std::pair<int, int>> out;
  for (int pk = 0; pk < g.n; ++pk) {
    if (s.assignment[static_cast<std::size_t>(pk)] != v1) continue;
    for (const AdjEntry& ae : g.adj[static_cast<std::size_t>(pk)])
      if (s.assignment[static_cast<std::size_t>(ae.to)] != v1) out.emplace_back(pk, ae.to);
  }
  return out;
}

std::optional<TreeCut> transform_add_vertex(const Graph& g, const TreeCut& cut, int p_k, int p_next,
                                            Rng* rng) {
  const Assignment& old_labels = cut.solution.assignment;
  const std::uint8_t side1 = old_labels[static_cast<std::size_t>(p_k)];
  const std::uint8_t side2 = old_labels[static_cast<std::size_t>(p_next)];
  if (side1 == side2) throw Error("transform_add_vertex: candidate endpoints share a side");
  if (!g.has_edge(p_k, p_next)) throw Error("transform_add_vertex: candidate pair is not an edge");

  // Components of old V2 without p_next.
  std::vector<std::uint8_t> v2_rest(static_cast<std::size_t>(g.n), 0);
  int v2_rest_size = 0;
  for (int v = 0; v < g.n; ++v)
    if (old_labels[static_cast<std::size_t>(v)] == side2 && v != p_next) {
      v2_rest[static_cast<std::size_t>(v)] = 1;
      ++v2_rest_size;
    }
  if (v2_rest_size == 0) return std::nullopt;  // the new V2 would be empty

  const ComponentLabeling comps = connected_components(g, v2_rest);
  std::vector<int> comp_size(static_cast<std::size_t>(comps.count), 0);
  std::vector<int> comp_min(static_cast<std::size_t>(comps.count), std::numeric_limits<int>::max());
  for (int v = 0; v < g.n; ++v) {
    const int c = comps.comp[static_cast<std::size_t>(v)];
    if (c < 0) continue;
    ++comp_size[static_cast<std::size_t>(c)];
    comp_min[static_cast<std::size_t>(c)] = std::min(comp_min[static_cast<std::size_t>(c)], v);
  }
  int keep = 0;
  for (int c = 1; c < comps.count; ++c) {
    if (comp_size[static_cast<std::size_t>(c)] > comp_size[static_cast<std::size_t>(keep)] ||
        (comp_size[static_cast<std::size_t>(c)] == comp_size[static_cast<std::size_t>(keep)] &&
         comp_min[static_cast<std::size_t>(c)] < comp_min[static_cast<std::size_t>(keep)]))
      keep = c;
  }

  // New labels: p_next and every non-kept component migrate to V1's side.
  Assignment labels = old_labels;
  labels[static_cast<std::size_t>(p_next)] = side1;
  for (int v = 0; v < g.n; ++v) {
    const int c = comps.comp[static_cast<std::size_t>(v)];
    if (c >= 0 && c != keep) labels[static_cast<std::size_t>(v)] = side1;
  }

  std::vector<int> tree_edges;
  tree_edges.reserve(static_cast<std::size_t>(g.n - 1));

  // Old V1 subtree survives unchanged.
  for (int id : cut.tree.edge_ids) {
    const Edge& e = g.edges[static_cast<std::size_t>(id)];
    if (old_labels[static_cast<std::size_t>(e.u)] == side1 &&
        old_labels[static_cast<std::size_t>(e.v)] == side1)
      tree_edges.push_back(id);
  }
  // Attach p_next through the candidate edge.
  int attach_id = -1;
  for (const AdjEntry& ae : g.adj[static_cast<std::size_t>(p_k)])
    if (ae.to == p_next) attach_id = ae.edge;
  tree_edges.push_back(attach_id);
  // Span the migrated vertices from p_next. Every migrated component was
  // attached to old V2 only through p_next, so this BFS reaches all of them.
  {
    std::vector<std::uint8_t> in_migrated(static_cast<std::size_t>(g.n), 0);
    in_migrated[static_cast<std::size_t>(p_next)] = 1;
    for (int v = 0; v < g.n; ++v) {
      const int c = comps.comp[static_cast<std::size_t>(v)];
      if (c >= 0 && c != keep) in_migrated[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.n), 0);
    std::vector<int> queue{p_next};
    seen[static_cast<std::size_t>(p_next)] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (const AdjEntry& ae : g.adj[static_cast<std::size_t>(queue[qi])]) {
        if (!in_migrated[static_cast<std::size_t>(ae.to)] || seen[static_cast<std::size_t>(ae.to)])
          continue;
        seen[static_cast<std::size_t>(ae.to)] = 1;
        tree_edges.push_back(ae.edge);
        queue.push_back(ae.to);
      }
    }
  }

  // New V2 = kept component. It always gets a freshly built spanning tree:
  // greedy acyclic scan over the component's internal edges, in shuffled
  // order when an rng is supplied, ascending by edge index otherwise.
  {
    std::vector<int> internal;
    for (int id = 0; id < g.m(); ++id) {
      const Edge& e = g.edges[static_cast<std::size_t>(id)];
      if (comps.comp[static_cast<std::size_t>(e.u)] == keep &&
          comps.comp[static_cast<std::size_t>(e.v)] == keep)
        internal.push_back(id);
    }
    if (rng != nullptr) rng->shuffle(internal);
    std::vector<int> parent(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) parent[static_cast<std::size_t>(v)] = v;
    auto find = [&parent](int v) {
      while (parent[static_cast<std::size_t>(v)] != v) {
        parent[static_cast<std::size_t>(v)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        v = parent[static_cast<std::size_t>(v)];
      }
      return v;
    };
    int added = 0;
    const int need = comp_size[static_cast<std::size_t>(keep)] - 1;
    for (int id : internal) {
      if (added == need) break;
      const Edge& e = g.edges[static_cast<std::size_t>(id)];
      const int ru = find(e.u), rv = find(e.v);
      if (ru == rv) continue;
      parent[static_cast<std::size_t>(ru)] = rv;
      tree_edges.push_back(id);
      ++added;
    }
  }

  // Crossing edge: heaviest old tree edge across the new split.
  int montage = -1;
  for (int id : cut.tree.edge_ids) {
    const Edge& e = g.edges[static_cast<std::size_t>(id)];
    if (labels[static_cast<std::size_t>(e.u)] == labels[static_cast<std::size_t>(e.v)]) continue;
    if (montage < 0 || e.w > g.edges[static_cast<std::size_t>(montage)].w) montage = id;
  }
  tree_edges.push_back(montage);

  TreeCut out;
  out.tree = make_tree(g, std::move(tree_edges));
  out.disconnected_edge = montage;
  out.solution = make_solution(g, std::move(labels), Provenance::Heuristic);
  if (!out.solution.feasible)
    throw std::logic_error("transform_add_vertex produced a non-minimal cut");
  return out;
}

Solution dislodge(const Graph& g, const Solution& s) {
  Assignment labels = s.assignment;

  bool moved = true;
  while (moved) {
    moved = false;
    const std::uint8_t small = smaller_side(labels);
    int small_size = 0;
    for (std::uint8_t x : labels) small_size += (x == small);

    for (int v = 0; v < g.n && !moved; ++v) {
      if (labels[static_cast<std::size_t>(v)] != small) continue;
      if (small_size <= 1) break;  // removal would empty the side

      double to_small = 0.0, to_large = 0.0;
      bool has_large_neighbor = false;
      for (const AdjEntry& ae : g.adj[static_cast<std::size_t>(v)]) {
        const double w = g.edges[static_cast<std::size_t>(ae.edge)].w;
        if (labels[static_cast<std::size_t>(ae.to)] == small) {
          to_small += w;
        } else {
          to_large += w;
          has_large_neighbor = true;
        }
      }
      if (!has_large_neighbor || !(to_small > to_large)) continue;

      std::vector<std::uint8_t> rest(static_cast<std::size_t>(g.n), 0);
      for (int u = 0; u < g.n; ++u)
        if (labels[static_cast<std::size_t>(u)] == small && u != v)
          rest[static_cast<std::size_t>(u)] = 1;
      if (connected_components(g, rest).count != 1) continue;

      labels[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(1 - small);
      moved = true;
    }
  }

  return make_solution(g, std::move(labels), Provenance::Heuristic);
}

Solution improve(const Graph& g, const TreeCut& start, const HeuristicConfig& cfg) {
  TreeCut current = best_cut_of_tree(g, start.tree);

  for (int round = 0; round < cfg.max_rounds; ++round) {
    const auto candidates = select_candidates(g, current.solution);
    if (candidates.empty()) break;

    int accepted = -1;
    TreeCut accepted_cut;

    if (cfg.improvement_rule == HeuristicConfig::ImprovementRule::FirstImprovement) {
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(round), c));
        auto moved =
            transform_add_vertex(g, current, candidates[c].first, candidates[c].second, &rng);
        if (!moved) continue;
        TreeCut evaluated = best_cut_of_tree(g, moved->tree);
        if (evaluated.solution.cut_value > current.solution.cut_value) {
          accepted = static_cast<int>(c);
          accepted_cut = std::move(evaluated);
          break;
        }
      }
    } else {
      const int count = static_cast<int>(candidates.size());
      std::vector<double> values(static_cast<std::size_t>(count),
                                 -std::numeric_limits<double>::infinity());
      std::vector<TreeCut> cuts(static_cast<std::size_t>(count));
      bool failed = false;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
      for (int c = 0; c < count; ++c) {
        try {
          Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(round),
                              static_cast<std::uint64_t>(c)));
          auto moved = transform_add_vertex(g, current, candidates[static_cast<std::size_t>(c)].first,
                                            candidates[static_cast<std::size_t>(c)].second, &rng);
          if (!moved) continue;
          TreeCut evaluated = best_cut_of_tree(g, moved->tree);
          values[static_cast<std::size_t>(c)] = evaluated.solution.cut_value;
          cuts[static_cast<std::size_t>(c)] = std::move(evaluated);
        } catch (...) {
          failed = true;  // exceptions must not escape the parallel region
        }
      }
      if (failed) throw std::logic_error("candidate evaluation failed during improve");
      int best = -1;
      for (int c = 0; c < count; ++c)
        if (best < 0 || values[static_cast<std::size_t>(c)] > values[static_cast<std::size_t>(best)])
          best = c;
      if (best >= 0 && values[static_cast<std::size_t>(best)] > current.solution.cut_value) {
        accepted = best;
        accepted_cut = std::move(cuts[static_cast<std::size_t>(best)]);
      }
    }

    if (accepted < 0) break;
    current = std::move(accepted_cut);
  }

  Solution out = current.solution;
  if (cfg.final_dislodge) out = dislodge(g, out);
  out.provenance = Provenance::Heuristic;
  return out;
}

}  // namespace mmcp
