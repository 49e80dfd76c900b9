#pragma once

#include <algorithm>
#include <queue>
#include <span>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "rdom/graph.hpp"

namespace rdom {

struct Source {
  VertexId vertex = 0;
  Length offset = 0;
  std::int64_t id = 0;
};

/// Per-vertex result of a multi-source shortest path search. Every reached
/// vertex carries the lexicographically smallest (distance, source id) key
/// over all sources; ties in distance go to the smaller source id.
struct VoronoiLabels {
  std::vector<Dist> dist;
  std::vector<std::int64_t> owner;
  std::vector<std::optional<std::size_t>> parent_arc;

  bool reached(std::size_t v) const { return dist[v] != kUnreached; }

  // Vertex indices from the owning source to v, following parent arcs.
  std::vector<std::size_t> path_to(const Graph& g, std::size_t v) const {
    std::vector<std::size_t> path;
    if (!reached(v)) return path;
    path.push_back(v);
    while (parent_arc[v]) {
      v = g.arc(*parent_arc[v]).tail;
      path.push_back(v);
    }
    std::reverse(path.begin(), path.end());
    return path;
  }
};

inline VoronoiLabels multi_source_voronoi(const Graph& g, std::span<const Source> sources) {
  const std::size_t n = g.vertex_count();
  VoronoiLabels labels{std::vector<Dist>(n, kUnreached), std::vector<std::int64_t>(n, 0),
                       std::vector<std::optional<std::size_t>>(n)};
  std::unordered_set<std::int64_t> seen_ids;
  for (const auto& s : sources) {
    if (s.offset < 0) throw GraphError("source offset must be nonnegative");
    if (!seen_ids.insert(s.id).second) throw GraphError("duplicate source id " + std::to_string(s.id));
  }

  using Key = std::tuple<Dist, std::int64_t, std::size_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
  std::vector<char> pinned(n, 0);
  auto better = [&](Dist d, std::int64_t owner, std::size_t v) {
    return labels.dist[v] == kUnreached || std::tie(d, owner) < std::tie(labels.dist[v], labels.owner[v]);
  };
  // A source vertex stays in its own cell even when another source reaches
  // it with a smaller key.
  for (const auto& s : sources) {
    auto v = g.require_index(s.vertex);
    pinned[v] = 1;
    if (better(s.offset, s.id, v)) {
      labels.dist[v] = s.offset;
      labels.owner[v] = s.id;
      labels.parent_arc[v].reset();
      queue.emplace(labels.dist[v], s.id, v);
    }
  }
  std::vector<char> settled(n, 0);
  while (!queue.empty()) {
    auto [d, owner, v] = queue.top();
    queue.pop();
    if (settled[v] || d != labels.dist[v] || owner != labels.owner[v]) continue;
    settled[v] = 1;
    for (auto a : g.out_arcs(v)) {
      const auto& arc = g.arc(a);
      Dist nd = d + arc.length;
      if (!settled[arc.head] && !pinned[arc.head] && better(nd, owner, arc.head)) {
        labels.dist[arc.head] = nd;
        labels.owner[arc.head] = owner;
        labels.parent_arc[arc.head] = a;
        queue.emplace(nd, owner, arc.head);
      }
    }
  }
  return labels;
}

inline VoronoiLabels single_source(const Graph& g, std::size_t root, Length offset = 0) {
  Source s{g.id_of(root), offset, 0};
  return multi_source_voronoi(g, std::span<const Source>(&s, 1));
}

}  // namespace rdom
