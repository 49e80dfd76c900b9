#pragma once

#include <numeric>
#include <vector>

#include <boost/pending/disjoint_sets.hpp>

#include "rdom/graph.hpp"
#include "rdom/rng.hpp"

namespace rdom {

/// Connected planar grid subgraph. A random spanning tree of the width x
/// height grid is always kept; every other grid edge survives with
/// probability keep_prob. Vertex ids are row-major from 0, lengths are
/// uniform in [1, max_len] and weights uniform in [1, 100].
inline Graph gen_planar(std::uint64_t seed, int width, int height, double keep_prob, Length max_len) {
  if (width < 1 || height < 1) throw GraphError("grid dimensions must be positive");
  if (!(keep_prob >= 0.0 && keep_prob <= 1.0)) throw GraphError("keep probability must lie in [0, 1]");
  if (max_len < 1) throw GraphError("max length must be at least 1");

  CounterRng rng(seed);
  const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::pair<std::size_t, std::size_t>> grid;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      auto v = static_cast<std::size_t>(y * width + x);
      if (x + 1 < width) grid.emplace_back(v, v + 1);
      if (y + 1 < height) grid.emplace_back(v, v + static_cast<std::size_t>(width));
    }
  }
  for (std::size_t i = grid.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1));
    std::swap(grid[i - 1], grid[j]);
  }

  std::vector<std::size_t> rank(n), parent(n);
  boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
  for (std::size_t v = 0; v < n; ++v) sets.make_set(v);

  std::vector<EdgeSpec> edges;
  for (const auto& [u, v] : grid) {
    bool tree_edge = sets.find_set(u) != sets.find_set(v);
    if (tree_edge) sets.union_set(u, v);
    double draw = rng.unit();
    if (tree_edge || draw < keep_prob) {
      edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), 0});
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const EdgeSpec& a, const EdgeSpec& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (auto& e : edges) e.length = rng.uniform(1, max_len);

  std::vector<Vertex> vertices(n);
  for (std::size_t v = 0; v < n; ++v) vertices[v] = {static_cast<VertexId>(v), Weight(rng.uniform(1, 100))};
  return Graph(false, std::move(vertices), edges);
}

// Keeps every undirected edge as one random arc, or as both arcs with
// probability both_prob. The underlying undirected graph is unchanged.
inline Graph orient_randomly(const Graph& g, std::uint64_t seed, double both_prob) {
  CounterRng rng(seed, 1);
  std::vector<EdgeSpec> arcs;
  for (const auto& e : g.edge_records()) {
    if (rng.bernoulli(both_prob)) {
      arcs.push_back(e);
      arcs.push_back({e.v, e.u, e.length});
    } else if (rng.coin()) {
      arcs.push_back(e);
    } else {
      arcs.push_back({e.v, e.u, e.length});
    }
  }
  return Graph(true, g.vertices(), arcs);
}

}  // namespace rdom
