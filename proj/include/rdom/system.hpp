#pragma once

#include <optional>
#include <vector>

#include "rdom/balls.hpp"
#include "rdom/planarity.hpp"
#include "rdom/support.hpp"

namespace rdom {

/// Everything derived from one (graph, balls) pair that the cell machinery
/// works on: augmented graph, per-ball shortest-path trees, hit sets, cells,
/// the dual-support Voronoi labels and the support itself.
struct BallSystem {
  AugmentedGraph aug;
  std::vector<VoronoiLabels> trees;
  HitSetTable hits;
  CellTable cells;
  VoronoiLabels voronoi;
  SupportGraph support;
  // Rotation system of aug.g; present when the host graph is planar.
  std::optional<Embedding> embedding;

  std::size_t ball_index(BallId id) const { return aug.ball_index(id); }

  Dist distance(BallId ball, std::size_t v) const { return trees[ball_index(ball)].dist[v]; }

  const std::vector<BallId>& hit(std::size_t v) const { return hits.hits[v]; }

  std::size_t vertex(VertexId id) const { return aug.g.require_index(id); }
};

/// Embeds each center node x_R in c_R's rotation immediately after the
/// neighbor with the smallest id (several nodes at one center follow in
/// ascending ball id).
inline Embedding augmented_embedding(const AugmentedGraph& aug, const Embedding& host) {
  Embedding emb;
  emb.rotation.resize(aug.g.vertex_count());
  for (std::size_t v = 0; v < aug.original_count; ++v) emb.rotation[v] = host.rotation[v];
  std::vector<std::vector<std::size_t>> nodes_at(aug.original_count);
  for (std::size_t r = 0; r < aug.balls.size(); ++r) {
    auto c = aug.g.require_index(aug.balls[r].center);
    nodes_at[c].push_back(aug.node_of[r]);
    emb.rotation[aug.node_of[r]] = {c};
  }
  for (std::size_t c = 0; c < aug.original_count; ++c) {
    if (nodes_at[c].empty()) continue;
    auto& rot = emb.rotation[c];
    auto first = rot.begin();
    if (!rot.empty()) first = std::next(std::min_element(rot.begin(), rot.end()));
    rot.insert(first, nodes_at[c].begin(), nodes_at[c].end());
  }
  return emb;
}

inline BallSystem analyze(const Graph& g, const std::vector<Ball>& balls) {
  BallSystem s;
  s.aug = build_augmented(g, balls);
  s.trees = ball_trees(s.aug);
  s.hits = hit_sets(s.aug, s.trees);
  s.cells = enumerate_cells(s.hits);
  s.voronoi = dual_voronoi(s.aug);
  s.support = build_dual_support(s.aug, s.voronoi);
  auto planarity = is_planar(s.aug.host);
  if (planarity.planar) s.embedding = augmented_embedding(s.aug, *planarity.embedding);
  return s;
}

}  // namespace rdom
