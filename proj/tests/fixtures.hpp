#pragma once

#include <vector>

#include "rdom/rdom.hpp"

namespace rdom::testing {

// Ball ids used by the small fixtures.
constexpr BallId A = 1, B = 2, C = 3, E = 5;

inline Graph make_graph(bool directed, std::vector<VertexId> ids, std::vector<EdgeSpec> edges,
                        std::vector<long> weights = {}) {
  std::vector<Vertex> vs;
  for (std::size_t i = 0; i < ids.size(); ++i) vs.push_back({ids[i], Weight(weights.empty() ? 1 : weights[i])});
  return Graph(directed, std::move(vs), edges);
}

// Path v1 - v2 - v3 - v4 - v5, unit lengths and weights.
inline Graph p5() { return make_graph(false, {1, 2, 3, 4, 5}, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}}); }

inline std::vector<Ball> p5_balls() { return {{A, 1, 2}, {E, 5, 2}}; }

// Star with center u = 0 and leaves a = 1, b = 2, c = 3.
inline Graph star3(std::vector<long> weights = {}) {
  return make_graph(false, {0, 1, 2, 3}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}, std::move(weights));
}

inline std::vector<Ball> star3_balls() { return {{A, 1, 1}, {B, 2, 1}, {C, 3, 1}}; }

}  // namespace rdom::testing
