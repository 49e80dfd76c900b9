#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "rdom/graph.hpp"
#include "rdom/io.hpp"
#include "rdom/rng.hpp"
#include "rdom/voronoi.hpp"

namespace rdom {

/// {v : d(center, v) <= radius}, with out-distances in digraphs.
struct Ball {
  BallId id = 0;
  VertexId center = 0;
  Length radius = 0;

  friend bool operator==(const Ball&, const Ball&) = default;
};

// Vertex ids of the ball, ascending.
inline std::vector<VertexId> ball_members(const Graph& g, const Ball& ball) {
  auto labels = single_source(g, g.require_index(ball.center));
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (labels.reached(v) && labels.dist[v] <= ball.radius) out.push_back(g.id_of(v));
  }
  return out;
}

struct AugmentOptions {
  // Also add the reverse arc c_R -> x_R (used by constructions that need
  // to walk back into a center node).
  bool two_way_nodes = false;
};

/// The host graph with one extra center node per ball. Node x_R has a single
/// arc into c_R of length rmax - r_R, so every ball becomes the radius-rmax
/// ball around its node. Original vertices covered by no ball are removed.
/// Original vertices keep their ids and occupy indices [0, original_count).
struct AugmentedGraph {
  Graph g;
  Graph host;  // the original graph restricted to surviving vertices
  std::vector<Ball> balls;  // ascending id
  std::vector<std::size_t> node_of;  // aligned with balls: vertex index of x_R in g
  Length rmax = 0;
  std::vector<VertexId> removed;
  std::size_t original_count = 0;

  std::size_t ball_index(BallId id) const {
    auto it = std::lower_bound(balls.begin(), balls.end(), id,
                               [](const Ball& b, BallId x) { return b.id < x; });
    if (it == balls.end() || it->id != id) throw Error("unknown ball id " + std::to_string(id));
    return static_cast<std::size_t>(it - balls.begin());
  }

  std::size_t node(BallId id) const { return node_of[ball_index(id)]; }

  bool is_node(std::size_t v) const { return v >= original_count; }

  BallId ball_of_node(std::size_t v) const { return balls[v - original_count].id; }
};

inline AugmentedGraph build_augmented(const Graph& g, std::vector<Ball> balls, AugmentOptions options = {}) {
  if (balls.empty()) throw Error("ball system is empty");
  std::sort(balls.begin(), balls.end(), [](const Ball& a, const Ball& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (i > 0 && balls[i - 1].id == balls[i].id) {
      throw Error("duplicate ball id " + std::to_string(balls[i].id));
    }
    if (!g.index_of(balls[i].center)) {
      throw Error("ball " + std::to_string(balls[i].id) + ": unknown center " + std::to_string(balls[i].center));
    }
    if (balls[i].radius < 0) throw Error("ball " + std::to_string(balls[i].id) + ": negative radius");
  }

  AugmentedGraph aug;
  aug.balls = balls;
  for (const auto& b : balls) aug.rmax = std::max(aug.rmax, b.radius);

  std::vector<char> covered(g.vertex_count(), 0);
  for (const auto& b : balls) {
    auto labels = single_source(g, g.require_index(b.center));
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (labels.reached(v) && labels.dist[v] <= b.radius) covered[v] = 1;
    }
  }

  std::vector<std::size_t> new_index(g.vertex_count(), 0);
  std::vector<Vertex> vertices;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (covered[v]) {
      new_index[v] = vertices.size();
      vertices.push_back(g.vertices()[v]);
    } else {
      aug.removed.push_back(g.id_of(v));
    }
  }
  aug.original_count = vertices.size();
  std::vector<Arc> host_arcs;
  for (const auto& a : g.arcs()) {
    if (covered[a.tail] && covered[a.head]) host_arcs.push_back({new_index[a.tail], new_index[a.head], a.length});
  }
  aug.host = Graph::from_arcs(g.directed(), vertices, host_arcs);

  VertexId next_id = g.vertices().empty() ? 0 : g.vertices().back().id + 1;
  std::vector<Arc> arcs = host_arcs;
  for (const auto& b : balls) {
    auto x = vertices.size();
    aug.node_of.push_back(x);
    vertices.push_back({next_id++, Weight(0)});
    auto c = new_index[g.require_index(b.center)];
    arcs.push_back({x, c, aug.rmax - b.radius});
    if (options.two_way_nodes) arcs.push_back({c, x, aug.rmax - b.radius});
  }
  bool directed = !(options.two_way_nodes && !g.directed());
  aug.g = Graph::from_arcs(directed, std::move(vertices), std::move(arcs));
  return aug;
}

/// One shortest-path forest per ball, rooted at its center node (aligned
/// with aug.balls). These supply d(x_R, v) and the paths pi(x_R, v).
inline std::vector<VoronoiLabels> ball_trees(const AugmentedGraph& aug) {
  std::vector<VoronoiLabels> trees;
  trees.reserve(aug.balls.size());
  for (auto x : aug.node_of) trees.push_back(single_source(aug.g, x));
  return trees;
}

/// Hit set of every surviving original vertex: ascending ids of the balls
/// containing it.
struct HitSetTable {
  std::vector<VertexId> vertices;
  std::vector<std::vector<BallId>> hits;

  const std::vector<BallId>& of(VertexId v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) throw Error("vertex " + std::to_string(v) + " has no hit set");
    return hits[static_cast<std::size_t>(it - vertices.begin())];
  }
};

inline HitSetTable hit_sets(const AugmentedGraph& aug, const std::vector<VoronoiLabels>& trees) {
  HitSetTable table;
  for (std::size_t v = 0; v < aug.original_count; ++v) {
    table.vertices.push_back(aug.g.id_of(v));
    std::vector<BallId> hit;
    for (std::size_t r = 0; r < aug.balls.size(); ++r) {
      if (trees[r].reached(v) && trees[r].dist[v] <= aug.rmax) hit.push_back(aug.balls[r].id);
    }
    table.hits.push_back(std::move(hit));
  }
  return table;
}

inline HitSetTable hit_sets(const AugmentedGraph& aug) { return hit_sets(aug, ball_trees(aug)); }

struct Cell {
  std::vector<BallId> hit_set;
  std::vector<VertexId> members;
  VertexId representative = 0;

  std::size_t depth() const { return hit_set.size(); }
};

using CellTable = std::vector<Cell>;

// Cells in lexicographic order of hit set; representative = smallest member id.
inline CellTable enumerate_cells(const HitSetTable& h) {
  std::map<std::vector<BallId>, std::vector<VertexId>> groups;
  for (std::size_t i = 0; i < h.vertices.size(); ++i) {
    if (!h.hits[i].empty()) groups[h.hits[i]].push_back(h.vertices[i]);
  }
  CellTable cells;
  for (auto& [hit, members] : groups) {
    std::sort(members.begin(), members.end());
    cells.push_back({hit, members, members.front()});
  }
  return cells;
}

inline std::vector<Ball> balls_from_json(const Json& doc) {
  if (!doc.is_array()) throw ParseError("balls", "expected an array");
  std::vector<Ball> balls;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    std::string where = "balls[" + std::to_string(i) + "]";
    Ball b{detail::integer_field(doc[i], "id", where), detail::integer_field(doc[i], "center", where),
           detail::integer_field(doc[i], "radius", where)};
    if (b.radius < 0) throw ParseError(where + ".radius", "negative radius");
    balls.push_back(b);
  }
  return balls;
}

inline std::vector<Ball> parse_balls(std::string_view text) { return balls_from_json(detail::parse_text(text)); }

inline Json balls_to_json(const std::vector<Ball>& balls) {
  Json out = Json::array();
  for (const auto& b : balls) out.push_back(Json{{"id", b.id}, {"center", b.center}, {"radius", b.radius}});
  return out;
}

/// `count` balls with uniformly random centers and radii in [min_radius,
/// max_radius]; ids are first_id, first_id + 1, ...
inline std::vector<Ball> random_balls(const Graph& g, std::uint64_t seed, std::size_t count, Length min_radius,
                                      Length max_radius, BallId first_id = 0) {
  if (g.vertex_count() == 0) throw GraphError("cannot place balls in an empty graph");
  CounterRng rng(seed, 2);
  std::vector<Ball> balls;
  for (std::size_t i = 0; i < count; ++i) {
    auto c = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(g.vertex_count()) - 1));
    balls.push_back({first_id + static_cast<BallId>(i), g.id_of(c), rng.uniform(min_radius, max_radius)});
  }
  return balls;
}

}  // namespace rdom
