#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rdom/balls.hpp"
#include "rdom/contract.hpp"
#include "rdom/io.hpp"
#include "rdom/planarity.hpp"
#include "rdom/voronoi.hpp"

namespace rdom {

enum class SupportKind { dual, intersection };

/// A simple graph on ball ids together with the vertex partition of the
/// host graph it was contracted from.
struct SupportGraph {
  SupportKind kind = SupportKind::dual;
  std::vector<BallId> nodes;  // ascending
  std::vector<std::pair<BallId, BallId>> edges;  // first < second, ascending
  std::map<VertexId, BallId> witness;  // host vertex id -> cell (ball id)
  // Assigned vertices whose Voronoi path used an infinite-length arc.
  std::size_t sentinel_traversals = 0;

  Graph as_graph() const {
    std::vector<Vertex> vertices;
    for (auto id : nodes) vertices.push_back({id, Weight(0)});
    std::vector<EdgeSpec> es;
    for (const auto& [a, b] : edges) es.push_back({a, b, 1});
    return Graph(false, std::move(vertices), es);
  }

  std::vector<BallId> neighbors(BallId d) const {
    std::vector<BallId> out;
    for (const auto& [a, b] : edges) {
      if (a == d) out.push_back(b);
      if (b == d) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_edge(BallId a, BallId b) const {
    auto key = std::minmax(a, b);
    return std::binary_search(edges.begin(), edges.end(), std::pair<BallId, BallId>(key.first, key.second));
  }
};

struct SupportFailure {
  std::string check;
  std::int64_t witness = 0;
  std::vector<BallId> balls;
};

struct SupportReport {
  bool pass = true;
  std::vector<SupportFailure> failures;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  bool planar = false;

  void fail(std::string check, std::int64_t witness, std::vector<BallId> balls = {}) {
    pass = false;
    failures.push_back({std::move(check), witness, std::move(balls)});
  }
};

namespace detail {

inline SupportGraph support_from_partition(const Graph& host, const Partition& p, std::vector<BallId> nodes,
                                           SupportKind kind) {
  auto contracted = contract_cells(host, p);
  SupportGraph s;
  s.kind = kind;
  s.nodes = std::move(nodes);
  std::sort(s.nodes.begin(), s.nodes.end());
  for (const auto& a : contracted.arcs()) {
    if (a.tail < a.head) s.edges.emplace_back(contracted.id_of(a.tail), contracted.id_of(a.head));
  }
  std::sort(s.edges.begin(), s.edges.end());
  for (std::size_t v = 0; v < host.vertex_count(); ++v) {
    if (p.cell_of[v]) s.witness[host.id_of(v)] = *p.cell_of[v];
  }
  return s;
}

inline std::vector<Source> node_sources(const AugmentedGraph& aug, const std::set<BallId>& which) {
  std::vector<Source> sources;
  for (std::size_t r = 0; r < aug.balls.size(); ++r) {
    if (which.count(aug.balls[r].id)) sources.push_back({aug.g.id_of(aug.node_of[r]), 0, aug.balls[r].id});
  }
  return sources;
}

inline std::set<BallId> ids_of(const std::vector<Ball>& balls) {
  std::set<BallId> out;
  for (const auto& b : balls) out.insert(b.id);
  return out;
}

}  // namespace detail

/// Voronoi partition of the augmented graph with respect to all center nodes.
inline VoronoiLabels dual_voronoi(const AugmentedGraph& aug) {
  std::set<BallId> all;
  for (const auto& b : aug.balls) all.insert(b.id);
  auto sources = detail::node_sources(aug, all);
  return multi_source_voronoi(aug.g, sources);
}

inline SupportGraph build_dual_support(const AugmentedGraph& aug, const VoronoiLabels& labels) {
  Partition p;
  p.cell_of.resize(aug.g.vertex_count());
  for (std::size_t v = 0; v < aug.g.vertex_count(); ++v) {
    if (labels.reached(v)) p.cell_of[v] = labels.owner[v];
  }
  std::vector<BallId> nodes;
  for (const auto& b : aug.balls) nodes.push_back(b.id);
  return detail::support_from_partition(aug.g, p, std::move(nodes), SupportKind::dual);
}

/// Dual support of a ball system: contract the Voronoi cells of the center
/// nodes in the augmented graph.
inline SupportGraph build_dual_support(const Graph& g, const std::vector<Ball>& balls) {
  auto aug = build_augmented(g, balls);
  return build_dual_support(aug, dual_voronoi(aug));
}

/// Every vertex's hit set must induce a connected subgraph of the support.
inline SupportReport verify_dual_support(const SupportGraph& s, const HitSetTable& h) {
  SupportReport report;
  auto graph = s.as_graph();
  report.nodes = s.nodes.size();
  report.edges = s.edges.size();
  for (std::size_t i = 0; i < h.vertices.size(); ++i) {
    if (h.hits[i].size() < 2) continue;
    if (!induced_connected(graph, h.hits[i])) report.fail("hit set connected", h.vertices[i], h.hits[i]);
  }
  report.planar = is_planar(graph).planar;
  return report;
}

enum class IntersectionMode { directed_pipeline, undirected_shortcut };

/// Intersection support on the red balls: for every blue ball, the red balls
/// meeting it induce a connected subgraph.
///
/// directed_pipeline: augment with red and blue nodes, colour vertices red
/// when some red node reaches them within rmax, contract the red Voronoi
/// cells (red-red arcs get a sentinel length, merged arcs keep the minimum),
/// reverse every arc, then contract the Voronoi partition of the red nodes.
///
/// undirected_shortcut: red nodes act as radius-2*rmax centers and the dual
/// construction is reused.
inline SupportGraph build_intersection_support(const Graph& g, const std::vector<Ball>& red,
                                               const std::vector<Ball>& blue, IntersectionMode mode) {
  if (mode == IntersectionMode::undirected_shortcut && g.directed()) {
    throw Error("undirected shortcut requires an undirected graph");
  }
  auto red_ids = detail::ids_of(red);
  auto blue_ids = detail::ids_of(blue);
  if (red_ids.size() != red.size() || blue_ids.size() != blue.size()) throw Error("duplicate ball id");
  for (auto id : blue_ids) {
    if (red_ids.count(id)) throw Error("ball id " + std::to_string(id) + " is both red and blue");
  }
  if (red.empty()) throw Error("red ball system is empty");
  std::vector<Ball> all = red;
  all.insert(all.end(), blue.begin(), blue.end());
  std::vector<BallId> red_nodes(red_ids.begin(), red_ids.end());

  if (mode == IntersectionMode::undirected_shortcut) {
    auto aug = build_augmented(g, all, {.two_way_nodes = true});
    auto sources = detail::node_sources(aug, red_ids);
    auto labels = multi_source_voronoi(aug.g, sources);
    Partition p;
    p.cell_of.resize(aug.g.vertex_count());
    for (std::size_t v = 0; v < aug.g.vertex_count(); ++v) {
      if (labels.reached(v) && labels.dist[v] <= 2 * static_cast<Dist>(aug.rmax)) p.cell_of[v] = labels.owner[v];
    }
    auto s = detail::support_from_partition(aug.g, p, red_nodes, SupportKind::intersection);
    return s;
  }

  auto aug = build_augmented(g, all);
  const auto& gp = aug.g;
  const std::size_t n = gp.vertex_count();
  auto red_labels = multi_source_voronoi(gp, detail::node_sources(aug, red_ids));
  std::vector<char> is_red(n, 0);
  for (std::size_t v = 0; v < n; ++v) is_red[v] = red_labels.reached(v) && red_labels.dist[v] <= aug.rmax;

  Partition red_cells;
  red_cells.cell_of.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (is_red[v]) red_cells.cell_of[v] = red_labels.owner[v];
  }
  require_connected_cells(gp, red_cells);

  // H: one vertex per red cell (indices [0, |red|)) followed by the blue
  // vertices and nodes.
  std::map<BallId, std::size_t> red_index;
  for (auto id : red_nodes) red_index.emplace(id, red_index.size());
  std::vector<std::size_t> group(n);
  std::vector<std::size_t> blue_of_group;
  for (std::size_t v = 0; v < n; ++v) {
    if (is_red[v]) {
      group[v] = red_index.at(red_labels.owner[v]);
    } else {
      group[v] = red_nodes.size() + blue_of_group.size();
      blue_of_group.push_back(v);
    }
  }
  const std::size_t h_size = red_nodes.size() + blue_of_group.size();
  const Length sentinel = 1 + gp.total_length();
  std::map<std::pair<std::size_t, std::size_t>, Length> merged;
  for (const auto& a : gp.arcs()) {
    auto u = group[a.tail];
    auto v = group[a.head];
    if (u == v) continue;
    Length len = (u < red_nodes.size() && v < red_nodes.size()) ? sentinel : a.length;
    auto it = merged.find({u, v});
    if (it == merged.end() || len < it->second) merged[{u, v}] = len;
  }
  // Reverse every arc of H.
  std::vector<Arc> reversed;
  for (const auto& [key, len] : merged) reversed.push_back({key.second, key.first, len});
  std::vector<Vertex> h_vertices;
  for (std::size_t i = 0; i < h_size; ++i) h_vertices.push_back({static_cast<VertexId>(i), Weight(0)});
  auto h_rev = Graph::from_arcs(true, std::move(h_vertices), std::move(reversed));

  std::vector<Source> sources;
  for (auto id : red_nodes) sources.push_back({static_cast<VertexId>(red_index.at(id)), 0, id});
  auto h_labels = multi_source_voronoi(h_rev, sources);

  Partition second;
  second.cell_of.resize(h_size);
  std::size_t sentinel_hits = 0;
  for (std::size_t v = 0; v < h_size; ++v) {
    if (!h_labels.reached(v)) continue;
    second.cell_of[v] = h_labels.owner[v];
    for (auto w = v; h_labels.parent_arc[w]; w = h_rev.arc(*h_labels.parent_arc[w]).tail) {
      if (h_rev.arc(*h_labels.parent_arc[w]).length == sentinel) {
        ++sentinel_hits;
        break;
      }
    }
  }
  auto s = detail::support_from_partition(h_rev, second, red_nodes, SupportKind::intersection);
  s.sentinel_traversals = sentinel_hits;

  // Witness in terms of the augmented graph: compose the two partitions.
  s.witness.clear();
  for (std::size_t v = 0; v < n; ++v) {
    auto cell = second.cell_of[group[v]];
    if (cell) s.witness[gp.id_of(v)] = *cell;
  }
  return s;
}

/// Exhaustive membership check: for every blue ball B, the red balls sharing
/// a vertex with B must induce a connected subgraph of s.
inline SupportReport verify_intersection_support(const SupportGraph& s, const std::vector<Ball>& red,
                                                 const std::vector<Ball>& blue, const Graph& g) {
  SupportReport report;
  auto graph = s.as_graph();
  report.nodes = s.nodes.size();
  report.edges = s.edges.size();
  std::vector<std::vector<VertexId>> red_members;
  for (const auto& r : red) red_members.push_back(ball_members(g, r));
  for (const auto& b : blue) {
    auto members = ball_members(g, b);
    std::vector<BallId> meeting;
    for (std::size_t i = 0; i < red.size(); ++i) {
      const auto& rm = red_members[i];
      bool meets = std::any_of(members.begin(), members.end(),
                               [&](VertexId v) { return std::binary_search(rm.begin(), rm.end(), v); });
      if (meets) meeting.push_back(red[i].id);
    }
    std::sort(meeting.begin(), meeting.end());
    bool ok = std::all_of(meeting.begin(), meeting.end(),
                          [&](BallId id) { return std::binary_search(s.nodes.begin(), s.nodes.end(), id); });
    if (!ok || !induced_connected(graph, meeting)) report.fail("intersecting reds connected", b.id, meeting);
  }
  report.planar = is_planar(graph).planar;
  return report;
}

/// Checks that s is a contraction minor of `host` through its witness:
/// (a) every witness cell is connected, (b) cells are disjoint, nonempty and
/// named by support nodes, (c) every support edge is realized by a host arc,
/// (d) a planar host yields a planar support.
inline SupportReport verify_minor_preservation(const Graph& host, const SupportGraph& s) {
  SupportReport report;
  report.nodes = s.nodes.size();
  report.edges = s.edges.size();
  std::map<BallId, std::vector<std::size_t>> cells;
  for (const auto& [vid, cell] : s.witness) {
    auto v = host.index_of(vid);
    if (!v) {
      report.fail("(b) witness vertex exists", vid);
      continue;
    }
    if (!std::binary_search(s.nodes.begin(), s.nodes.end(), cell)) report.fail("(b) cell names a node", vid, {cell});
    cells[cell].push_back(*v);
  }
  for (auto node : s.nodes) {
    if (!cells.count(node)) report.fail("(b) cell nonempty", node, {node});
  }
  for (const auto& [cell, members] : cells) {
    if (!induced_connected_indices(host, members)) report.fail("(a) cell connected", cell, {cell});
  }
  std::set<std::pair<BallId, BallId>> realized;
  for (const auto& a : host.arcs()) {
    auto ct = s.witness.find(host.id_of(a.tail));
    auto ch = s.witness.find(host.id_of(a.head));
    if (ct == s.witness.end() || ch == s.witness.end() || ct->second == ch->second) continue;
    realized.insert(std::minmax(ct->second, ch->second));
  }
  for (const auto& e : s.edges) {
    if (!realized.count(e)) report.fail("(c) edge realized", e.first, {e.first, e.second});
  }
  report.planar = is_planar(s.as_graph()).planar;
  if (is_planar(host).planar && !report.planar) report.fail("(d) planarity preserved", 0);
  return report;
}

inline Json support_to_json(const SupportGraph& s, bool planar) {
  Json doc;
  doc["kind"] = s.kind == SupportKind::dual ? "dual" : "intersection";
  doc["nodes"] = s.nodes;
  Json edges = Json::array();
  for (const auto& [a, b] : s.edges) edges.push_back(Json::array({a, b}));
  doc["edges"] = std::move(edges);
  Json cells = Json::object();
  for (const auto& [v, c] : s.witness) cells[std::to_string(v)] = c;
  doc["cells"] = std::move(cells);
  doc["planar"] = planar;
  return doc;
}

inline Json report_to_json(const SupportReport& r) {
  Json doc;
  doc["pass"] = r.pass;
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(Json{{"check", f.check}, {"witness", f.witness}, {"balls", f.balls}});
  doc["failures"] = std::move(failures);
  doc["nodes"] = r.nodes;
  doc["edges"] = r.edges;
  doc["planar"] = r.planar;
  return doc;
}

}  // namespace rdom
