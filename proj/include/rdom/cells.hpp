#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "rdom/io.hpp"
#include "rdom/planarity.hpp"
#include "rdom/support.hpp"
#include "rdom/system.hpp"

namespace rdom {

// Cell machinery for ball systems in planar graphs: furthest-ball
// designation, clockwise traversal orders, three-ball encodings, base
// assignment for depth-3 cells, the per-ball resident graphs, and the
// per-depth cell profile.
//
// "Closer" everywhere means a smaller (d(x_R, v), R) pair, the same order
// the dual Voronoi partition uses, so every distance comparison is strict.

struct Encoding {
  BallId alpha = 0;
  BallId beta = 0;
  BallId gamma = 0;

  friend auto operator<=>(const Encoding&, const Encoding&) = default;
};

struct AlphaBeta {
  BallId alpha = 0;
  BallId beta = 0;
};

/// Furthest and second-furthest balls containing vertex v (index into aug.g).
inline AlphaBeta alpha_beta(const BallSystem& sys, std::size_t v) {
  if (v >= sys.aug.original_count) throw Error("alpha/beta queried on a center node");
  const auto& hit = sys.hit(v);
  if (hit.size() < 2) {
    throw Error("vertex " + std::to_string(sys.aug.g.id_of(v)) + " has depth " + std::to_string(hit.size()) +
                " < 2");
  }
  std::vector<std::pair<Dist, BallId>> keys;
  for (auto id : hit) keys.emplace_back(sys.distance(id, v), id);
  std::sort(keys.begin(), keys.end(), std::greater<>());
  return {keys[0].second, keys[1].second};
}

inline std::map<VertexId, AlphaBeta> alpha_beta_all(const BallSystem& sys) {
  std::map<VertexId, AlphaBeta> out;
  for (std::size_t v = 0; v < sys.aug.original_count; ++v) {
    if (sys.hit(v).size() >= 2) out[sys.aug.g.id_of(v)] = alpha_beta(sys, v);
  }
  return out;
}

struct SigmaOrder {
  BallId d1 = 0;
  BallId d2 = 0;
  std::size_t k = 0;
  std::vector<VertexId> order;  // representatives in discovery order, read cyclically
};

/// Orders representatives by a depth-first traversal of the shortest-path
/// tree from x_{d1} to them. At each tree vertex the children are visited
/// in rotation order, starting just after the arc from the parent.
inline SigmaOrder sigma_order(const BallSystem& sys, const Embedding& emb, BallId d1, BallId d2, std::size_t k,
                              const std::vector<VertexId>& reps) {
  const auto& g = sys.aug.g;
  const auto& tree = sys.trees[sys.ball_index(d1)];
  const auto root = sys.aug.node(d1);
  const std::size_t n = g.vertex_count();

  std::vector<char> in_tree(n, 0), is_rep(n, 0);
  std::vector<std::size_t> parent(n, n);
  in_tree[root] = 1;
  for (auto id : reps) {
    auto v = g.require_index(id);
    if (!tree.reached(v)) throw Error("representative " + std::to_string(id) + " unreachable from its alpha ball");
    is_rep[v] = 1;
    for (auto w = v; !in_tree[w];) {
      in_tree[w] = 1;
      auto p = g.arc(*tree.parent_arc[w]).tail;
      parent[w] = p;
      w = p;
    }
  }

  SigmaOrder out{d1, d2, k, {}};
  // Frames: (vertex, next rotation offset, start position).
  struct Frame {
    std::size_t v;
    std::size_t step;
    std::size_t start;
  };
  std::vector<Frame> stack{{root, 0, 0}};
  if (is_rep[root]) out.order.push_back(g.id_of(root));
  while (!stack.empty()) {
    auto& f = stack.back();
    const auto& rot = emb.rotation[f.v];
    if (f.step == rot.size()) {
      stack.pop_back();
      continue;
    }
    auto u = rot[(f.start + f.step) % rot.size()];
    ++f.step;
    if (!in_tree[u] || parent[u] != f.v) continue;
    if (is_rep[u]) out.order.push_back(g.id_of(u));
    const auto& urot = emb.rotation[u];
    auto back = std::find(urot.begin(), urot.end(), f.v);
    std::size_t start = back == urot.end() ? 0 : static_cast<std::size_t>(back - urot.begin()) + 1;
    stack.push_back({u, 0, start});
  }
  return out;
}

/// Third encoding ball for every cell of a traversal order (aligned with
/// order.order). Depth 3: the ball left after removing alpha and beta.
/// Otherwise the smallest ball in hit(c_i) \ hit(c_{i-1}), cyclically; a
/// single-cell order falls back to the smallest ball outside {alpha, beta}.
inline std::vector<BallId> assign_gamma(const SigmaOrder& order, const HitSetTable& h) {
  std::vector<BallId> gammas;
  const auto m = order.order.size();
  auto outside_ab = [&](const std::vector<BallId>& hit) {
    for (auto id : hit) {
      if (id != order.d1 && id != order.d2) return id;
    }
    throw Error("hit set has no ball besides alpha and beta");
  };
  for (std::size_t i = 0; i < m; ++i) {
    const auto& hit = h.of(order.order[i]);
    if (order.k == 3 || m == 1) {
      gammas.push_back(outside_ab(hit));
      continue;
    }
    const auto& prev = h.of(order.order[(i + m - 1) % m]);
    std::vector<BallId> diff;
    std::set_difference(hit.begin(), hit.end(), prev.begin(), prev.end(), std::back_inserter(diff));
    if (diff.empty()) throw Error("adjacent cells in a traversal order share a hit set");
    gammas.push_back(diff.front());
  }
  return gammas;
}

/// Representatives that are tree ancestors of another representative in the
/// same group, in T_{d1} or T_{d2}. Empty when the groups are well formed.
inline std::vector<std::pair<VertexId, VertexId>> ancestor_pairs(const BallSystem& sys, BallId d1, BallId d2,
                                                                const std::vector<VertexId>& reps) {
  std::vector<std::pair<VertexId, VertexId>> out;
  std::set<std::size_t> rep_set;
  for (auto id : reps) rep_set.insert(sys.vertex(id));
  for (auto d : {d1, d2}) {
    const auto& tree = sys.trees[sys.ball_index(d)];
    for (auto v : rep_set) {
      for (auto w = v; tree.parent_arc[w];) {
        w = sys.aug.g.arc(*tree.parent_arc[w]).tail;
        if (rep_set.count(w)) out.emplace_back(sys.aug.g.id_of(w), sys.aug.g.id_of(v));
      }
    }
  }
  return out;
}

struct CellEncoding {
  std::size_t cell = 0;  // index into sys.cells
  Encoding encoding;
};

struct DepthEncodings {
  std::vector<CellEncoding> encodings;
  std::vector<SigmaOrder> orders;
  std::vector<std::pair<VertexId, VertexId>> ancestor_violations;
};

/// Encodes every depth-k cell (k >= 3): group by the (alpha, beta) type of
/// the representative, order each group, then assign gamma.
inline DepthEncodings encode_depth(const BallSystem& sys, const Embedding& emb, std::size_t k) {
  if (k < 3) throw Error("encodings are defined for depth >= 3");
  std::map<std::pair<BallId, BallId>, std::vector<std::size_t>> groups;
  for (std::size_t c = 0; c < sys.cells.size(); ++c) {
    if (sys.cells[c].depth() != k) continue;
    auto ab = alpha_beta(sys, sys.vertex(sys.cells[c].representative));
    groups[{ab.alpha, ab.beta}].push_back(c);
  }
  DepthEncodings out;
  for (const auto& [key, cells] : groups) {
    std::vector<VertexId> reps;
    std::map<VertexId, std::size_t> cell_of_rep;
    for (auto c : cells) {
      reps.push_back(sys.cells[c].representative);
      cell_of_rep[sys.cells[c].representative] = c;
    }
    auto bad = ancestor_pairs(sys, key.first, key.second, reps);
    out.ancestor_violations.insert(out.ancestor_violations.end(), bad.begin(), bad.end());
    auto order = sigma_order(sys, emb, key.first, key.second, k, reps);
    auto gammas = assign_gamma(order, sys.hits);
    for (std::size_t i = 0; i < order.order.size(); ++i) {
      out.encodings.push_back({cell_of_rep.at(order.order[i]), {key.first, key.second, gammas[i]}});
    }
    out.orders.push_back(std::move(order));
  }
  return out;
}

// Reports every pair of distinct cells that share an encoding.
inline SupportReport check_unique_encodings(const BallSystem& sys, const std::vector<CellEncoding>& encodings) {
  SupportReport report;
  std::map<Encoding, std::size_t> first;
  for (const auto& e : encodings) {
    auto [it, fresh] = first.emplace(e.encoding, e.cell);
    if (!fresh && it->second != e.cell) {
      report.fail("unique encoding", sys.cells[e.cell].representative,
                  {e.encoding.alpha, e.encoding.beta, e.encoding.gamma,
                   static_cast<BallId>(sys.cells[it->second].representative)});
    }
  }
  return report;
}

inline SupportReport verify_unique_encoding(const BallSystem& sys, const Embedding& emb, std::size_t k) {
  auto enc = encode_depth(sys, emb, k);
  auto report = check_unique_encodings(sys, enc.encodings);
  for (const auto& [anc, desc] : enc.ancestor_violations) report.fail("no ancestor", desc, {anc});
  return report;
}

/// pi(x_alpha, v) and pi(x_beta, v) as vertex-index sequences.
struct PathBundle {
  std::vector<std::size_t> alpha_path;
  std::vector<std::size_t> beta_path;
};

inline PathBundle path_bundle(const BallSystem& sys, std::size_t v) {
  auto ab = alpha_beta(sys, v);
  return {sys.trees[sys.ball_index(ab.alpha)].path_to(sys.aug.g, v),
          sys.trees[sys.ball_index(ab.beta)].path_to(sys.aug.g, v)};
}

/// Depth-3 base rule: beta when the alpha path enters beta's Voronoi cell,
/// gamma otherwise.
inline BallId assign_base(const Encoding& enc, const PathBundle& paths, const VoronoiLabels& witness) {
  bool crosses_beta = std::any_of(paths.alpha_path.begin(), paths.alpha_path.end(), [&](std::size_t u) {
    return witness.reached(u) && witness.owner[u] == enc.beta;
  });
  return crosses_beta ? enc.beta : enc.gamma;
}

inline Encoding depth3_encoding(const BallSystem& sys, const Cell& cell) {
  if (cell.depth() != 3) throw Error("base is defined for depth-3 cells only");
  auto ab = alpha_beta(sys, sys.vertex(cell.representative));
  BallId gamma = 0;
  for (auto id : cell.hit_set) {
    if (id != ab.alpha && id != ab.beta) gamma = id;
  }
  return {ab.alpha, ab.beta, gamma};
}

inline BallId assign_base(const BallSystem& sys, const Cell& cell) {
  auto enc = depth3_encoding(sys, cell);
  return assign_base(enc, path_bundle(sys, sys.vertex(cell.representative)), sys.voronoi);
}

struct ResidentEdge {
  BallId a = 0;
  BallId b = 0;
  std::size_t cell = 0;
};

/// G_D: one edge per depth-3 cell based at D, joining the cell's other two
/// balls, checked against D's support neighborhood.
struct ResidentGraph {
  BallId host = 0;
  std::vector<BallId> nodes;  // support neighbors of host
  std::vector<ResidentEdge> edges;
  std::vector<std::size_t> off_neighborhood;  // cells with an endpoint outside nodes
  bool simple = true;
  bool planar = true;

  std::size_t resident() const { return edges.size(); }
  bool within_bound() const { return edges.size() <= 3 * std::max<std::size_t>(1, nodes.size()); }
  bool ok() const { return simple && planar && off_neighborhood.empty() && within_bound(); }
};

// Base of every depth-3 cell, keyed by cell index.
inline std::map<std::size_t, BallId> depth3_bases(const BallSystem& sys) {
  std::map<std::size_t, BallId> out;
  for (std::size_t c = 0; c < sys.cells.size(); ++c) {
    if (sys.cells[c].depth() == 3) out[c] = assign_base(sys, sys.cells[c]);
  }
  return out;
}

inline ResidentGraph build_resident_graph(const BallSystem& sys, BallId d, const std::map<std::size_t, BallId>& bases) {
  ResidentGraph gd;
  gd.host = d;
  gd.nodes = sys.support.neighbors(d);
  std::set<std::pair<BallId, BallId>> seen;
  std::set<BallId> endpoints(gd.nodes.begin(), gd.nodes.end());
  for (const auto& [c, base] : bases) {
    if (base != d) continue;
    std::vector<BallId> ends;
    for (auto id : sys.cells[c].hit_set) {
      if (id != d) ends.push_back(id);
    }
    ResidentEdge e{ends[0], ends[1], c};
    gd.edges.push_back(e);
    if (!std::binary_search(gd.nodes.begin(), gd.nodes.end(), e.a) ||
        !std::binary_search(gd.nodes.begin(), gd.nodes.end(), e.b)) {
      gd.off_neighborhood.push_back(c);
    }
    if (!seen.insert({e.a, e.b}).second) gd.simple = false;
    endpoints.insert(e.a);
    endpoints.insert(e.b);
  }
  std::vector<Vertex> vertices;
  for (auto id : endpoints) vertices.push_back({id, Weight(0)});
  std::vector<EdgeSpec> es;
  for (const auto& e : gd.edges) es.push_back({e.a, e.b, 1});
  gd.planar = is_planar(Graph(false, std::move(vertices), es)).planar;
  return gd;
}

inline ResidentGraph build_resident_graph(const BallSystem& sys, BallId d) {
  return build_resident_graph(sys, d, depth3_bases(sys));
}

/// Cell counts per depth with the linear bounds for depths 1-3 and the
/// normalized constant count_k / (|R| k^2) for every depth present.
struct CellProfile {
  std::map<std::size_t, std::size_t> counts;
  std::size_t balls = 0;
  bool depth1_ok = true;
  bool depth2_ok = true;
  bool depth3_ok = true;
  std::map<std::size_t, double> constant;

  std::size_t count(std::size_t k) const {
    auto it = counts.find(k);
    return it == counts.end() ? 0 : it->second;
  }
};

inline CellProfile shallow_profile(const CellTable& cells, std::size_t ball_count) {
  CellProfile p;
  p.balls = ball_count;
  for (const auto& c : cells) ++p.counts[c.depth()];
  const auto r = static_cast<long long>(ball_count);
  p.depth1_ok = static_cast<long long>(p.count(1)) <= r;
  p.depth2_ok = static_cast<long long>(p.count(2)) <= std::max(1LL, 3 * r - 6);
  p.depth3_ok = static_cast<long long>(p.count(3)) <= 18 * r;
  for (const auto& [k, n] : p.counts) {
    p.constant[k] = static_cast<double>(n) / (static_cast<double>(ball_count) * static_cast<double>(k * k));
  }
  return p;
}

inline CellProfile shallow_profile(const BallSystem& sys) { return shallow_profile(sys.cells, sys.aug.balls.size()); }

// ---------------------------------------------------------------------------
// Shortest-path structure checks. Each returns the number of violations.

/// For v of depth >= 2 and every original v' on pi(x_alpha, v) or
/// pi(x_beta, v) with the same (alpha, beta): hit(v') is a subset of hit(v).
inline std::size_t check_ancestor_subsets(const BallSystem& sys) {
  std::size_t violations = 0;
  const auto n = sys.aug.original_count;
  std::vector<std::optional<AlphaBeta>> ab(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (sys.hit(v).size() >= 2) ab[v] = alpha_beta(sys, v);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!ab[v]) continue;
    auto bundle = path_bundle(sys, v);
    for (const auto* path : {&bundle.alpha_path, &bundle.beta_path}) {
      for (auto u : *path) {
        if (u >= n || !ab[u] || ab[u]->alpha != ab[v]->alpha || ab[u]->beta != ab[v]->beta) continue;
        const auto& hu = sys.hit(u);
        const auto& hv = sys.hit(v);
        if (!std::includes(hv.begin(), hv.end(), hu.begin(), hu.end())) ++violations;
      }
    }
  }
  return violations;
}

/// Along pi(x_D, v), once another ball D' is at least as close as D (in the
/// (distance, id) order) it stays so until v. Checked for every ball D,
/// every original v reached from x_D, and every D' != D.
inline std::size_t check_overtaking(const BallSystem& sys) {
  std::size_t violations = 0;
  const auto& g = sys.aug.g;
  for (std::size_t d = 0; d < sys.aug.balls.size(); ++d) {
    const auto& tree = sys.trees[d];
    const auto d_id = sys.aug.balls[d].id;
    for (std::size_t v = 0; v < sys.aug.original_count; ++v) {
      if (!tree.reached(v)) continue;
      auto path = tree.path_to(g, v);
      for (std::size_t o = 0; o < sys.aug.balls.size(); ++o) {
        if (o == d) continue;
        const auto& other = sys.trees[o];
        const auto o_id = sys.aug.balls[o].id;
        bool dominated = false;
        for (auto u : path) {
          bool now = std::tie(other.dist[u], o_id) <= std::tie(tree.dist[u], d_id);
          if (dominated && !now) {
            ++violations;
            break;
          }
          dominated = dominated || now;
        }
      }
    }
  }
  return violations;
}

/// For every v and D in hit(v), each vertex of pi(x_D, v) lies in the
/// Voronoi cell of some ball of hit(v).
inline std::size_t check_paths_stay_in_hit_cells(const BallSystem& sys) {
  std::size_t violations = 0;
  for (std::size_t v = 0; v < sys.aug.original_count; ++v) {
    const auto& hit = sys.hit(v);
    for (auto d : hit) {
      for (auto u : sys.trees[sys.ball_index(d)].path_to(sys.aug.g, v)) {
        if (!sys.voronoi.reached(u) || !std::binary_search(hit.begin(), hit.end(), sys.voronoi.owner[u])) {
          ++violations;
          break;
        }
      }
    }
  }
  return violations;
}

// ---------------------------------------------------------------------------

struct CellsReport {
  CellProfile profile;
  std::map<std::size_t, bool> encoding_unique;
  std::vector<ResidentGraph> residents;
};

inline CellsReport cells_report(const BallSystem& sys) {
  if (!sys.embedding) throw Error("cell encodings need a planar host graph");
  CellsReport r;
  r.profile = shallow_profile(sys);
  for (const auto& [k, n] : r.profile.counts) {
    if (k >= 3) r.encoding_unique[k] = verify_unique_encoding(sys, *sys.embedding, k).pass;
  }
  auto bases = depth3_bases(sys);
  for (const auto& b : sys.aug.balls) r.residents.push_back(build_resident_graph(sys, b.id, bases));
  return r;
}

inline Json cells_report_to_json(const CellsReport& r) {
  Json doc;
  Json profile = Json::object();
  for (const auto& [k, n] : r.profile.counts) profile[std::to_string(k)] = n;
  doc["profile"] = std::move(profile);
  doc["bounds"] = Json{{"depth1", r.profile.depth1_ok}, {"depth2", r.profile.depth2_ok}, {"depth3", r.profile.depth3_ok}};
  Json unique = Json::object();
  for (const auto& [k, ok] : r.encoding_unique) unique[std::to_string(k)] = ok;
  doc["encodingUnique"] = std::move(unique);
  Json residents = Json::array();
  for (const auto& gd : r.residents) {
    residents.push_back(Json{{"ball", gd.host}, {"resident", gd.resident()}, {"neighbors", gd.nodes.size()}, {"planar", gd.planar}});
  }
  doc["residentChecks"] = std::move(residents);
  return doc;
}

}  // namespace rdom
