#pragma once

#include <map>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>
#include <boost/property_map/property_map.hpp>

#include "rdom/graph.hpp"

namespace rdom {

/// Rotation system of the simple underlying graph: for each vertex index,
/// its neighbors in clockwise order.
struct Embedding {
  std::vector<std::vector<std::size_t>> rotation;
};

struct PlanarityResult {
  bool planar = false;
  std::optional<Embedding> embedding;
  // Edges of a Kuratowski subdivision (K5 or K3,3) when not planar.
  std::vector<std::pair<VertexId, VertexId>> kuratowski;
};

/// Checks that `emb` is a rotation system of `nbrs` and that it has genus 0:
/// every connected component with edges satisfies V - E + F = 2.
inline bool is_genus_zero(const std::vector<std::vector<std::size_t>>& nbrs, const Embedding& emb) {
  const std::size_t n = nbrs.size();
  if (emb.rotation.size() != n) return false;
  std::vector<std::map<std::size_t, std::size_t>> pos(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto sorted = emb.rotation[v];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != nbrs[v]) return false;
    for (std::size_t i = 0; i < emb.rotation[v].size(); ++i) pos[v][emb.rotation[v][i]] = i;
  }
  std::vector<std::size_t> component(n, n);
  std::vector<std::size_t> comp_vertices, comp_darts, comp_faces;
  for (std::size_t s = 0; s < n; ++s) {
    if (component[s] != n) continue;
    std::size_t c = comp_vertices.size();
    comp_vertices.push_back(0);
    comp_darts.push_back(0);
    comp_faces.push_back(0);
    std::vector<std::size_t> stack{s};
    component[s] = c;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      ++comp_vertices[c];
      comp_darts[c] += nbrs[v].size();
      for (auto w : nbrs[v]) {
        if (component[w] == n) {
          component[w] = c;
          stack.push_back(w);
        }
      }
    }
  }
  std::vector<std::map<std::size_t, char>> used(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v : emb.rotation[u]) {
      if (used[u][v]) continue;
      ++comp_faces[component[u]];
      std::size_t a = u, b = v;
      while (!used[a][b]) {
        used[a][b] = 1;
        const auto& rot = emb.rotation[b];
        std::size_t next = rot[(pos[b][a] + 1) % rot.size()];
        a = b;
        b = next;
      }
    }
  }
  for (std::size_t c = 0; c < comp_vertices.size(); ++c) {
    if (comp_darts[c] == 0) continue;
    auto euler = static_cast<long long>(comp_vertices[c]) - static_cast<long long>(comp_darts[c] / 2) +
                 static_cast<long long>(comp_faces[c]);
    if (euler != 2) return false;
  }
  return true;
}

/// Planarity of the simple undirected underlying graph, with an embedding
/// on success and a Kuratowski subdivision on failure.
inline PlanarityResult is_planar(const Graph& g) {
  using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                           boost::property<boost::vertex_index_t, int>,
                                           boost::property<boost::edge_index_t, int>>;
  using EdgeDesc = boost::graph_traits<BoostGraph>::edge_descriptor;

  auto nbrs = undirected_neighbors(g);
  const std::size_t n = g.vertex_count();
  BoostGraph bg(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v : nbrs[u]) {
      if (u < v) boost::add_edge(u, v, bg);
    }
  }
  auto edge_index = boost::get(boost::edge_index, bg);
  int count = 0;
  boost::graph_traits<BoostGraph>::edge_iterator ei, ei_end;
  for (boost::tie(ei, ei_end) = boost::edges(bg); ei != ei_end; ++ei) boost::put(edge_index, *ei, count++);

  std::vector<std::vector<EdgeDesc>> embedding_storage(n);
  std::vector<EdgeDesc> kuratowski_edges;
  bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(embedding_storage.begin(), boost::get(boost::vertex_index, bg)),
      boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski_edges));

  PlanarityResult result;
  result.planar = planar;
  if (planar) {
    Embedding emb;
    emb.rotation.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      for (const auto& e : embedding_storage[v]) {
        auto s = boost::source(e, bg);
        auto t = boost::target(e, bg);
        emb.rotation[v].push_back(s == v ? t : s);
      }
    }
    result.embedding = std::move(emb);
  } else {
    for (const auto& e : kuratowski_edges) {
      result.kuratowski.emplace_back(g.id_of(boost::source(e, bg)), g.id_of(boost::target(e, bg)));
    }
  }
  return result;
}

}  // namespace rdom
