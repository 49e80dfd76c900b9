#pragma once

#include <map>
#include <optional>
#include <vector>

#include "rdom/graph.hpp"

namespace rdom {

using CellId = std::int64_t;

/// Assignment of graph vertices (by index) to cells. Unassigned vertices are
/// dropped by contraction.
struct Partition {
  std::vector<std::optional<CellId>> cell_of;

  std::map<CellId, std::vector<std::size_t>> members() const {
    std::map<CellId, std::vector<std::size_t>> out;
    for (std::size_t v = 0; v < cell_of.size(); ++v) {
      if (cell_of[v]) out[*cell_of[v]].push_back(v);
    }
    return out;
  }
};

class DisconnectedCellError : public Error {
 public:
  explicit DisconnectedCellError(CellId cell)
      : Error("cell " + std::to_string(cell) + " does not induce a connected subgraph"), cell_(cell) {}
  CellId cell() const { return cell_; }

 private:
  CellId cell_;
};

inline void require_connected_cells(const Graph& g, const Partition& p) {
  if (p.cell_of.size() != g.vertex_count()) throw GraphError("partition size does not match graph");
  for (const auto& [cell, members] : p.members()) {
    if (!induced_connected_indices(g, members)) throw DisconnectedCellError(cell);
  }
}

/// Contracts every cell to one vertex (id = cell id, weight = member weight
/// sum). The result is a simple undirected graph; merged arcs keep the
/// minimum length.
inline Graph contract_cells(const Graph& g, const Partition& p) {
  require_connected_cells(g, p);
  auto cells = p.members();
  std::vector<Vertex> vertices;
  std::map<CellId, std::size_t> index;
  for (const auto& [cell, members] : cells) {
    Weight total = 0;
    for (auto v : members) total += g.weight(v);
    index[cell] = vertices.size();
    vertices.push_back({cell, total});
  }
  std::map<std::pair<std::size_t, std::size_t>, Length> shortest;
  for (const auto& a : g.arcs()) {
    const auto& ct = p.cell_of[a.tail];
    const auto& ch = p.cell_of[a.head];
    if (!ct || !ch || *ct == *ch) continue;
    auto u = index[*ct];
    auto v = index[*ch];
    auto key = std::minmax(u, v);
    auto it = shortest.find(key);
    if (it == shortest.end() || a.length < it->second) shortest[key] = a.length;
  }
  std::vector<Arc> arcs;
  for (const auto& [key, len] : shortest) {
    arcs.push_back({key.first, key.second, len});
    arcs.push_back({key.second, key.first, len});
  }
  return Graph::from_arcs(false, std::move(vertices), std::move(arcs));
}

}  // namespace rdom
